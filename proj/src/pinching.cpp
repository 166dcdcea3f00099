#include "brush/pinching.hpp"

#include <algorithm>
#include <stdexcept>

namespace brush::model {

using dynamics::CosineParams;

namespace {

constexpr double kBoundaryGuard = 1e-6;

// U-domain entry of the ray of `s`, sampled at a potential above t_s and
// resampled at t+1 whenever the traced point sits too close to a boundary.
ItineraryEntry ray_udomain_entry(const ExternalAddress& s, const CosineParams& f) {
    const double ts = potential_boundary_value(s);
    double t = ts + 1.0;
    for (int attempt = 0; attempt < 8; ++attempt, t += 1.0) {
        const auto p = dynamics::trace_ray(f, s, t);
        if (dynamics::u_domain_margin(p.z) <= kBoundaryGuard) continue;
        const auto d = dynamics::u_domain_of(p.z);
        return ItineraryEntry{d.n, d.k};
    }
    throw std::runtime_error("itinerary sample stayed within guard distance of a U-boundary");
}

}  // namespace

std::optional<Itinerary> itinerary_of_address(const ExternalAddress& s,
                                              const CosineParams& f, int depth) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (s.tail_is_zero_constant()) return std::nullopt;

    // sigma^i(s) cycles after the preperiod, so pre+period entries determine
    // the full itinerary.
    const size_t pre = s.preperiod().size();
    const size_t q = s.period().size();
    std::vector<ItineraryEntry> pre_entries, per_entries;
    ExternalAddress cur = s;
    for (size_t i = 0; i < pre + q; ++i) {
        ItineraryEntry e = ray_udomain_entry(cur, f);
        (i < pre ? pre_entries : per_entries).push_back(e);
        cur = cur.shifted();
    }
    return Itinerary(std::move(pre_entries), std::move(per_entries));
}

std::vector<ExternalAddress> quadruple_left(const std::vector<Symbol>& prefix,
                                            int64_t m, int64_t n) {
    if (n < 0) throw std::invalid_argument("quadruple parameter n must be >= 0");
    auto make = [&](Symbol x, Symbol y, Symbol c, Symbol tail) {
        std::vector<Symbol> p = prefix;
        p.push_back(x);
        p.push_back(y);
        p.push_back(c);
        return ExternalAddress(std::move(p), {tail});
    };
    return {
        make(sym_R(2 * m), sym_R(2 * n + 1), sym_L(1), sym_R(0)),
        make(sym_R(2 * m), sym_R(2 * n), sym_R(1), sym_L(0)),
        make(sym_R(2 * m + 1), sym_L(2 * n + 1), sym_R(1), sym_L(0)),
        make(sym_R(2 * m + 1), sym_L(2 * n), sym_L(1), sym_R(0)),
    };
}

std::vector<ExternalAddress> quadruple_right(const std::vector<Symbol>& prefix,
                                             int64_t m, int64_t n) {
    if (n < 0) throw std::invalid_argument("quadruple parameter n must be >= 0");
    auto make = [&](Symbol x, Symbol y, Symbol c, Symbol tail) {
        std::vector<Symbol> p = prefix;
        p.push_back(x);
        p.push_back(y);
        p.push_back(c);
        return ExternalAddress(std::move(p), {tail});
    };
    return {
        make(sym_L(2 * m + 1), sym_R(2 * n + 1), sym_L(1), sym_R(0)),
        make(sym_L(2 * m + 1), sym_R(2 * n), sym_R(1), sym_L(0)),
        make(sym_L(2 * m), sym_L(2 * n + 1), sym_R(1), sym_L(0)),
        make(sym_L(2 * m), sym_L(2 * n), sym_L(1), sym_R(0)),
    };
}

namespace {

// Locate the quadruple instance containing a zero-tail address, if listed.
std::optional<std::vector<ExternalAddress>> quadruple_instance_of(const ExternalAddress& s) {
    if (!s.tail_is_zero_constant()) return std::nullopt;
    const auto& pre = s.preperiod();
    if (pre.size() < 3) return std::nullopt;
    const Symbol x = pre[pre.size() - 3];
    const Symbol y = pre[pre.size() - 2];
    const Symbol c = pre[pre.size() - 1];
    if (c.abs_index() != 1 || c.index != 1) return std::nullopt;
    if (y.index < 0) return std::nullopt;  // n >= 0
    const std::vector<Symbol> prefix(pre.begin(), pre.end() - 3);

    const int64_t m =
        x.index >= 0 ? x.index / 2 : -((-x.index + 1) / 2);  // floor(x/2)
    const int64_t n = y.index / 2;
    auto candidates = x.side == Symbol::Side::R ? quadruple_left(prefix, m, n)
                                                : quadruple_right(prefix, m, n);
    if (std::find(candidates.begin(), candidates.end(), s) != candidates.end())
        return candidates;
    return std::nullopt;
}

// The eqn-itin shape: common prefix, one entry with equal n and complementary
// k, then constantly-zero (or constantly minus-one) n entries with
// complementary k entries.
bool itineraries_pinched(const Itinerary& a, const Itinerary& b) {
    const size_t bound = a.preperiod().size() + b.preperiod().size() +
                         a.period().size() * b.period().size() + 4;
    const size_t tail_check = a.period().size() * b.period().size();

    size_t d = 0;
    while (d < bound && a.entry(d) == b.entry(d)) ++d;
    if (d == bound) return false;  // equal itineraries (not the pinch shape)

    const auto ea = a.entry(d), eb = b.entry(d);
    if (ea.n != eb.n || eb.k != 1 - ea.k) return false;

    for (size_t i = d + 1; i < bound + tail_check; ++i) {
        const auto xa = a.entry(i), xb = b.entry(i);
        if (xa.n != xb.n) return false;
        if (!(xa.n == 0 || xa.n == -1)) return false;
        if (i > d + 1 && xa.n != a.entry(i - 1).n) return false;  // constant tail
        if (xb.k != 1 - xa.k) return false;
    }
    return true;
}

}  // namespace

Pinched pinched(const ExternalAddress& s1, const ExternalAddress& s2,
                const CosineParams& f, int depth) {
    if (s1 == s2) throw std::invalid_argument("pinched requires distinct addresses");

    const bool z1 = s1.tail_is_zero_constant();
    const bool z2 = s2.tail_is_zero_constant();

    if (!z1 && !z2) {
        auto i1 = itinerary_of_address(s1, f, depth);
        auto i2 = itinerary_of_address(s2, f, depth);
        return itineraries_pinched(*i1, *i2) ? Pinched::Yes : Pinched::No;
    }
    if (z1 && z2) {
        auto q1 = quadruple_instance_of(s1);
        if (q1 && std::find(q1->begin(), q1->end(), s2) != q1->end()) return Pinched::Yes;
        // The listed families are not exhaustive for zero-tail addresses
        // (rays from distinct displayed instances can still land together),
        // so anything beyond same-instance membership stays undecided.
        return Pinched::Unknown;
    }
    // One address has an itinerary, the other none; the listed families do
    // not decide mixed pairs.
    return Pinched::Unknown;
}

}  // namespace brush::model
