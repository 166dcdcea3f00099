#include "brush/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace brush::model {

using std::numbers::pi;

std::complex<double> complexify(const ModelPoint& p) {
    return {p.t, 2.0 * pi * static_cast<double>(p.address.entry(0).index)};
}

ModelStep apply_model_map(const ModelPoint& p) {
    if (p.t < 0) throw std::invalid_argument("model point requires t >= 0");
    const double penalty = pi * static_cast<double>(p.address.entry(1).abs_index());
    // Saturate instead of overflowing: beyond the escape threshold the
    // exact value no longer affects any verdict.
    const double grown = p.t > 700.0 ? 1e300 : growth_F(p.t);
    const double next_t = grown - penalty;
    ModelStep step;
    step.new_potential = next_t;
    if (next_t >= 0) step.next = ModelPoint{p.address.shifted(), next_t};
    return step;
}

PotentialBoundaryResult potential_boundary(const ExternalAddress& s, double tol) {
    if (tol <= 0) throw std::invalid_argument("tol must be positive");
    PotentialBoundaryResult res;

    // Backward pass over one period of the tail, seeded at the tail start.
    const auto& w = s.period();
    const size_t q = w.size();
    const size_t pre = s.preperiod().size();
    auto backward = [&](double t, size_t pos_of_next) {
        // t at position pos_of_next pulled back one step: penalty uses the
        // symbol at pos_of_next itself (s_{i+1} in t_i = F^{-1}(t_{i+1} + pi|s_{i+1}|)).
        return growth_F_inv(t + pi * static_cast<double>(s.entry(pos_of_next).abs_index()));
    };

    double t = 0.0;
    const int max_blocks = 20000;
    for (int it = 0; it < max_blocks; ++it) {
        double prev = t;
        // Pull back through one full period, ending at the tail start.
        for (size_t i = 0; i < q; ++i) {
            size_t pos = pre + q - i;  // position of the value being pulled from
            t = backward(t, pos);
        }
        res.last_delta = std::abs(t - prev);
        res.block_iterations = it + 1;
        if (!std::isfinite(t) || t > 1e8)
            throw std::runtime_error("potential_boundary: backward iterates exceed overflow guard");
        if (res.last_delta < tol) {
            res.converged = true;
            break;
        }
    }
    if (!res.converged) {
        res.t_s = t;
        return res;  // non-contraction reported with last iterate
    }

    // Unroll the preperiod.
    for (size_t i = 0; i < pre; ++i) {
        size_t pos = pre - i;  // pulls t at position pos back to pos-1
        t = backward(t, pos);
    }
    res.t_s = t;
    return res;
}

double potential_boundary_value(const ExternalAddress& s, double tol) {
    auto r = potential_boundary(s, tol);
    if (!r.converged)
        throw std::runtime_error("potential_boundary did not converge; last iterate " +
                                 std::to_string(r.t_s));
    return r.t_s;
}

MembershipResult brush_membership(const ModelPoint& p, int depth) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    MembershipResult res;
    ModelPoint cur = p;
    for (int i = 0; i < depth; ++i) {
        if (cur.t > kEscapeThreshold) {
            res.verdict = BrushVerdict::InX;
            res.steps = i;
            return res;
        }
        ModelStep step = apply_model_map(cur);
        if (step.rejected()) {
            res.verdict = BrushVerdict::NotInXbar;
            res.steps = i + 1;
            return res;
        }
        cur = *step.next;
    }
    res.verdict = BrushVerdict::InXbarOnly;
    res.steps = depth;
    res.undecided = true;
    return res;
}

Order address_compare(const ExternalAddress& a, const ExternalAddress& b) {
    auto c = a <=> b;
    if (c < 0) return Order::Less;
    if (c > 0) return Order::Greater;
    return Order::Equal;
}

std::string verdict_name(BrushVerdict v) {
    switch (v) {
        case BrushVerdict::InX: return "InX";
        case BrushVerdict::InXbarOnly: return "InXbarOnly";
        case BrushVerdict::NotInXbar: return "NotInXbar";
    }
    return "?";
}

std::string brush_samples_csv(const std::vector<BrushSample>& rows) {
    std::ostringstream out;
    out << "address,t,verdict\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", r.t);
        out << to_string(r.address) << ',' << buf << ',' << verdict_name(r.verdict) << '\n';
    }
    return out.str();
}

}  // namespace brush::model
