#include "brush/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "json.hpp"

namespace brush::conjugacy {

using std::numbers::pi;

namespace {

// Deep g-orbit anchors leave double range; pull them back to this modulus
// along their ray. Expansion washes the replacement out of the offset-0
// iterates.
constexpr double kAnchorCap = 650.0;

// Preimage candidates of w near a previous point; cancellation- and
// overflow-safe version of the quadratic in e^z.
struct Candidates {
    complex nearest{0, 0};
    double dist_nearest = std::numeric_limits<double>::infinity();
    double dist_second = std::numeric_limits<double>::infinity();
};

Candidates preimage_candidates(const CosineParams& f, complex w, complex prev) {
    complex roots[2];
    const double aw = std::abs(w);
    if (aw > 1e100) {
        roots[0] = w / f.a;
        roots[1] = f.b / w;
    } else {
        const complex disc = w * w - 4.0 * f.a * f.b;
        complex d = std::sqrt(disc);
        if (std::real(std::conj(w) * d) < 0) d = -d;
        const complex u1 = (w + d) / (2.0 * f.a);
        roots[0] = u1;
        roots[1] = std::abs(u1) > 0 ? f.b / (f.a * u1) : complex(0, 0);
    }

    Candidates out;
    for (const complex u : roots) {
        if (!(std::abs(u) > 0) || !std::isfinite(std::abs(u))) continue;
        const double re = std::log(std::abs(u));
        const double arg = std::arg(u);
        const double k0 = std::round((prev.imag() - arg) / (2 * pi));
        for (double k : {k0 - 1, k0, k0 + 1}) {
            const complex z(re, arg + 2 * pi * k);
            const double dist = std::abs(z - prev);
            if (dist < out.dist_nearest) {
                out.dist_second = out.dist_nearest;
                out.dist_nearest = dist;
                out.nearest = z;
            } else if (dist < out.dist_second) {
                out.dist_second = dist;
            }
        }
    }
    return out;
}

using Polyline = std::vector<complex>;

struct Puller {
    const CosineParams& f;
    Polyline out;
    complex prev;

    void pull_segment(complex va, complex vb, int depth) {
        const Candidates c = preimage_candidates(f, vb, prev);
        if (!std::isfinite(c.dist_nearest))
            throw std::runtime_error("phi pullback: no preimage candidates");
        // Branch-tracking rule: the continuation step must stay well below
        // the distance to the competing preimage.
        if (c.dist_nearest <= 0.25 * c.dist_second) {
            out.push_back(c.nearest);
            prev = c.nearest;
            return;
        }
        if (depth >= 12) {
            std::ostringstream msg;
            msg << "phi pullback: branch ambiguity after 12 refinements"
                << " [prev=(" << prev.real() << ',' << prev.imag() << ") target=("
                << vb.real() << ',' << vb.imag() << ") d1=" << c.dist_nearest
                << " d2=" << c.dist_second << ']';
            throw std::runtime_error(msg.str());
        }
        const complex mid = 0.5 * (va + vb);
        pull_segment(va, mid, depth + 1);
        pull_segment(mid, vb, depth + 1);
    }
};

Polyline pullback_curve(const CosineParams& f, const Polyline& source, complex start) {
    Puller p{f, {}, start};
    p.out.push_back(start);
    for (size_t i = 0; i + 1 < source.size(); ++i)
        p.pull_segment(source[i], source[i + 1], 0);
    return p.out;
}

// Thin the interior while keeping consecutive steps below a fixed length;
// pullbacks contract, so this resolution suffices for branch tracking.
void prune(Polyline& c, double max_step = 0.5) {
    if (c.size() <= 2) return;
    Polyline out;
    out.push_back(c.front());
    for (size_t i = 1; i + 1 < c.size(); ++i) {
        if (std::abs(c[i] - out.back()) >= max_step) out.push_back(c[i]);
    }
    out.push_back(c.back());
    c = std::move(out);
}

}  // namespace

ConjugacyConfig build_config(const CosineParams& f, double K) {
    ConjugacyConfig cfg;
    cfg.f = f;
    cfg.K = K;

    // P(f) for the pi*sinh instance is {0, +-pi i}; K/2 must clear it.
    const auto [v1, v2] = singular_values(f);
    if (!(K / 2 > std::max(std::abs(v1), std::abs(v2))))
        throw std::invalid_argument("K/2 must exceed the singular values");

    // L = smallest integer above max_{|z|=K+1}|f| (the grid hits the real
    // axis where the maximum of the sinh family lives).
    const double mx = dynamics::boundary_max_modulus(f, {0, 0}, K + 1, 4096);
    cfg.L = std::ceil(mx);
    cfg.mu = K / cfg.L;
    cfg.G = CosineParams::disjoint_sinh(pi * cfg.mu);

    // Disjoint-type certificate for g on a disk containing S(g) = S(f).
    cfg.g_certificate = [&] {
        const double r = K / 2;
        dynamics::DisjointTypeCertificate cert;
        cert.radius = r;
        cert.singular_values_inside = std::abs(v1) < r && std::abs(v2) < r;
        double max_mod = 0, max_deriv = 0;
        for (int k = 0; k < 4096; ++k) {
            const double th = 2 * pi * k / 4096;
            const complex z = cfg.mu * std::polar(r, th);
            max_mod = std::max(max_mod, std::abs(evaluate(f, z)));
            max_deriv = std::max(max_deriv, cfg.mu * std::abs(derivative(f, z)));
        }
        cert.padding = r * max_deriv * (2 * pi * r / 4096);
        cert.max_modulus = max_mod + cert.padding;
        cert.margin = r - cert.max_modulus;
        cert.ok = cert.singular_values_inside && cert.max_modulus < r;
        return cert;
    }();
    if (!cfg.g_certificate.ok)
        throw std::runtime_error("config error: g = f(mu z) failed the disjoint-type certificate");

    cfg.E_est = orbifold::expansion_certificate(f, K).E_est;
    return cfg;
}

std::vector<EscapingSample> make_samples(const ConjugacyConfig& cfg, int count,
                                         uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> plen(1, 3);
    std::uniform_real_distribution<double> dt(2.0, 5.0);

    std::vector<EscapingSample> out;
    while (static_cast<int>(out.size()) < count) {
        ExternalAddress addr = dynamics::random_realizable_address(rng(), 0, plen(rng), 2);
        const double ts = model::potential_boundary_value(addr);
        double t = ts + dt(rng);
        try {
            for (int attempt = 0; attempt < 4; ++attempt, t += 1.0) {
                const auto p = dynamics::trace_ray(cfg.G, addr, t);
                if (std::abs(p.z) <= cfg.K + 0.5) continue;  // too close to D_K
                // First orbit step must clear the escape thresholds; later
                // steps only grow (the margin amplifies exponentially).
                const complex W1 = evaluate(cfg.f, p.z);
                const complex A1 = cfg.mu * W1;
                if (!(std::abs(W1) > 1.02 * cfg.L) || !(std::abs(A1) > cfg.K + 0.5))
                    continue;
                EscapingSample s;
                s.address = addr;
                s.t = t;
                s.u0 = p.z;
                s.z = p.z / cfg.mu;
                out.push_back(s);
                break;
            }
        } catch (const dynamics::RayError&) {
            continue;  // resample
        }
    }
    return out;
}

PhiIterates phi_iterates(const ConjugacyConfig& cfg, const EscapingSample& s, int jmax) {
    if (jmax < 1) throw std::invalid_argument("jmax must be >= 1");
    const int offsets = jmax + 1;

    // Level-1 anchors A_m (phi_1 at the m-th orbit point, capped) and curves
    // [W_m -> A_m] with W_m = f(A_{m-1}) exactly; this keeps every pullback
    // start consistent with its source curve.
    // Curves are indexed by orbit offset: cur[m] = gamma_i(g^m z) at the
    // current level i; its endpoint is phi_i(g^m z). Level-1 curves are the
    // segments [W_m, A_m] with W_m = f(A_{m-1}) exactly and A_m = mu*W_m,
    // capped in modulus; the exact W relation keeps every pullback start
    // consistent with its source curve.
    std::vector<complex> anchors(offsets);
    std::vector<Polyline> level(offsets);
    anchors[0] = s.u0;
    if (!(std::abs(s.u0) > cfg.K))
        throw std::domain_error("sample orbit enters |w| <= K");
    for (int m = 1; m < offsets; ++m) {
        const complex prev = anchors[m - 1];
        if (std::abs(prev.real()) > 700.0)
            throw std::runtime_error("anchor cap failed to keep the orbit representable");
        const complex W = evaluate(cfg.f, prev);
        complex A = cfg.mu * W;
        // Interior anchors feed back into f and must keep Re <= ~700; the
        // last anchor is only ever a pullback target, so it can carry its
        // full representable modulus (one extra level of within-ray
        // sensitivity before the cap collapses it). Capped anchors are
        // placed on the midline of the address strip: directions inferred
        // from capped predecessors are meaningless, while the strip is
        // exact, and for realizable addresses the chord from W stays in
        // the escaping half-plane.
        const double cap = (m == offsets - 1) ? 1e100 : kAnchorCap;
        if (std::abs(A) > cap)
            A = dynamics::strip_midline_point(
                dynamics::StripIndex{s.address.entry(m)}, cap);
        if (!(std::abs(A) > cfg.K) || !(std::abs(W) > cfg.L))
            throw std::domain_error("sample orbit enters |w| <= K (escape margin too small)");
        anchors[m] = A;
        // The segment [W, A] runs along a ray through the origin across an
        // exponential modulus range; geometric vertex spacing keeps the
        // preimage steps uniform.
        const double span = std::log(std::abs(W) / std::abs(A));
        const int n = std::max(2, static_cast<int>(std::ceil(span / 0.4)));
        Polyline seg;
        seg.reserve(n + 1);
        const complex ratio = A / W;
        for (int k = 0; k <= n; ++k)
            seg.push_back(W * std::pow(ratio, double(k) / n));
        seg.back() = A;
        level[m] = std::move(seg);
    }

    PhiIterates out;
    out.phi.assign(jmax + 1, complex(0, 0));
    out.d.assign(jmax, 0.0);
    out.commutation.assign(jmax, 0.0);
    out.phi[0] = anchors[0];  // phi_1(z) = mu z

    // endpoint_prev[m] = phi_i(g^m z) for the current level i.
    std::vector<complex> endpoint_prev = anchors;

    std::vector<Polyline> cur = std::move(level);
    for (int i = 2; i <= jmax + 1; ++i) {
        const int n_off = offsets - (i - 1);
        std::vector<Polyline> next(n_off);
        std::vector<complex> endpoint_next(n_off);
        for (int m = 0; m < n_off; ++m) {
            next[m] = pullback_curve(cfg.f, cur[m + 1], endpoint_prev[m]);
            endpoint_next[m] = next[m].back();
            prune(next[m]);
        }
        const complex phi_i = endpoint_next[0];
        out.phi[i - 1] = phi_i;
        out.d[i - 2] = std::abs(phi_i - out.phi[i - 2]);
        // f(phi_i(z)) vs phi_{i-1}(g z).
        const complex target = endpoint_prev.size() > 1 ? endpoint_prev[1] : complex(0, 0);
        if (endpoint_prev.size() > 1)
            out.commutation[i - 2] = std::abs(evaluate(cfg.f, phi_i) - target);
        cur = std::move(next);
        endpoint_prev = std::move(endpoint_next);
    }
    return out;
}

PhiResult phi_iterate(const ConjugacyConfig& cfg, const EscapingSample& s, int j,
                      double tol) {
    if (j < 1) throw std::invalid_argument("j must be >= 1");
    (void)tol;
    if (j == 1) return {cfg.mu * s.z, 0.0, 0.0};
    const auto it = phi_iterates(cfg, s, j - 1);
    PhiResult r;
    r.value = it.phi[j - 1];
    r.d_prev = it.d[j - 2];
    r.commutation_residual = it.commutation[j - 2];
    return r;
}

ConvergenceReport convergence_report(const ConjugacyConfig& cfg,
                                     const std::vector<EscapingSample>& samples,
                                     int jmax) {
    ConvergenceReport rep;
    rep.K = cfg.K;
    rep.L = cfg.L;
    rep.mu = cfg.mu;
    rep.alpha = (1.0 / cfg.K) * std::log(std::abs(std::log(cfg.mu)) / std::numbers::ln2 + 1.0);
    rep.budget = rep.alpha * cfg.E_est / (cfg.E_est - 1.0);

    for (const auto& s : samples) {
        const auto it = phi_iterates(cfg, s, jmax);
        SampleReport sr;
        sr.z = s.z;
        sr.d = it.d;
        sr.commutation_residual = *std::max_element(it.commutation.begin(), it.commutation.end());
        rep.max_commutation = std::max(rep.max_commutation, sr.commutation_residual);

        // Geometric fit over j >= 2: least squares of log d_j against j.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (size_t j = 1; j < it.d.size(); ++j) {
            if (!(it.d[j] > 0)) continue;
            const double x = double(j), y = std::log(it.d[j]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++n;
        }
        sr.fitted_ratio = n >= 2 ? std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx)) : 0.0;
        for (size_t j = 2; j < it.d.size(); ++j)
            if (it.d[j] > it.d[j - 1] && it.d[j] > 1e-13) sr.monotone_tail = false;

        double sum = 0;
        for (double dj : it.d) sum += dj;
        rep.sup_sum_d = std::max(rep.sup_sum_d, sum);
        rep.fitted_ratio = std::max(rep.fitted_ratio, sr.fitted_ratio);
        rep.samples.push_back(std::move(sr));
    }
    return rep;
}

ProbeResult injectivity_probe(const ConjugacyConfig& cfg,
                              const std::vector<std::pair<EscapingSample, EscapingSample>>& pairs,
                              int j, double separation) {
    ProbeResult res;
    res.min_separation = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : pairs) {
        if (a.address == b.address && a.t == b.t)
            throw std::invalid_argument("injectivity probe requires distinct samples");
        const auto pa = phi_iterate(cfg, a, j);
        const auto pb = phi_iterate(cfg, b, j);
        const double sep = std::abs(pa.value - pb.value);
        res.min_separation = std::min(res.min_separation, sep);
        if (!(sep > separation)) res.all_separated = false;
    }
    return res;
}

std::string convergence_report_json(const ConvergenceReport& rep) {
    nlohmann::json j;
    j["K"] = rep.K;
    j["L"] = rep.L;
    j["mu"] = rep.mu;
    j["alpha"] = rep.alpha;
    j["budget"] = rep.budget;
    j["fitted_ratio"] = rep.fitted_ratio;
    j["max_commutation"] = rep.max_commutation;
    j["sup_sum_d"] = rep.sup_sum_d;
    auto& arr = j["samples"] = nlohmann::json::array();
    for (const auto& s : rep.samples) {
        nlohmann::json js;
        js["z"] = {s.z.real(), s.z.imag()};
        js["d"] = s.d;
        js["commutation_residual"] = s.commutation_residual;
        js["fitted_ratio"] = s.fitted_ratio;
        arr.push_back(std::move(js));
    }
    return j.dump(2);
}

}  // namespace brush::conjugacy
