#include "brush/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace brush::dynamics {

using std::numbers::pi;

// ---- strips -----------------------------------------------------------------

StripIndex strip_of(complex z, double guard) {
    const double y = z.imag() / pi;
    const double n = std::round(y);
    const double to_edge = std::abs(std::abs(y - n) - 0.5) * pi;
    if (std::abs(z.real()) <= guard || to_edge <= guard) {
        const int64_t lo = static_cast<int64_t>(std::floor(y + 0.5)) - 1;
        throw StripBoundaryError("point on or near a strip boundary",
                                 StripIndex{model::sym_R(lo)},
                                 StripIndex{model::sym_R(lo + 1)});
    }
    const int64_t ni = static_cast<int64_t>(n);
    return StripIndex{z.real() < 0 ? model::sym_L(ni) : model::sym_R(ni)};
}

complex strip_midline_point(StripIndex s, double r) {
    const double re = s.symbol.side == Symbol::Side::R ? r : -r;
    return {re, pi * static_cast<double>(s.symbol.index)};
}

namespace {

// Roots of a*u^2 - w*u + b = 0 (u = e^z), cancellation-safe.
struct QuadRoots {
    complex big, small;  // |big| >= |small|
    complex disc_sqrt{0, 0};
    double disc_abs = 0.0;
};

QuadRoots exp_quadratic_roots(const CosineParams& f, complex w) {
    QuadRoots r;
    if (std::abs(w) > 1e100) {
        // Asymptotic roots; the 4ab correction is below double precision
        // and w*w would overflow.
        r.big = w / f.a;
        r.small = f.b / w;
        r.disc_sqrt = w;
        r.disc_abs = std::numeric_limits<double>::infinity();
        return r;
    }
    const complex disc = w * w - 4.0 * f.a * f.b;
    complex d = std::sqrt(disc);
    if (std::real(std::conj(w) * d) < 0) d = -d;
    r.disc_sqrt = d;
    r.disc_abs = std::abs(disc);
    const complex u1 = (w + d) / (2.0 * f.a);
    // The root product is b/a; recover the second root stably.
    const complex u2 = (std::abs(u1) > 0) ? f.b / (f.a * u1) : complex(0, 0);
    if (std::abs(u1) >= std::abs(u2)) {
        r.big = u1;
        r.small = u2;
    } else {
        r.big = u2;
        r.small = u1;
    }
    return r;
}

// log of a root of a e^{2z} - w e^z + b = 0, cancellation-free when the
// root sits near +-1 (z near 0 or i pi): the shifted quadratic for
// delta = u -+ 1 shares the discriminant and evaluates stably.
struct RootLog {
    double re;
    double arg;
};

RootLog stable_root_log(const CosineParams& f, complex w, complex u, complex d) {
    RootLog out{std::log(std::abs(u)), std::arg(u)};
    if (std::abs(out.re) > 1e-3 || !(std::abs(u) > 0)) return out;
    const double sign = u.real() >= 0 ? 1.0 : -1.0;  // near +1 or near -1
    // The shifted quadratic only refines roots that actually sit near +-1;
    // elsewhere on the unit circle the naive log is already stable.
    if (std::abs(u - complex(sign, 0.0)) > 0.1) return out;
    // Shifted quadratic a delta^2 + (2a sign - w) delta + (a + b - sign w) = 0
    // with the same discriminant; the small root comes out of Vieta through
    // the large one, avoiding the cancellation in (w - 2a sign) + d.
    const complex n1 = (w - 2.0 * f.a * sign) + d;
    const complex n2 = (w - 2.0 * f.a * sign) - d;
    const complex big_num = std::abs(n1) >= std::abs(n2) ? n1 : n2;
    if (!(std::abs(big_num) > 0)) return out;
    const complex delta = (f.a + f.b - sign * w) / (f.a * (big_num / (2.0 * f.a)));
    // u = sign + delta = sign*(1 + sign*delta).
    const complex sd = sign * delta;
    out.re = 0.5 * std::log1p(2.0 * sd.real() + std::norm(sd));
    out.arg = std::atan2(sd.imag(), 1.0 + sd.real()) + (sign < 0 ? pi : 0.0);
    return out;
}

}  // namespace

InverseBranchResult inverse_branch(const CosineParams& f, StripIndex s, complex w) {
    const QuadRoots roots = exp_quadratic_roots(f, w);
    const auto [v1, v2] = singular_values(f);
    const double wa = std::abs(w);
    const double crit_dist = std::min(std::abs(w - v1), std::abs(w - v2));
    const bool near_crit = crit_dist < 1e-8 * std::max(1.0, wa);

    if (crit_dist < 1e-11 * std::max(1.0, wa)) {
        // w sits at a critical value to machine precision; the preimage is a
        // critical point on the strip boundary. Preimages of +v and -v
        // interleave along the ladder z_c = (1/2) Log(b/a) + i pi k, so the
        // incoming value disambiguates the corner.
        const complex half_log = 0.5 * std::log(f.b / f.a);
        const double n0 = static_cast<double>(s.symbol.index);
        InverseBranchResult out;
        double best = std::numeric_limits<double>::infinity();
        const double k_center = std::round((n0 * pi - half_log.imag()) / pi);
        for (double k = k_center - 2; k <= k_center + 2; ++k) {
            const complex zc = half_log + complex(0, pi * k);
            if (zc.imag() < (n0 - 0.5) * pi - 1e-9 || zc.imag() > (n0 + 0.5) * pi + 1e-9)
                continue;
            const double err = std::abs(evaluate(f, zc) - w);
            if (err < best) {
                best = err;
                out.z = zc;
            }
        }
        if (!std::isfinite(best))
            throw BranchError("no critical point adjacent to the requested strip");
        out.residual = best / std::max(1.0, wa);
        out.near_critical = true;
        return out;
    }

    const double n = static_cast<double>(s.symbol.index);
    const double target_im = n * pi;
    const bool want_right = s.symbol.side == Symbol::Side::R;

    // Strict pass: preimage in the open strip. Boundary pass: landing-type
    // chains run along strip edges and corners (the pinching points), so a
    // tiny guard band around the closure is accepted when the open strip
    // holds no preimage.
    InverseBranchResult best;
    double best_score = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < 2 && !std::isfinite(best_score); ++pass) {
        const double re_guard = pass == 0 ? 0.0 : 1e-9;
        const double im_guard = pass == 0 ? 0.0 : 1e-9;
        for (const complex u : {roots.big, roots.small}) {
            if (!(std::abs(u) > 0) || !std::isfinite(std::abs(u))) continue;
            const RootLog rl = stable_root_log(f, w, u, roots.disc_sqrt);
            const double re = rl.re;
            if (want_right ? re <= -re_guard : re >= re_guard) continue;
            const double arg = rl.arg;
            const double k = std::round((target_im - arg) / (2 * pi));
            for (double kk : {k, k - 1, k + 1}) {
                const double im = arg + 2 * pi * kk;
                if (im <= (n - 0.5) * pi - im_guard || im >= (n + 0.5) * pi + im_guard)
                    continue;
                const double score = std::abs(im - target_im);
                if (score < best_score) {
                    best_score = score;
                    best.z = complex(re, im);
                }
            }
        }
    }
    if (!std::isfinite(best_score))
        throw BranchError("no preimage of w in the requested strip");

    best.near_critical = near_crit;
    const complex back = evaluate(f, best.z);
    best.residual = std::abs(back - w) / std::max(1.0, wa);
    return best;
}

std::vector<complex> log_branch_family(const CosineParams& f, complex w, int count) {
    const QuadRoots roots = exp_quadratic_roots(f, w);
    const complex u = roots.big;
    std::vector<complex> out;
    out.reserve(count);
    const complex base = std::log(u);
    for (int k = 0; k < count; ++k)
        out.emplace_back(base + complex(0, 2 * pi * k));
    return out;
}

double u_domain_margin(complex z) {
    const double y = z.imag() / (2 * pi);
    const double frac = y - std::floor(y);
    const double to_horizontal = std::min(frac, 1.0 - frac) * 2 * pi;
    return std::min(std::abs(z.real()), to_horizontal);
}

UDomain u_domain_of(complex z, double guard) {
    if (u_domain_margin(z) <= guard)
        throw StripBoundaryError("point on or near a U-domain boundary",
                                 StripIndex{model::sym_R(0)}, StripIndex{model::sym_R(0)});
    UDomain d;
    d.n = static_cast<int64_t>(std::floor(z.imag() / (2 * pi)));
    d.k = z.real() > 0 ? 1 : 0;
    return d;
}

// ---- escape classification ---------------------------------------------------

EscapeResult escape_classify(const CosineParams& f, complex z, double R, int maxiter) {
    const auto [v1, v2] = singular_values(f);
    if (!(R > std::max(std::abs(v1), std::abs(v2)) + 1))
        throw std::invalid_argument("escape radius must exceed max singular value + 1");

    double prev = std::abs(z);
    int increases = 0;
    complex cur = z;
    for (int n = 1; n <= maxiter; ++n) {
        if (std::abs(cur.real()) > 700.0) return {EscapeKind::Escaping, n};
        cur = evaluate(f, cur);
        const double m = std::abs(cur);
        if (!std::isfinite(m)) return {EscapeKind::Escaping, n};
        if (m > R && m > prev) {
            if (++increases >= 3) return {EscapeKind::Escaping, n};
        } else {
            increases = 0;
        }
        prev = m;
    }
    // Re-run cheaply to see whether the orbit ever exceeded R.
    cur = z;
    for (int n = 0; n < maxiter; ++n) {
        if (std::abs(cur) > R) return {EscapeKind::Undecided, 0};
        cur = evaluate(f, cur);
    }
    return {EscapeKind::Bounded, 0};
}

// ---- ray tracing --------------------------------------------------------------

namespace {

// Forward model potentials t_0, t_1, ... along the address until the depth
// cap or the first value whose F-image is not representable.
struct PotentialLadder {
    std::vector<double> t;
    bool overflowed = false;
};

PotentialLadder potential_ladder(const ExternalAddress& s, double t, int maxdepth) {
    PotentialLadder lad;
    lad.t.push_back(t);
    for (int i = 0; i < maxdepth; ++i) {
        if (lad.t.back() > 690.0) {
            lad.overflowed = true;
            break;
        }
        const double pen = pi * static_cast<double>(s.entry(i + 1).abs_index());
        const double next = model::growth_F(lad.t.back()) - pen;
        if (next < 0)
            throw RayError("model orbit left the brush (t below endpoint potential?)");
        lad.t.push_back(next);
    }
    return lad;
}

// Start point at the given depth. The plain start sits on the strip midline
// at real part t_d. Once t_{d+1} is no longer representable, the true ray
// point at depth d is itself the pullback of an astronomically remote point,
// which pins it to Re = t_d - log|a| on the midline up to O(exp(-t_d));
// this fused start is used at the ladder end.
complex ray_start(const CosineParams& f, const ExternalAddress& s, double t_d,
                  size_t depth, bool fused) {
    const double re = fused ? t_d - std::log(std::abs(f.a)) : t_d;
    return strip_midline_point(StripIndex{s.entry(depth)}, re);
}

complex pullback_from_depth(const CosineParams& f, const ExternalAddress& s,
                            complex z, int depth) {
    for (int k = depth - 1; k >= 0; --k)
        z = inverse_branch(f, StripIndex{s.entry(k)}, z).z;
    return z;
}

}  // namespace

RayPoint trace_ray(const CosineParams& f, const ExternalAddress& s, double t,
                   int depth, double tol) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (f.real_sinh_family() && !address_realizable(s))
        throw RayError("address " + model::to_string(s) +
                       " violates the side-parity chain (strip S_n maps to the "
                       "right half-plane iff n+side is even); no such ray exists");
    const double ts_val = model::potential_boundary_value(s);
    if (!(t > ts_val))
        throw RayError("potential must exceed the endpoint potential t_s = " +
                       std::to_string(ts_val));

    const PotentialLadder lad = potential_ladder(s, t, 64);
    const int d_max = static_cast<int>(lad.t.size()) - 1;

    std::vector<double> history;
    complex prev{0, 0};
    bool have_prev = false;
    for (int d_req = depth; d_req <= 64; d_req *= 2) {
        const int d = std::min(d_req, d_max);
        const bool fused = lad.overflowed && d == d_max;
        const complex start = ray_start(f, s, lad.t[d], d, fused);
        const complex z = pullback_from_depth(f, s, start, d);
        if (have_prev) {
            const double res = std::abs(z - prev);
            history.push_back(res);
            if (res < tol) return RayPoint{t, z, res, d};
        }
        prev = z;
        have_prev = true;
        if (fused) {
            // The fused start is exact beyond double precision; deeper
            // requests reproduce the same point.
            return RayPoint{t, z, history.empty() ? 0.0 : history.back(), d};
        }
    }
    if (!history.empty() && history.back() < 1e-8)
        return RayPoint{t, prev, history.back(), 64};
    throw RayError("ray trace did not converge at depth cap", history);
}

RayTrace trace_ray_grid(const CosineParams& f, const ExternalAddress& s,
                        const std::vector<double>& ts, double tol) {
    RayTrace ray;
    ray.address = s;
    std::vector<double> sorted = ts;
    std::sort(sorted.rbegin(), sorted.rend());
    for (double t : sorted) {
        RayPoint p = trace_ray(f, s, t, 8, tol);
        // Interior samples must sit in the strip of the leading entry.
        try {
            if (!(strip_of(p.z, 1e-9).symbol == s.entry(0)))
                throw RayError("traced point left the strip of its address");
        } catch (const StripBoundaryError&) {
            // Boundary-touching sample (landing regime); accepted.
        }
        ray.residuals.push_back(p.residual);
        ray.samples.push_back(std::move(p));
    }
    return ray;
}

LandingResult landing_point(const CosineParams& f, const ExternalAddress& s, double tol) {
    const double ts_val = model::potential_boundary_value(s);
    // Quartered approach t_k -> t_s down to t - t_s ~ 2e-9. The endpoint
    // approach along periodic tails is Hoelder with exponent near 1, so the
    // last raw value already sits near the tolerance; one Aitken sweep on
    // the tail refines it and provides the error estimate.
    constexpr int kN = 15;
    std::vector<complex> zs;
    zs.reserve(kN);
    double delta = 0.5;
    for (int k = 0; k < kN; ++k, delta *= 0.25)
        zs.push_back(trace_ray(f, s, ts_val + delta, 8, 1e-12).z);

    auto aitken = [](const std::vector<complex>& v) {
        std::vector<complex> out;
        for (size_t i = 0; i + 2 < v.size(); ++i) {
            const complex num = (v[i + 2] - v[i + 1]) * (v[i + 2] - v[i + 1]);
            const complex den = v[i + 2] - 2.0 * v[i + 1] + v[i];
            out.push_back(std::abs(den) > 0 ? v[i + 2] - num / den : v[i + 2]);
        }
        return out;
    };

    complex best = zs.back();
    double err = std::abs(zs[kN - 1] - zs[kN - 2]);
    const auto col = aitken(zs);
    if (col.size() >= 2) {
        const double e = std::abs(col.back() - col[col.size() - 2]);
        if (e < err) {
            err = e;
            best = col.back();
        }
    }
    if (!(err < tol))
        throw RayError("landing extrapolation error " + std::to_string(err) +
                       " above tolerance (accumulating ray?)");
    return {best, err};
}

// ---- certificates -------------------------------------------------------------

double boundary_max_modulus(const CosineParams& f, complex center, double r, int n) {
    double best = 0.0;
    for (int k = 0; k < n; ++k) {
        const double th = 2 * pi * k / n;
        const complex z = center + complex(r * std::cos(th), r * std::sin(th));
        best = std::max(best, std::abs(evaluate(f, z)));
    }
    return best;
}

DisjointTypeCertificate certify_disjoint_type(const CosineParams& f, double r, int samples) {
    if (!(r > 0)) throw std::invalid_argument("radius must be positive");
    DisjointTypeCertificate cert;
    cert.radius = r;
    const auto [v1, v2] = singular_values(f);
    cert.singular_values_inside = std::abs(v1) < r && std::abs(v2) < r;

    double max_mod = 0.0, max_deriv = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double th = 2 * pi * k / samples;
        const complex z{r * std::cos(th), r * std::sin(th)};
        max_mod = std::max(max_mod, std::abs(evaluate(f, z)));
        max_deriv = std::max(max_deriv, std::abs(derivative(f, z)));
    }
    cert.padding = r * max_deriv * (2 * pi * r / samples);
    cert.max_modulus = max_mod + cert.padding;
    cert.margin = r - cert.max_modulus;
    cert.ok = cert.singular_values_inside && cert.max_modulus < r;
    return cert;
}

Symbol::Side forced_next_side(Symbol s) {
    const bool odd = (s.index % 2) != 0;
    const bool r = s.side == Symbol::Side::R;
    return (r != odd) ? Symbol::Side::R : Symbol::Side::L;
}

bool address_realizable(const ExternalAddress& s) {
    const size_t span = s.preperiod().size() + s.period().size() + 1;
    for (size_t i = 0; i + 1 < span + 1; ++i)
        if (s.entry(i + 1).side != forced_next_side(s.entry(i))) return false;
    return true;
}

ExternalAddress random_realizable_address(uint64_t seed, int preperiod_len,
                                          int period_len, int max_abs_index) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int64_t> idx(-max_abs_index, max_abs_index);
    std::uniform_int_distribution<int> coin(0, 1);

    // Period: free indices, sides forced along the chain; the wrap needs an
    // even index-parity sum, fixed by bumping the last index.
    std::vector<Symbol> w(period_len);
    for (auto& s : w) s.index = idx(rng);
    int64_t parity = 0;
    for (auto& s : w) parity += s.index & 1;
    if (parity & 1) w.back().index += (w.back().index >= max_abs_index ? -1 : 1);

    w[0].side = coin(rng) ? Symbol::Side::R : Symbol::Side::L;
    for (int i = 1; i < period_len; ++i) w[i].side = forced_next_side(w[i - 1]);

    // Preperiod grown backwards: side forced by the successor's side.
    std::vector<Symbol> pre(preperiod_len);
    Symbol succ = w[0];
    for (int i = preperiod_len - 1; i >= 0; --i) {
        Symbol s;
        s.side = coin(rng) ? Symbol::Side::R : Symbol::Side::L;
        // forced_next_side(s) must equal succ.side; parity of the index
        // decides, so draw an index of the right parity.
        const bool need_odd = (s.side == Symbol::Side::R) !=
                              (succ.side == Symbol::Side::R);
        int64_t n = idx(rng);
        if (((n & 1) != 0) != need_odd) n += (n >= max_abs_index ? -1 : 1);
        s.index = n;
        pre[i] = s;
        succ = s;
    }
    return ExternalAddress(std::move(pre), std::move(w));
}

MarkedPreimageSequence marked_preimage_sequence(const CosineParams& f, complex p,
                                                Symbol::Side tract_side, int count) {
    const auto [v1, v2] = singular_values(f);
    if (std::min(std::abs(p - v1), std::abs(p - v2)) < 1e-12)
        throw std::invalid_argument("p must not be a critical value");
    if (count < 2) throw std::invalid_argument("count must be >= 2");

    const QuadRoots roots = exp_quadratic_roots(f, p);
    const complex u = tract_side == Symbol::Side::R ? roots.big : roots.small;
    const complex base = std::log(u);
    MarkedPreimageSequence seq;
    for (int k = 0; k < count; ++k)
        seq.points.emplace_back(base + complex(0, 2 * pi * k));
    std::sort(seq.points.begin(), seq.points.end(),
              [](complex a, complex b) { return std::abs(a) < std::abs(b); });
    for (size_t i = 0; i + 1 < seq.points.size(); ++i) {
        const double lo = std::abs(seq.points[i]), hi = std::abs(seq.points[i + 1]);
        if (!(lo < hi)) throw std::runtime_error("preimage moduli not strictly increasing");
        seq.ratio_bound = std::max(seq.ratio_bound, hi / lo);
    }
    return seq;
}

StripIndex FundamentalDomainSplit::label(complex z) const {
    if (std::abs(z) <= disk_radius)
        throw std::domain_error("query point inside the certified disk");
    if (std::abs(evaluate(params, z)) <= disk_radius)
        throw std::domain_error("query point inside the preimage of the certified disk");
    return strip_of(z);
}

FundamentalDomainSplit fundamental_domain_split(const CosineParams& f, double D_radius) {
    FundamentalDomainSplit split;
    split.params = f;
    split.disk_radius = D_radius;
    split.certificate = certify_disjoint_type(f, D_radius);
    if (!split.certificate.ok)
        throw std::runtime_error("disjoint-type certificate failed for the requested disk");
    return split;
}

std::string ray_csv(const RayTrace& ray) {
    std::ostringstream out;
    out << "t,re,im,residual\n";
    char buf[256];
    for (const auto& p : ray.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", p.t, p.z.real(),
                      p.z.imag(), p.residual);
        out << buf;
    }
    return out.str();
}

}  // namespace brush::dynamics
