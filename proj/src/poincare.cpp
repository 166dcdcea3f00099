#include "brush/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace brush::poincare {

namespace {

struct DDConstants {
    dd sqrt5;
    dd lambda;
    dd z0;
};

const DDConstants& constants() {
    static const DDConstants c = [] {
        DDConstants k;
        k.sqrt5 = dd_sqrt(dd(5.0));
        k.lambda = dd(1.0) + k.sqrt5;
        k.z0 = k.lambda * dd(0.5);
        return k;
    }();
    return c;
}

// Coefficients a_0..a_N in double-double.
std::vector<dd> dd_coefficients(int N) {
    const auto& k = constants();
    std::vector<dd> a(N + 1);
    a[0] = k.z0;
    if (N >= 1) a[1] = dd(1.0);
    dd lam_pow = k.lambda;  // lambda^1
    for (int n = 2; n <= N; ++n) {
        lam_pow = lam_pow * k.lambda;
        dd s(0.0);
        for (int i = 1; i < n; ++i) s += a[i] * a[n - i];
        a[n] = s / (lam_pow - k.lambda);  // lambda^n - 2 z0 = lambda^n - lambda
    }
    return a;
}

}  // namespace

PoincareSeries solve_coefficients(int N) {
    if (N < 2) throw std::invalid_argument("N must be >= 2");
    const auto a = dd_coefficients(N);
    PoincareSeries s;
    s.z0 = double(constants().z0);
    s.lambda = double(constants().lambda);
    s.coeffs.reserve(N + 1);
    for (const auto& c : a) s.coeffs.push_back(double(c));
    return s;
}

double recursion_residual(const PoincareSeries& s) {
    const int N = s.order();
    double worst = 0.0;
    dd lam_pow(1.0);
    const dd lambda = constants().lambda;
    for (int n = 1; n <= N; ++n) {
        lam_pow = (n == 1) ? lambda : lam_pow * lambda;
        dd conv(0.0);
        for (int i = 0; i <= n; ++i) conv += dd(s.coeffs[i]) * dd(s.coeffs[n - i]);
        const dd lhs = lam_pow * dd(s.coeffs[n]);
        worst = std::max(worst, std::abs(double(lhs - conv)));
    }
    return worst;
}

int required_m(const PoincareSeries& s, complex z) {
    const double az = std::abs(z);
    if (az <= s.reliability_radius) return 0;
    return static_cast<int>(
        std::ceil(std::log(az / s.reliability_radius) / std::log(s.lambda)));
}

namespace {

complex series_eval(const PoincareSeries& s, complex z) {
    complex acc(0, 0);
    for (int n = s.order(); n >= 0; --n) acc = acc * z + s.coeffs[n];
    return acc;
}

complex series_deriv_eval(const PoincareSeries& s, complex z) {
    complex acc(0, 0);
    for (int n = s.order(); n >= 1; --n) acc = acc * z + double(n) * s.coeffs[n];
    return acc;
}

}  // namespace

complex evaluate_poincare(const PoincareSeries& s, complex z, int m) {
    const double scaled = std::abs(z) / std::pow(s.lambda, m);
    if (scaled > s.reliability_radius + 1e-12)
        throw std::invalid_argument("argument outside reliability radius; need m >= " +
                                    std::to_string(required_m(s, z)));
    complex v = series_eval(s, z / std::pow(s.lambda, m));
    for (int i = 0; i < m; ++i) v = v * v - 1.0;
    return v;
}

double log_abs_poincare(const PoincareSeries& s, complex z) {
    const int m = required_m(s, z);
    complex v = series_eval(s, z / std::pow(s.lambda, m));
    double log_abs = 0.0;
    bool log_mode = false;
    for (int i = 0; i < m; ++i) {
        if (!log_mode) {
            if (std::abs(v) > 1e100) {
                log_mode = true;
                log_abs = std::log(std::abs(v));
            } else {
                v = v * v - 1.0;
                continue;
            }
        }
        log_abs *= 2.0;  // |v^2 - 1| = |v|^2 (1 + O(|v|^-2))
    }
    return log_mode ? log_abs : std::log(std::abs(v));
}

// ---- jets ----------------------------------------------------------------------

namespace {

template <class T>
double coeff_abs(const T& v) {
    if constexpr (std::is_same_v<T, dd>) return abs_val(v);
    else return std::abs(v);
}

// Taylor shift: coefficients of P(base + h) for the polynomial with
// coefficients a (ascending), truncated to `order`.
template <class T>
std::vector<T> taylor_shift(const std::vector<T>& a, T base, int order) {
    std::vector<T> b = a;
    const int N = static_cast<int>(b.size()) - 1;
    for (int i = 0; i <= N; ++i)
        for (int j = N - 1; j >= i; --j) b[j] = b[j] + base * b[j + 1];
    b.resize(order + 1, T(0.0));
    return b;
}

// One propagation step: jet of Phi at lambda*base from jet at base,
// c'_k = [J^2 - 1]_k / lambda^k.
template <class T>
std::vector<T> propagate_jet(const std::vector<T>& c, const T& lambda) {
    const int M = static_cast<int>(c.size()) - 1;
    std::vector<T> out(M + 1, T(0.0));
    for (int k = 0; k <= M; ++k) {
        T s(0.0);
        for (int i = 0; i <= k; ++i) s = s + c[i] * c[k - i];
        out[k] = s;
    }
    out[0] = out[0] - T(1.0);
    T scale(1.0);
    const T inv_lambda = T(1.0) / lambda;
    for (int k = 1; k <= M; ++k) {
        scale = scale * inv_lambda;
        out[k] = out[k] * scale;
    }
    return out;
}

// dd jet of Phi at lambda^steps * base0 (|base0| within the series radius).
std::vector<dd> dd_jet(dd base0, int steps, int order, int series_N = 48) {
    auto a = dd_coefficients(series_N);
    if (static_cast<int>(a.size()) < order + 1) a.resize(order + 1, dd(0.0));
    std::vector<dd> jet = taylor_shift(a, base0, order);
    const dd lambda = constants().lambda;
    for (int i = 0; i < steps; ++i) jet = propagate_jet(jet, lambda);
    return jet;
}

}  // namespace

Jet jet_at_scaled_point(const PoincareSeries& s, complex base0, int m, int order) {
    Jet out;
    out.base = base0 * std::pow(s.lambda, m);
    if (base0.imag() == 0.0) {
        const auto jet = dd_jet(dd(base0.real()), m, order);
        out.coeffs.reserve(jet.size());
        for (const auto& c : jet) out.coeffs.emplace_back(double(c), 0.0);
        return out;
    }
    std::vector<complex> a(s.coeffs.begin(), s.coeffs.end());
    if (static_cast<int>(a.size()) < order + 1) a.resize(order + 1, complex(0, 0));
    std::vector<complex> jet = taylor_shift(a, base0, order);
    for (int i = 0; i < m; ++i) jet = propagate_jet(jet, complex(s.lambda, 0));
    out.coeffs = std::move(jet);
    return out;
}

CriticalPreimage find_critical_preimage(const PoincareSeries& s) {
    // Base zero of Phi: x* = lambda * u* where Phi(u*) = 1, since
    // Phi(lambda u) = Phi(u)^2 - 1. Seed from the linearization.
    double u = (1.0 - s.z0);
    for (int it = 0; it < 60; ++it) {
        const complex phi = series_eval(s, {u, 0});
        const complex dphi = series_deriv_eval(s, {u, 0});
        const double step = (phi.real() - 1.0) / dphi.real();
        u -= step;
        if (std::abs(step) < 1e-14) break;
    }
    if (std::abs(u) > 0.9 * s.reliability_radius * s.lambda)
        throw std::runtime_error("critical-preimage search left the series box");

    // z~ = lambda^2 x* = lambda^3 u*; polish with Newton on Phi' in extended
    // precision via order-3 jets.
    const dd lambda = constants().lambda;
    dd base(u);  // z~ = lambda^3 * base
    for (int it = 0; it < 8; ++it) {
        const auto jet = dd_jet(base, 3, 3);
        const dd dphi = jet[1];
        const dd d2phi = jet[2] * dd(2.0);
        // Newton step on z~; base moves by the same step scaled back.
        const dd step = dphi / d2phi;
        base = base - step / (lambda * lambda * lambda);
        if (abs_val(step) < 1e-28) break;
    }

    const auto jet = dd_jet(base, 3, 3);
    CriticalPreimage cp;
    const dd zt = base * lambda * lambda * lambda;
    cp.z_tilde = complex(double(zt), 0.0);
    cp.u_base = base;
    cp.phi_residual = std::abs(double(jet[0]));
    cp.dphi_residual = std::abs(double(jet[1]));
    if (cp.phi_residual > 1e-8 || cp.dphi_residual > 1e-8)
        throw std::runtime_error("critical preimage residuals above 1e-8");
    return cp;
}

namespace {

// Jet of Phi - Phi(z_m) at z_m in scale-tracked form c0 + exp(log_scale)*P(h)
// with P max-normalized and P(0) = 0. The Taylor coefficients at z_n collapse
// doubly exponentially, so the raw jet underflows any fixed threshold; the
// constant term alternates between 0 and -1 exactly under the functional
// equation, which keeps the propagation on the normalized part only:
//   c0 = 0:  J^2 - 1 = -1 + s^2 P^2
//   c0 = -1: J^2 - 1 = s(-2P + s P^2)
struct ScaledJet {
    bool c0_is_minus_one = false;
    std::vector<dd> P;      // index 0 unused (always zero)
    double log_scale = 0.0;
};

std::vector<dd> conv_self(const std::vector<dd>& p) {
    const int M = static_cast<int>(p.size()) - 1;
    std::vector<dd> out(M + 1, dd(0.0));
    for (int k = 2; k <= M; ++k) {
        dd acc(0.0);
        for (int i = 1; i < k; ++i) acc += p[i] * p[k - i];
        out[k] = acc;
    }
    return out;
}

void renormalize(ScaledJet& j) {
    double mx = 0.0;
    for (const auto& c : j.P) mx = std::max(mx, abs_val(c));
    if (mx == 0.0) return;
    const dd inv = dd(1.0) / dd(mx);
    for (auto& c : j.P) c *= inv;
    j.log_scale += std::log(mx);
}

void scaled_step(ScaledJet& j, const dd& lambda) {
    const int M = static_cast<int>(j.P.size()) - 1;
    if (!j.c0_is_minus_one) {
        j.P = conv_self(j.P);
        j.log_scale *= 2.0;
        j.c0_is_minus_one = true;
    } else {
        std::vector<dd> p2 = conv_self(j.P);
        const double ls = j.log_scale;
        for (int k = 1; k <= M; ++k) {
            dd v = dd(-2.0) * j.P[k];
            if (ls > -600.0) v += dd(std::exp(ls)) * p2[k];
            j.P[k] = v;
        }
        j.c0_is_minus_one = false;
    }
    // Argument rescale h -> h/lambda.
    dd scale(1.0);
    const dd inv_lambda = dd(1.0) / lambda;
    for (int k = 1; k <= M; ++k) {
        scale *= inv_lambda;
        j.P[k] *= scale;
    }
    renormalize(j);
}

}  // namespace

int vanishing_order_at(const PoincareSeries& s, const CriticalPreimage& cp, int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (cp.z_tilde.imag() != 0.0)
        throw std::invalid_argument("jet engine expects the real critical preimage");
    (void)s;

    // z~ = lambda^q * u_base with u_base inside the series radius.
    const int q = 3;
    const dd lambda = constants().lambda;

    const long long cap = (n < 60) ? ((1LL << n) + 2) : (1LL << 60);
    for (long long order = 40; ; order = order * 2 + 2) {
        const bool last = order >= cap;
        const int eff_order = static_cast<int>(std::min<long long>(order, cap));

        ScaledJet j;
        j.P = dd_jet(cp.u_base, q, eff_order);
        j.P[0] = dd(0.0);  // Phi(z~) = 0 by construction (residual checked)
        j.c0_is_minus_one = false;
        renormalize(j);
        for (int i = 0; i < n; ++i) scaled_step(j, lambda);

        double mx = 0.0;
        for (const auto& c : j.P) mx = std::max(mx, abs_val(c));
        for (int k = 1; k <= eff_order; ++k)
            if (abs_val(j.P[k]) > kOrderThreshold * mx) return k;
        if (last)
            throw std::runtime_error("no nonzero jet coefficient below order cap 2^n+2");
    }
}

GrowthEstimate order_of_growth_estimate(const PoincareSeries& s,
                                        const std::vector<double>& radii,
                                        int angle_samples) {
    if (radii.size() < 2) throw std::invalid_argument("need at least two radii");
    GrowthEstimate g;
    for (double r : radii) {
        double best = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < angle_samples; ++k) {
            const double th = 2 * std::numbers::pi * k / angle_samples;
            best = std::max(best, log_abs_poincare(s, std::polar(r, th)));
        }
        if (!(best > 0))
            throw std::runtime_error("radius too small for growth regression");
        g.radii.push_back(r);
        g.loglog_max.push_back(std::log(best));
    }
    // Least squares slope of loglog_max against log r.
    const size_t n = g.radii.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double x = std::log(g.radii[i]), y = g.loglog_max[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    g.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return g;
}

}  // namespace brush::poincare
