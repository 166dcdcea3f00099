#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "brush/dd.hpp"

namespace brush::poincare {

using complex = std::complex<double>;

// Entire solution of Phi(lambda z) = p(Phi(z)) for p(z) = z^2 - 1 at the
// repelling fixed point z0 = (1+sqrt(5))/2 with multiplier lambda = 1+sqrt(5),
// normalized by Phi'(0) = 1. Coefficients solve
//   a_n = (sum_{i+j=n, 0<i,j<n} a_i a_j) / (lambda^n - 2 z0),  n >= 2.
struct PoincareSeries {
    double z0 = 0.0;
    double lambda = 0.0;
    std::vector<double> coeffs;  // a_0..a_N
    double reliability_radius = 0.5;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

PoincareSeries solve_coefficients(int N);

// Largest residual |lambda^n a_n - sum_{i+j=n} a_i a_j + [n=0]| over
// 1 <= n <= N (the defining relation, checked in extended precision).
double recursion_residual(const PoincareSeries& s);

// Phi(z) = p^m(Phi(lambda^{-m} z)); requires |lambda^{-m} z| within the
// reliability radius, else throws naming the required m.
complex evaluate_poincare(const PoincareSeries& s, complex z, int m);

// Smallest admissible m for the argument.
int required_m(const PoincareSeries& s, complex z);

// log|Phi(z)| with overflow-free iteration of p (for growth estimates).
double log_abs_poincare(const PoincareSeries& s, complex z);

// A point z~ with Phi(z~) = 0 and Phi'(z~) = 0, located from a zero x* of
// Phi via z~ = lambda^2 x* and polished by Newton on Phi' in extended
// precision. Residuals |Phi|, |Phi'| are reported.
struct CriticalPreimage {
    complex z_tilde;
    double phi_residual = 0.0;
    double dphi_residual = 0.0;
    dd u_base;  // z~ / lambda^3 in extended precision (jet anchor)
};

CriticalPreimage find_critical_preimage(const PoincareSeries& s);

// Truncated jet of Phi at a base point: Phi(base + h) = sum c_k h^k.
struct Jet {
    complex base;
    std::vector<complex> coeffs;
    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Jet of Phi at lambda^m * base0 obtained by propagating the series jet at
// base0 through m squaring steps (c'_k = [J^2 - 1]_k / lambda^k).
Jet jet_at_scaled_point(const PoincareSeries& s, complex base0, int m, int order);

// Vanishing order of Phi - Phi(z_n) at z_n = lambda^n z~; asserts >= n fails
// upstream only, the raw order is returned. Jet order grows automatically
// up to 2^n + 2.
int vanishing_order_at(const PoincareSeries& s, const CriticalPreimage& cp, int n);

// Relative threshold separating structural zeros from roundoff.
inline constexpr double kOrderThreshold = 1e-20;

// Least-squares slope of log log max_{|z|=r} |Phi| against log r.
struct GrowthEstimate {
    double slope = 0.0;
    std::vector<double> radii;
    std::vector<double> loglog_max;  // log(max log|Phi|) per radius
};

GrowthEstimate order_of_growth_estimate(const PoincareSeries& s,
                                        const std::vector<double>& radii,
                                        int angle_samples = 128);

}  // namespace brush::poincare
