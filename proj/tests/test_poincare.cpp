#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "brush/poincare.hpp"

using namespace brush::poincare;

TEST_SUITE_BEGIN("poincare");

static const PoincareSeries& series() {
    static const PoincareSeries s = solve_coefficients(40);
    return s;
}

TEST_CASE("base data: z0, lambda, low coefficients") {
    const auto& s = series();
    CHECK(s.z0 == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
    CHECK(s.lambda == doctest::Approx(1.0 + std::sqrt(5.0)).epsilon(1e-15));
    // Fixed-point consistency a0^2 - 1 = a0.
    CHECK(s.z0 * s.z0 - 1.0 == doctest::Approx(s.z0).epsilon(1e-14));
    CHECK(s.coeffs[1] == 1.0);
    CHECK(s.coeffs[2] == doctest::Approx(1.0 / (5.0 + std::sqrt(5.0))).epsilon(1e-14));
    // a3 = 2 a2 / (lambda^3 - lambda).
    const double lam = s.lambda;
    CHECK(s.coeffs[3] ==
          doctest::Approx(2.0 * s.coeffs[2] / (lam * lam * lam - lam)).epsilon(1e-13));
    CHECK(s.coeffs[3] == doctest::Approx(0.0090170).epsilon(1e-4));
}

TEST_CASE("recursion residual stays below 1e-12") {
    CHECK(recursion_residual(series()) < 1e-12);
}

TEST_CASE("evaluation: Phi(0) = z0 and linearization near 0") {
    const auto& s = series();
    CHECK(std::abs(evaluate_poincare(s, {0, 0}, 0) - complex(s.z0, 0)) < 1e-15);
    // Phi(lambda z) - z0 ~ lambda (Phi(z) - z0) for small z.
    const complex z{1e-6, 2e-6};
    const complex lhs = evaluate_poincare(s, s.lambda * z, 0) - s.z0;
    const complex rhs = s.lambda * (evaluate_poincare(s, z, 0) - s.z0);
    // Linearization up to the quadratic remainder a2*lambda*(lambda-1)*z^2.
    CHECK(std::abs(lhs - rhs) < 10.0 * std::norm(z));
}

TEST_CASE("evaluation is m-independent") {
    const auto& s = series();
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const complex z{3.0 * u(rng), 3.0 * u(rng)};
        const int m = required_m(s, z);
        const complex a = evaluate_poincare(s, z, m);
        const complex b = evaluate_poincare(s, z, m + 1);
        CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
    }
    CHECK_THROWS_AS(evaluate_poincare(s, {100.0, 0}, 1), std::invalid_argument);
}

TEST_CASE("critical preimage: residuals and structure") {
    const auto& s = series();
    const auto cp = find_critical_preimage(s);
    CHECK(cp.phi_residual < 1e-8);
    CHECK(cp.dphi_residual < 1e-8);

    // p(Phi(z~)) = -1 = Phi(lambda z~).
    const complex at_lz = evaluate_poincare(s, s.lambda * cp.z_tilde, required_m(s, s.lambda * cp.z_tilde));
    CHECK(std::abs(at_lz - complex(-1.0, 0)) < 1e-7);

    // Phi''(z~) != 0: simple critical point.
    const auto jet = jet_at_scaled_point(s, cp.z_tilde / std::pow(s.lambda, 3), 3, 4);
    CHECK(std::abs(jet.coeffs[2]) > 1e-6);
}

TEST_CASE("vanishing orders: deg(Phi, z_n) >= n and even-n monotonicity") {
    const auto& s = series();
    const auto cp = find_critical_preimage(s);
    int prev_even = 0;
    for (int n = 0; n <= 10; ++n) {
        const int ord = vanishing_order_at(s, cp, n);
        CAPTURE(n);
        CHECK(ord >= n);
        if (n % 2 == 0) {
            CHECK(ord >= prev_even);
            prev_even = ord;
        }
    }
    // n=2: the value returns to 0 and the order doubles relative to z~.
    CHECK(vanishing_order_at(s, cp, 2) >= 2);
    CHECK(vanishing_order_at(s, cp, 0) == 2);
}

TEST_CASE("jet propagation agrees with finite differences up to order 6") {
    const auto& s = series();
    const auto cp = find_critical_preimage(s);
    const auto jet = jet_at_scaled_point(s, cp.z_tilde / std::pow(s.lambda, 3), 3, 6);

    // Central finite differences of Phi around z~ (order-8 stencil).
    const double h = 0.05;
    auto phi = [&](double x) {
        const complex z{x, 0};
        return evaluate_poincare(s, z, required_m(s, z)).real();
    };
    const double x0 = cp.z_tilde.real();
    std::vector<double> samples;
    for (int k = -4; k <= 4; ++k) samples.push_back(phi(x0 + k * h));
    // f'' and f''' stencils.
    const double d2 = (-1.0 / 560 * (samples[0] + samples[8]) +
                       8.0 / 315 * (samples[1] + samples[7]) -
                       1.0 / 5 * (samples[2] + samples[6]) +
                       8.0 / 5 * (samples[3] + samples[5]) - 205.0 / 72 * samples[4]) /
                      (h * h);
    const double c2 = d2 / 2.0;
    CHECK(c2 == doctest::Approx(jet.coeffs[2].real()).epsilon(1e-6));
    const double d3 = (7.0 / 240 * (samples[8] - samples[0]) -
                       3.0 / 10 * (samples[7] - samples[1]) +
                       169.0 / 120 * (samples[6] - samples[2]) -
                       61.0 / 30 * (samples[5] - samples[3])) /
                      (h * h * h);
    const double c3 = d3 / 6.0;
    CHECK(c3 == doctest::Approx(jet.coeffs[3].real()).epsilon(1e-4));
}

TEST_CASE("order of growth estimate") {
    const auto& s = series();
    std::vector<double> radii;
    for (int i = 0; i < 9; ++i) radii.push_back(100.0 * std::pow(10.0, 0.5 * i));
    const auto g = order_of_growth_estimate(s, radii, 64);
    const double target = std::log(2.0) / std::log(1.0 + std::sqrt(5.0));
    CHECK(g.slope == doctest::Approx(target).epsilon(0.05));
    CHECK(g.slope < std::log(2.0) / std::log(3.0));
    CHECK(g.slope >= 0.54);
    CHECK(g.slope <= 0.64);
    // Max modulus attained near the positive real axis: the real-axis value
    // tracks the circle maximum.
    const double on_axis = log_abs_poincare(s, {1e4, 0});
    const double circle_max = std::exp(g.loglog_max[4]);  // r = 1e4
    CHECK(on_axis >= 0.8 * circle_max);
}

TEST_SUITE_END();
