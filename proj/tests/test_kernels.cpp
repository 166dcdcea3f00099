#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "brush/dynamics.hpp"
#include "brush/kernels.hpp"

using namespace brush::simd;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("scalar kernel tracks libm on moderate arguments") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-12.0, 12.0);
    const double a = std::numbers::pi / 2, b = -std::numbers::pi / 2;
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double xr = u(rng), xi = u(rng);
        double out;
        modulus_sq_scalar(&xr, &xi, 1, a, 0, b, 0, &out);
        const std::complex<double> z(xr, xi);
        const double ref = std::norm(a * std::exp(z) + b * std::exp(-z));
        worst = std::max(worst, std::abs(out - ref) / std::max(1.0, ref));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("scalar and AVX2 variants agree bitwise") {
    auto esc_v = avx2_escape_kernel_or_null();
    auto mod_v = avx2_modulus_kernel_or_null();
    if (!esc_v || !mod_v) {
        MESSAGE("AVX2 kernels unavailable at runtime; equivalence not exercised");
        return;
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    const int N = 4099;  // deliberately not a multiple of the lane width
    std::vector<double> re(N), im(N);
    for (int i = 0; i < N; ++i) {
        re[i] = u(rng);
        im[i] = u(rng);
    }
    EscapeParams p;
    p.a_re = std::numbers::pi / 2;
    p.b_re = -std::numbers::pi / 2;
    p.R2 = 2500.0;
    p.maxiter = 120;

    std::vector<int32_t> cs(N), cv(N);
    escape_counts_scalar(re.data(), im.data(), N, p, cs.data());
    esc_v(re.data(), im.data(), N, p, cv.data());
    CHECK(cs == cv);

    std::vector<double> ms(N), mv(N);
    modulus_sq_scalar(re.data(), im.data(), N, p.a_re, 0, p.b_re, 0, ms.data());
    mod_v(re.data(), im.data(), N, p.a_re, 0, p.b_re, 0, mv.data());
    CHECK(ms == mv);
}

TEST_CASE("escape kernel agrees with escape_classify on clear-cut points") {
    EscapeParams p;
    p.a_re = std::numbers::pi / 2;
    p.b_re = -std::numbers::pi / 2;
    p.R2 = 2500.0;
    p.maxiter = 64;
    auto kernel = dispatched_escape_kernel();

    const double re0 = 0.0, im0 = 0.0;
    int32_t c = -1;
    kernel(&re0, &im0, 1, p, &c);
    CHECK(c == 0);  // fixed point stays bounded

    const double re5 = 5.0, im5 = 0.0;
    kernel(&re5, &im5, 1, p, &c);
    CHECK(c > 0);
    auto ref = brush::dynamics::escape_classify(brush::dynamics::CosineParams::pi_sinh(),
                                                {5.0, 0.0}, 50.0, 64);
    CHECK(ref.kind == brush::dynamics::EscapeKind::Escaping);

    const double reb = 0.0, imb = std::numbers::pi / 2;
    kernel(&reb, &imb, 1, p, &c);
    CHECK(c == 0);  // orbit i*pi/2 -> i*pi -> 0
}

TEST_CASE("dispatch reports a kernel and honors the scalar override") {
    CHECK((dispatched_kernel_name() == "scalar" || dispatched_kernel_name() == "avx2"));
    CHECK(dispatched_escape_kernel() != nullptr);
    CHECK(dispatched_modulus_kernel() != nullptr);
}

TEST_SUITE_END();
