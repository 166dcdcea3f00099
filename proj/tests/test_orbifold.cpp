#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "brush/orbifold.hpp"

using namespace brush::orbifold;
using brush::dynamics::CosineParams;
using std::numbers::pi;

TEST_SUITE_BEGIN("orbifold");

TEST_CASE("euler characteristic of (C; 2,2,2) is exactly -1/2") {
    auto spec = OrbifoldSpec::plane_marks(
        {{{0, 0}, 2}, {{0, pi}, 2}, {{0, -pi}, 2}});
    auto chi = spec.euler_characteristic();
    REQUIRE(chi.has_value());
    CHECK(*chi == Rational(-1, 2));
    CHECK(spec.hyperbolic());
    // (C*, nu(1)=2): chi = 0 - 1/2.
    auto o2 = OrbifoldSpec::plane_marks({{{1, 0}, 2}});
    o2.surface = OrbifoldSpec::Surface::PuncturedPlane;
    CHECK(*o2.euler_characteristic() == Rational(-1, 2));
}

TEST_CASE("Beardon-Pommerenke evaluations") {
    const double c2 = bp_C2();
    CHECK(c2 == doctest::Approx(5.76275).epsilon(1e-5));
    CHECK(density_lower_punctured01({-1, 0}) ==
          doctest::Approx(1.0 / (kBP_C1 * c2)).epsilon(1e-14));
    // z = -e: |z| = e, |log|z|| = 1.
    const double at_e = density_lower_punctured01({-std::exp(1.0), 0});
    CHECK(at_e == doctest::Approx(1.0 / (kBP_C1 * std::exp(1.0) * (c2 + 1.0))).epsilon(1e-14));
    CHECK(at_e == doctest::Approx(0.0192352).epsilon(2e-4));
    CHECK_THROWS_AS(density_lower_punctured01({1.0, 0}), std::domain_error);
    CHECK_THROWS_AS(density_lower_punctured01({0, 0}), std::domain_error);
}

TEST_CASE("O2 bound: displayed formula, cone point, puncture") {
    // Generic point: formula value.
    const std::complex<double> w{-3, 0};
    const auto root = std::sqrt(1.0 - w);
    const double expect =
        1.0 / (2 * kBP_C1 * std::abs(root) * std::abs(1.0 - root) *
               (bp_C2() + std::numbers::ln2 + std::abs(std::log(std::abs(1.0 - root)))));
    CHECK(density_lower_O2(w) == doctest::Approx(expect).epsilon(1e-14));
    // Cone point: finite positive limit.
    const double cone = density_lower_O2({1, 0});
    CHECK(cone > 0);
    CHECK(std::isfinite(cone));
    // Puncture: infinity-flagged.
    CHECK(std::isinf(density_lower_O2({0, 0})));
}

TEST_CASE("O0 chain is invariant under conjugation") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> box(-20.0, 20.0);
    for (int i = 0; i < 200; ++i) {
        const std::complex<double> z(box(rng), box(rng));
        for (auto conv : {ExpConvention::Exp, ExpConvention::ExpI}) {
            CHECK(density_lower_O0(z, conv) ==
                  doctest::Approx(density_lower_O0(std::conj(z), conv)).epsilon(1e-12));
        }
    }
}

TEST_CASE("222 bound: normalization, relabeling invariance, scaling") {
    const std::complex<double> a{0, 0}, b{2, 0}, c{0, 4};
    const std::complex<double> w{0.7, 0.3};
    const double v = density_lower_222(a, b, c, w);
    CHECK(v > 0);
    // Invariance under permuting the marks.
    CHECK(density_lower_222(b, a, c, w) == doctest::Approx(v).epsilon(1e-9));
    CHECK(density_lower_222(c, b, a, w) == doctest::Approx(v).epsilon(1e-9));
    CHECK(density_lower_222(a, c, b, w) == doctest::Approx(v).epsilon(1e-9));
    // Scaling covariance: rho(0,b,c; w) = s * rho(0,sb,sc; sw).
    for (double s : {2.0, 10.0, 0.25}) {
        CHECK(density_lower_222(a, b, c, w) ==
              doctest::Approx(s * density_lower_222(a, s * b, s * c, s * w)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(density_lower_222(a, a, c, w), std::invalid_argument);
}

TEST_CASE("222 bound and density_lower_geometric_marks are conjugation invariant") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> box(-5.0, 5.0);
    auto seq = OrbifoldSpec::plane_arithmetic(2 * pi, 2 * pi);
    for (int i = 0; i < 100; ++i) {
        const std::complex<double> b{box(rng), box(rng)}, c{box(rng), box(rng)};
        const std::complex<double> w{box(rng), box(rng)};
        if (std::abs(b) < 0.1 || std::abs(c) < 0.1 || std::abs(b - c) < 0.1) continue;
        const double v = density_lower_222({0, 0}, b, c, w);
        const double vc = density_lower_222({0, 0}, std::conj(b), std::conj(c), std::conj(w));
        CHECK(v == doctest::Approx(vc).epsilon(1e-10));

        const std::complex<double> z{10.0 + std::abs(box(rng)), box(rng)};
        CHECK(density_lower_geometric_marks(seq, 2.0, z).lower ==
              doctest::Approx(density_lower_geometric_marks(seq, 2.0, std::conj(z)).lower).epsilon(1e-10));
    }
}

TEST_CASE("density_lower_geometric_marks selection windows for marks 2 pi n, K=2") {
    auto seq = OrbifoldSpec::plane_arithmetic(2 * pi, 2 * pi);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> logr(std::log(10.0), std::log(1e6));
    for (int i = 0; i < 50; ++i) {
        const double az = std::exp(logr(rng));
        auto t2 = density_lower_geometric_marks(seq, 2.0, {az, 0});
        CHECK(t2.windows_ok);
        CHECK(t2.lower > 0);
        const double ab = std::abs(t2.b), ac = std::abs(t2.c);
        CHECK(ab >= 2 * az);
        CHECK(ab <= 4 * az);
        CHECK(ac >= 4 * az);
        CHECK(ac <= 16 * az);
    }
    // Finite list too short to select c.
    auto small = OrbifoldSpec::plane_marks({{{10, 0}, 2}, {{12, 0}, 2}});
    CHECK_THROWS(density_lower_geometric_marks(small, 2.0, {4.0, 0}));
}

TEST_CASE("m(K): |z| * bound stays above a positive constant") {
    auto seq = OrbifoldSpec::plane_arithmetic(2 * pi, 2 * pi);
    double lo = 1e300;
    for (int i = 0; i < 30; ++i) {
        const double az = 10.0 * std::pow(1e5, i / 29.0);
        lo = std::min(lo, density_lower_geometric_marks(seq, 2.0, {az, 0}).lower * az);
    }
    CHECK(lo > 0.01);
}

TEST_CASE("disk complement density: exact values and monotonicity") {
    CHECK(density_upper_disk_complement(4.0, {4 * std::exp(1.0), 0}) ==
          doctest::Approx(1.0 / (4 * std::exp(1.0))).epsilon(1e-14));
    CHECK(density_upper_disk_complement(4.0, {400, 0}) ==
          doctest::Approx(1.0 / (400 * std::log(100.0))).epsilon(1e-14));
    double prev = 1e300;
    for (double r : {11.0, 20.0, 100.0, 1e4}) {
        const double v = density_upper_disk_complement(4.0, {r, 0});
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(density_upper_disk_complement(4.0, {4.0001, 0}), std::domain_error);
}

TEST_CASE("Pick monotonicity along the same chain family") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> box(-15.0, 15.0);
    // Refining marks pi*Z vs 2*pi*Z: the heavier orbifold has the larger
    // density; in chain terms 2*LB(2z) >= LB(z).
    for (int i = 0; i < 300; ++i) {
        const std::complex<double> z(box(rng), box(rng));
        const double coarse = density_lower_O0(z, ExpConvention::ExpI);
        const double fine = 2.0 * density_lower_O0(2.0 * z, ExpConvention::ExpI);
        CHECK(fine >= coarse * (1.0 - 1e-12));
    }
    // Shrinking the domain raises the density: upper bounds ordered in r.
    for (int i = 0; i < 100; ++i) {
        const double az = 30.0 + std::abs(box(rng));
        CHECK(density_upper_disk_complement(8.0, {az, 0}) >=
              density_upper_disk_complement(4.0, {az, 0}));
    }
}

TEST_CASE("expansion bound values and growth") {
    const auto f = CosineParams::pi_sinh();
    const auto e20 = expansion_lower_bound(f, {20, 0}, 8.0);
    CHECK(e20.certifies);
    CHECK(e20.value > 1.0);
    const auto e100 = expansion_lower_bound(f, {100, 0}, 8.0);
    const auto e1000 = expansion_lower_bound(f, {1000, 0}, 8.0);
    CHECK(e1000.value > e100.value);
    CHECK_THROWS_AS(expansion_lower_bound(f, {0.5, 0}, 8.0), std::domain_error);

    const auto cert = expansion_certificate(f, 8.0);
    CHECK(cert.E_est >= 1.05);
    CHECK(cert.min_bound > 1.0);
}

TEST_CASE("bound table CSV shape") {
    auto csv = bound_table_csv({{{1.0, 2.0}, 0.25, 0.5, "O0-exp"}});
    CHECK(csv.substr(0, 27) == "re,im,lower,upper,chain_id\n");
    CHECK(csv.find("O0-exp") != std::string::npos);
}

TEST_SUITE_END();
