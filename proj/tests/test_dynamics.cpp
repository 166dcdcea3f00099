#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "brush/dynamics.hpp"

using namespace brush::dynamics;
using brush::model::ExternalAddress;
using brush::model::sym_L;
using brush::model::sym_R;
using std::numbers::pi;

TEST_SUITE_BEGIN("dynamics");

static const CosineParams kPiSinh = CosineParams::pi_sinh();

TEST_CASE("evaluate at the standard points") {
    CHECK(std::abs(evaluate(kPiSinh, {0, 0})) < 1e-15);
    CHECK(std::abs(evaluate(kPiSinh, {0, pi / 2}) - complex(0, pi)) < 1e-12);
    CHECK(std::abs(evaluate(kPiSinh, {0, pi})) < 1e-12);
}

TEST_CASE("singular values are +-2 sqrt(ab)") {
    auto [v1, v2] = singular_values(kPiSinh);
    CHECK(std::abs(v1 - complex(0, pi)) < 1e-12);
    CHECK(std::abs(v2 + complex(0, pi)) < 1e-12);
    auto [w1, w2] = singular_values({complex(1, 0), complex(1, 0)});
    CHECK(std::abs(w1 - 2.0) < 1e-12);
    CHECK(std::abs(w2 + 2.0) < 1e-12);
    auto [u1, u2] = singular_values(CosineParams::disjoint_sinh(0.5));
    CHECK(std::abs(u1 - complex(0, 0.5)) < 1e-12);
    CHECK(std::abs(u2 + complex(0, 0.5)) < 1e-12);
}

TEST_CASE("strip lookup and boundary errors") {
    CHECK(strip_of({1, 0}).symbol == sym_R(0));
    CHECK(strip_of({-2, pi}).symbol == sym_L(1));
    CHECK(strip_of({3, -4 * pi}).symbol == sym_R(-4));
    CHECK_THROWS_AS(strip_of({0.0, 1.0}), StripBoundaryError);
    CHECK_THROWS_AS(strip_of({1.0, pi / 2}), StripBoundaryError);
}

TEST_CASE("inverse branch closed-form value") {
    // pi*sinh(z) = pi in the base strip: z = asinh(1) = log(1+sqrt(2)).
    auto r = inverse_branch(kPiSinh, {sym_R(0)}, {pi, 0});
    CHECK(r.z.real() == doctest::Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-12));
    CHECK(std::abs(r.z.imag()) < 1e-12);
    CHECK(r.z.real() == doctest::Approx(0.881374).epsilon(1e-5));
}

TEST_CASE("inverse branch round trips at sampled strip points") {
    auto w1 = evaluate(kPiSinh, {1.0, 0.0});
    CHECK(std::abs(inverse_branch(kPiSinh, {sym_R(0)}, w1).z - complex(1, 0)) < 1e-12);
    const complex z0{-1.0, pi};
    auto w2 = evaluate(kPiSinh, z0);
    CHECK(std::abs(inverse_branch(kPiSinh, {sym_L(1)}, w2).z - z0) < 1e-12);
}

TEST_CASE("round-trip property over random strips and targets") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> logmag(0.0, std::log(1e6));
    std::uniform_real_distribution<double> ang(-pi, pi);
    std::uniform_int_distribution<int> n(-5, 5), side(0, 1);
    int done = 0;
    for (int i = 0; i < 10000; ++i) {
        const complex w = std::polar(std::exp(logmag(rng)), ang(rng));
        StripIndex s{side(rng) ? sym_R(n(rng)) : sym_L(n(rng))};
        try {
            auto r = inverse_branch(kPiSinh, s, w);
            ++done;
            CHECK(r.residual < 1e-12);
            // Strict strip containment with guard.
            const double y = r.z.imag() / pi;
            const double nn = double(s.symbol.index);
            CHECK(y > nn - 0.5 + 1e-9 / pi);
            CHECK(y < nn + 0.5 - 1e-9 / pi);
            CHECK((s.symbol.side == brush::model::Symbol::Side::R ? r.z.real() > 0
                                                                  : r.z.real() < 0));
        } catch (const BranchError&) {
            // Wrong half-plane for the requested strip parity: expected for
            // about half of the draws.
        }
    }
    CHECK(done > 3000);
}

TEST_CASE("escape classification basics") {
    CHECK(escape_classify(kPiSinh, {0, 0}, 50, 64).kind == EscapeKind::Bounded);
    auto esc = escape_classify(kPiSinh, {5, 0}, 50, 64);
    CHECK(esc.kind == EscapeKind::Escaping);
    CHECK(esc.n <= 5);
    // i pi/2 -> i pi -> 0 -> 0 ...
    CHECK(escape_classify(kPiSinh, {0, pi / 2}, 50, 64).kind == EscapeKind::Bounded);
    CHECK_THROWS(escape_classify(kPiSinh, {0, 0}, 2.0, 64));
}

TEST_CASE("the (0R)~ ray is the positive real axis") {
    auto zero = ExternalAddress::periodic({sym_R(0)});
    for (double t : {0.3, 1.0, 2.5, 6.0, 20.0}) {
        auto p = trace_ray(kPiSinh, zero, t);
        CHECK(std::abs(p.z.imag()) < 1e-9);
        CHECK(p.z.real() > 0);
    }
    // Same for the disjoint-type representative (g maps R to R).
    auto g = CosineParams::disjoint_sinh(0.5);
    auto p = trace_ray(g, zero, 2.0);
    CHECK(std::abs(p.z.imag()) < 1e-9);
    CHECK(p.z.real() > 0);
}

TEST_CASE("trace precondition requires t above the endpoint potential") {
    auto one = ExternalAddress::periodic({sym_R(2)});
    const double ts = brush::model::potential_boundary_value(one);
    CHECK_THROWS_AS(trace_ray(kPiSinh, one, ts * 0.5), RayError);
}

TEST_CASE("traced rays of mirrored addresses are conjugate") {
    // For real lambda the family commutes with conjugation; mirroring the
    // address (n_X -> (-n)_X) mirrors the ray across the real axis.
    auto addr = ExternalAddress::periodic({sym_R(2)});
    auto mirr = ExternalAddress::periodic({sym_R(-2)});
    for (double t : {1.0, 3.0}) {
        auto a = trace_ray(kPiSinh, addr, t + brush::model::potential_boundary_value(addr));
        auto b = trace_ray(kPiSinh, mirr, t + brush::model::potential_boundary_value(mirr));
        CHECK(std::abs(a.z - std::conj(b.z)) < 1e-9);
    }
}

TEST_CASE("odd symmetry: negating the plane mirrors the address") {
    // -g(z) = g(-z); the strip of -z is the side-flipped, index-negated
    // strip, so rays of mirrored addresses are point reflections.
    auto addr = ExternalAddress::periodic({sym_R(2)});
    auto mirr = ExternalAddress::periodic({sym_L(-2)});
    const double ts = brush::model::potential_boundary_value(addr);
    for (double dt : {0.5, 2.0}) {
        auto a = trace_ray(kPiSinh, addr, ts + dt);
        auto b = trace_ray(kPiSinh, mirr, ts + dt);
        CHECK(std::abs(a.z + b.z) < 1e-9);
    }
}

TEST_CASE("one-step commutation with the shift") {
    auto addr = ExternalAddress::periodic({sym_R(2)});
    const double ts = brush::model::potential_boundary_value(addr);
    auto p = trace_ray(kPiSinh, addr, ts + 0.8);
    auto img = evaluate(kPiSinh, p.z);
    CHECK(strip_of(img).symbol == addr.entry(1));
}

TEST_CASE("landing of the zero ray and a pinched quadruple pair") {
    auto zero = ExternalAddress::periodic({sym_R(0)});
    auto l = landing_point(kPiSinh, zero, 1e-7);
    CHECK(std::abs(l.z) < 1e-6);
}

TEST_CASE("disjoint type certificate examples") {
    auto g = CosineParams::disjoint_sinh(0.5);
    auto cert = certify_disjoint_type(g, 1.0);
    CHECK(cert.ok);
    CHECK(cert.max_modulus - cert.padding ==
          doctest::Approx(0.5 * std::sinh(1.0)).epsilon(1e-6));
    CHECK(cert.max_modulus == doctest::Approx(0.58760).epsilon(1e-3));

    CHECK_FALSE(certify_disjoint_type(kPiSinh, 1.0).ok);  // pi*sinh(1) > 1
    // Radius below the singular values: containment fails.
    CHECK_FALSE(certify_disjoint_type(g, 0.3).singular_values_inside);
    CHECK_FALSE(certify_disjoint_type(g, 0.3).ok);
}

TEST_CASE("certificate is monotone in lambda") {
    // Passing at lambda = 0.5 implies passing for every smaller lambda.
    REQUIRE(certify_disjoint_type(CosineParams::disjoint_sinh(0.5), 1.0).ok);
    for (double lam : {0.4, 0.25, 0.1, 0.05})
        CHECK(certify_disjoint_type(CosineParams::disjoint_sinh(lam), 1.0).ok);
}

TEST_CASE("marked preimage sequence from one log-branch family") {
    auto seq = marked_preimage_sequence(kPiSinh, {pi, 0}, brush::model::Symbol::Side::R, 3);
    REQUIRE(seq.points.size() == 3);
    const double base = std::log(1.0 + std::sqrt(2.0));
    CHECK(std::abs(seq.points[0] - complex(base, 0)) < 1e-12);
    CHECK(std::abs(seq.points[1] - complex(base, 2 * pi)) < 1e-12);
    CHECK(std::abs(seq.points[2] - complex(base, 4 * pi)) < 1e-12);
    for (size_t i = 0; i + 1 < seq.points.size(); ++i)
        CHECK(std::abs(seq.points[i]) < std::abs(seq.points[i + 1]));
    CHECK(seq.ratio_bound <= 8.0);
    CHECK_THROWS(marked_preimage_sequence(kPiSinh, {0, pi}, brush::model::Symbol::Side::R, 3));
}

TEST_CASE("fundamental domain labels witness disconnectedness") {
    auto g = CosineParams::disjoint_sinh(0.5);
    auto split = fundamental_domain_split(g, 1.0);
    CHECK(split.label({5, 0}).symbol == sym_R(0));
    CHECK(split.label({-5, 0}).symbol == sym_L(0));
    CHECK_THROWS_AS(split.label({0.5, 0}), std::domain_error);
    // A preimage of the disk: 0.5*sinh(z) small near z = 0.
    CHECK_THROWS_AS(split.label({1.2, 0}), std::domain_error);
}

TEST_CASE("address realizability chain") {
    CHECK(address_realizable(ExternalAddress::periodic({sym_R(0)})));
    CHECK(address_realizable(ExternalAddress::periodic({sym_R(2)})));
    CHECK_FALSE(address_realizable(ExternalAddress::periodic({sym_R(1)})));
    CHECK(address_realizable(
        ExternalAddress({sym_R(0), sym_R(1), sym_L(1)}, {sym_R(0)})));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        auto a = random_realizable_address(rng(), i % 3, 1 + i % 4, 3);
        CAPTURE(brush::model::to_string(a));
        CHECK(address_realizable(a));
    }
}

TEST_CASE("ray CSV format") {
    auto zero = ExternalAddress::periodic({sym_R(0)});
    auto ray = trace_ray_grid(kPiSinh, zero, {1.0, 2.0});
    auto csv = ray_csv(ray);
    CHECK(csv.substr(0, 17) == "t,re,im,residual\n");
    CHECK(ray.samples.size() == 2);
    CHECK(ray.samples[0].t > ray.samples[1].t);  // sorted by decreasing t
}

TEST_SUITE_END();
