#include "doctest.h"

#include "brush/pinching.hpp"

using namespace brush::model;
using brush::dynamics::CosineParams;

TEST_SUITE_BEGIN("pinching");

static const CosineParams kPiSinh = CosineParams::pi_sinh();

TEST_CASE("zero-tail addresses carry no itinerary") {
    CHECK_FALSE(itinerary_of_address(ExternalAddress::periodic({sym_R(0)}), kPiSinh, 8)
                    .has_value());
    CHECK_FALSE(itinerary_of_address(ExternalAddress({sym_R(2), sym_R(2)}, {sym_L(0)}),
                                     kPiSinh, 8)
                    .has_value());
}

TEST_CASE("itinerary of (2R)~ is periodic and consistent across depths") {
    auto it = itinerary_of_address(ExternalAddress::periodic({sym_R(2)}), kPiSinh, 8);
    REQUIRE(it.has_value());
    CHECK(it->preperiod().empty());
    CHECK(it->period().size() == 1);
    // Strip S_2 sits inside Im in (1.5pi, 2.5pi); the ray stays in the upper
    // right U-domain U_{(0,1)} or U_{(1,1)}; pin the traced value.
    auto again = itinerary_of_address(ExternalAddress::periodic({sym_R(2)}), kPiSinh, 16);
    CHECK(*it == *again);
    CHECK(it->entry(0).k == 1);  // right half-plane
}

TEST_CASE("quadruple members are mutually pinched") {
    for (auto quad : {quadruple_left({}, 0, 0), quadruple_right({}, 0, 0),
                      quadruple_left({}, 1, 1), quadruple_right({}, -1, 0)}) {
        REQUIRE(quad.size() == 4);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i + 1; j < 4; ++j) {
                CAPTURE(to_string(quad[i]));
                CAPTURE(to_string(quad[j]));
                CHECK(pinched(quad[i], quad[j], kPiSinh, 12) == Pinched::Yes);
                // Symmetry.
                CHECK(pinched(quad[j], quad[i], kPiSinh, 12) == Pinched::Yes);
            }
    }
}

TEST_CASE("pinched requires distinct addresses") {
    auto a = quadruple_left({}, 0, 0)[0];
    CHECK_THROWS_AS(pinched(a, a, kPiSinh, 8), std::invalid_argument);
}

TEST_CASE("members of different quadruple instances stay undecided") {
    // The listed families are not exhaustive for zero-tail addresses, so
    // cross-instance pairs are never guessed.
    auto q1 = quadruple_left({}, 0, 0);
    auto q2 = quadruple_left({}, 1, 0);
    CHECK(pinched(q1[0], q2[0], kPiSinh, 12) == Pinched::Unknown);
}

TEST_CASE("zero-tail address outside the listed families is undecided") {
    // Tail 0R but the third-to-last entry pattern does not match any row
    // (final entry 2R instead of 1_side).
    ExternalAddress odd({sym_R(0), sym_R(0), sym_R(2)}, {sym_R(0)});
    auto q = quadruple_left({}, 0, 0);
    CHECK(pinched(odd, q[0], kPiSinh, 12) == Pinched::Unknown);
}

TEST_CASE("mixed assigned/unassigned pairs are undecided") {
    auto q = quadruple_left({}, 0, 0);
    auto periodic = ExternalAddress::periodic({sym_R(2)});
    CHECK(pinched(periodic, q[0], kPiSinh, 12) == Pinched::Unknown);
}

TEST_CASE("itineraries differing in an n-component are not pinched") {
    auto a = ExternalAddress::periodic({sym_R(2)});
    auto b = ExternalAddress::periodic({sym_R(4)});
    CHECK(pinched(a, b, kPiSinh, 12) == Pinched::No);
}

TEST_SUITE_END();
