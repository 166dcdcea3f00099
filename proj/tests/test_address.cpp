#include "doctest.h"

#include "brush/address.hpp"

using namespace brush::model;

TEST_SUITE_BEGIN("address");

TEST_CASE("symbol order embeds i_L < i_R < (i+1)_L") {
    CHECK(sym_L(3) < sym_R(3));
    CHECK(sym_R(3) < sym_L(4));
    CHECK(sym_R(-1) < sym_L(0));
    CHECK(sym_L(0) < sym_R(0));
}

TEST_CASE("symbol text round trip") {
    for (auto s : {sym_R(0), sym_L(-2), sym_R(17), sym_L(1000000)}) {
        CHECK(parse_symbol(to_string(s)) == s);
    }
    CHECK_THROWS(parse_symbol("3X"));
    CHECK_THROWS(parse_symbol("R"));
}

TEST_CASE("period is reduced to its primitive root") {
    ExternalAddress a({}, {sym_R(1), sym_L(2), sym_R(1), sym_L(2)});
    CHECK(a.period().size() == 2);
    CHECK(a == ExternalAddress({}, {sym_R(1), sym_L(2)}));
}

TEST_CASE("absorbable preperiod suffix folds into the period") {
    // 1R (0R 1R)~ represents the same sequence as (1R 0R)~.
    ExternalAddress a({sym_R(1)}, {sym_R(0), sym_R(1)});
    ExternalAddress b({}, {sym_R(1), sym_R(0)});
    CHECK(a == b);
    CHECK(a.preperiod().empty());
}

TEST_CASE("entry indexing is preperiod then cyclic period") {
    ExternalAddress a({sym_R(5)}, {sym_L(1), sym_R(2)});
    CHECK(a.entry(0) == sym_R(5));
    CHECK(a.entry(1) == sym_L(1));
    CHECK(a.entry(2) == sym_R(2));
    CHECK(a.entry(3) == sym_L(1));
    CHECK(a.entry(42) == a.entry(42 % 2 == 0 ? 2 : 1));
}

TEST_CASE("shift drops the first entry") {
    ExternalAddress a({sym_R(5)}, {sym_L(1), sym_R(2)});
    auto s = a.shifted();
    for (size_t i = 0; i < 8; ++i) CHECK(s.entry(i) == a.entry(i + 1));
    // Shifting a periodic address rotates the period.
    ExternalAddress p({}, {sym_L(1), sym_R(2)});
    CHECK(p.shifted() == ExternalAddress({}, {sym_R(2), sym_L(1)}));
}

TEST_CASE("lexicographic comparison") {
    ExternalAddress zl({}, {sym_L(0)});
    ExternalAddress zr({}, {sym_R(0)});
    CHECK(zl < zr);
    CHECK(zl == zl);
    // Compare at index 1: (1R,(0R)~) vs (1R,(0L)~).
    ExternalAddress a({sym_R(1)}, {sym_R(0)});
    ExternalAddress b({sym_R(1)}, {sym_L(0)});
    CHECK(b < a);
}

TEST_CASE("address text round trip") {
    for (const char* text : {"|0R", "1R|0R", "0R,1R,1L|0R", "-2L,3R|1L,1R"}) {
        auto a = parse_address(text);
        CHECK(parse_address(to_string(a)) == a);
    }
    // A bar-less string is a pure period.
    CHECK(parse_address("2R") == ExternalAddress::periodic({sym_R(2)}));
}

TEST_CASE("zero-constant tails are recognized after canonicalization") {
    CHECK(ExternalAddress({sym_R(1)}, {sym_R(0)}).tail_is_zero_constant());
    CHECK(ExternalAddress({}, {sym_L(0)}).tail_is_zero_constant());
    CHECK_FALSE(ExternalAddress({}, {sym_R(1)}).tail_is_zero_constant());
    CHECK_FALSE(ExternalAddress({}, {sym_R(0), sym_L(1)}).tail_is_zero_constant());
}

TEST_CASE("itinerary canonicalization mirrors addresses") {
    Itinerary it({{3, 1}}, {{0, 1}, {0, 1}});
    CHECK(it.period().size() == 1);
    CHECK(it.entry(0) == ItineraryEntry{3, 1});
    CHECK(it.entry(5) == ItineraryEntry{0, 1});
}

TEST_SUITE_END();
