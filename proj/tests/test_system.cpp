#include "doctest.h"

#include <algorithm>

#include "iis/errors.hpp"
#include "iis/system.hpp"

using namespace iis;

static SymmetricParams<Rational> P(long a, long b, long c, long un, long ud = 1) {
    return {Rational(a), Rational(b), Rational(c), Rational(un, ud)};
}

TEST_CASE("special symmetric build: shape and invariants") {
    auto s = build_special_symmetric(P(10, 4, 1, 2));
    CHECK(s.order() == 3);
    CHECK(s.support.lo == Rational(0));
    CHECK(s.support.hi == Rational(15));
    CHECK(is_balanced(s));
    CHECK(is_symmetric(s));
    CHECK(coverage_gaps(s).empty());

    // pair a: [0,10] <-> [5,15]; pair b: [0,4] <-> [11,15]; pair c: [2,3] <-> [12,13]
    CHECK(s.pairs[0].left == Interval<Rational>{Rational(0), Rational(10)});
    CHECK(s.pairs[0].right == Interval<Rational>{Rational(5), Rational(15)});
    CHECK(s.pairs[1].left == Interval<Rational>{Rational(0), Rational(4)});
    CHECK(s.pairs[1].right == Interval<Rational>{Rational(11), Rational(15)});
    CHECK(s.pairs[2].left == Interval<Rational>{Rational(2), Rational(3)});
    CHECK(s.pairs[2].right == Interval<Rational>{Rational(12), Rational(13)});
}

TEST_CASE("critical points") {
    auto s = build_special_symmetric(P(10, 4, 1, 2));
    auto crit = critical_points(s);
    std::vector<Rational> expect{Rational(0),  Rational(2),  Rational(3),  Rational(4),
                                 Rational(5),  Rational(10), Rational(11), Rational(12),
                                 Rational(13), Rational(15)};
    CHECK(crit == expect);
}

TEST_CASE("coverage gap appears when the middle is uncovered") {
    auto s = build_special_symmetric(
        SymmetricParams<Rational>{Rational(4), Rational(3), Rational(2), Rational(1, 2)});
    auto gaps = coverage_gaps(s);
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0].lo == Rational(4));
    CHECK(gaps[0].hi == Rational(5));
}

TEST_CASE("orbit of a gap point is finite") {
    auto s = build_special_symmetric(
        SymmetricParams<Rational>{Rational(4), Rational(3), Rational(2), Rational(1, 2)});
    auto res = orbit(s, Rational(9, 2));
    CHECK(res.status == OrbitStatus::exhausted);
    CHECK(res.points == std::vector<Rational>{Rational(9, 2)});
}

TEST_CASE("orbit of a covered point grows and respects the cap") {
    auto s = build_special_symmetric(P(10, 4, 1, 2));
    auto res = orbit(s, Rational(1), 8);
    CHECK(res.status == OrbitStatus::truncated);
    CHECK(res.points.size() >= 8);
    CHECK(std::is_sorted(res.points.begin(), res.points.end()));
    CHECK_THROWS_AS(orbit(s, Rational(99)), std::invalid_argument);
}

TEST_CASE("params_of inverts the build") {
    auto p = P(10, 4, 1, 2);
    CHECK(params_of(build_special_symmetric(p)) == p);
    // the reflected placement u -> a+b-u yields the same canonical tuple
    auto q = P(10, 4, 1, 12);
    CHECK(params_of(build_special_symmetric(q)) == p);
}

TEST_CASE("degenerate placements are rejected") {
    CHECK_THROWS_AS(build_special_symmetric(P(10, 4, 1, 0)), std::invalid_argument);
    CHECK_THROWS_AS(build_special_symmetric(P(10, 4, -1, 2)), std::invalid_argument);
}

TEST_CASE("integer-relation screen: fast path agrees with the generic scan") {
    auto p = P(10, 4, 1, 2);
    auto fast = genericity_warnings(p, 3);
    auto slow = genericity_warnings<Rational>(p, 3);
    CHECK(fast == slow);
    CHECK_FALSE(fast.empty());  // a = 2b + 2c, c = u - 1, ... plenty of relations

    SymmetricParams<Rational> generic{Rational(10), Rational(4, 3), Rational(1, 7),
                                      Rational(2, 11)};
    CHECK(genericity_warnings(generic, 3) == genericity_warnings<Rational>(generic, 3));
}
