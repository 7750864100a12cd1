#include "doctest.h"

#include "iis/intpoly.hpp"

using iis::IntPoly;
using iis::Rational;

// t^3 - 4t + 1: the cubic whose root in (0,1) drives the thin example
static IntPoly cubic() { return IntPoly::from_longs({1, -4, 0, 1}); }

TEST_CASE("evaluation and signs") {
    IntPoly p = cubic();
    CHECK(p.degree() == 3);
    CHECK(p.sign_at(Rational(0)) == 1);
    CHECK(p.sign_at(Rational(1)) == -1);
    CHECK(p.sign_at(Rational(2)) == 1);
    CHECK(p.eval(Rational(1, 2)) == Rational(-7, 8));
}

TEST_CASE("exact division") {
    // (t-1)(t^3-4t+1) = t^4 - t^3 - 4t^2 + 5t - 1
    IntPoly quartic = IntPoly::from_longs({-1, 5, -4, -1, 1});
    IntPoly linear = IntPoly::from_longs({-1, 1});
    CHECK(quartic.divide_exact(linear).coeffs() == cubic().coeffs());
    CHECK_THROWS(quartic.divide_exact(IntPoly::from_longs({1, 1})));
}

TEST_CASE("squarefree part strips repeated factors") {
    // (t-1)^2 (t+2) = t^3 - 3t + 2
    IntPoly p = IntPoly::from_longs({2, -3, 0, 1});
    IntPoly sf = p.squarefree_part();
    CHECK(sf.degree() == 2);
    CHECK(sf.sign_at(Rational(1)) == 0);
    CHECK(sf.sign_at(Rational(-2)) == 0);
}

TEST_CASE("real root isolation") {
    auto roots = iis::isolate_real_roots(cubic());
    REQUIRE(roots.size() == 3);
    // each isolating interval brackets a sign change
    for (const auto& [lo, hi] : roots) {
        CHECK(lo < hi);
        CHECK(cubic().sign_at(lo) * cubic().sign_at(hi) < 0);
    }
    CHECK(iis::count_roots(cubic(), Rational(0), Rational(1)) == 1);
    CHECK(iis::count_roots(cubic(), Rational(1), Rational(2)) == 1);
    CHECK(iis::count_roots(cubic(), Rational(-3), Rational(0)) == 1);
}

TEST_CASE("quartic factoring finds the rational root") {
    IntPoly quartic = IntPoly::from_longs({-1, 5, -4, -1, 1});
    auto factors = iis::factor_upto_quartic(quartic);
    bool has_linear = false, has_cubic = false;
    for (const auto& f : factors) {
        if (f.degree() == 1) has_linear = true;
        if (f.degree() == 3 && f.coeffs() == cubic().coeffs()) has_cubic = true;
    }
    CHECK(has_linear);
    CHECK(has_cubic);
}
