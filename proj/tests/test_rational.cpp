#include "doctest.h"

#include "iis/field.hpp"
#include "iis/rational.hpp"

using iis::Rational;

TEST_CASE("rational arithmetic is exact and canonical") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(4, 8) == Rational(1, 2));
    CHECK(-a == Rational(-1, 3));
    CHECK(a.sign() == 1);
    CHECK((-a).sign() == -1);
    CHECK(Rational(0).sign() == 0);
}

TEST_CASE("parse and str round-trip") {
    for (const char* s : {"0", "7", "-3", "22/7", "-22/7", "100000000000000000001/3"}) {
        Rational r = Rational::parse(s);
        CHECK(Rational::parse(r.str()) == r);
    }
    CHECK(Rational::parse("4/8") == Rational(1, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("floor and integrality") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(6, 3).floor() == 2);
    CHECK(Rational(6, 3).is_integer());
    CHECK_FALSE(Rational(7, 2).is_integer());
}

TEST_CASE("floor_div and scale helpers") {
    using iis::floor_div;
    using iis::scale;
    CHECK(floor_div(Rational(7), Rational(2)) == 3);
    CHECK(floor_div(Rational(-7), Rational(2)) == -4);
    CHECK(floor_div(Rational(5, 3), Rational(1, 3)) == 5);
    CHECK(scale(Rational(1, 3), 6) == Rational(2));
    CHECK(scale(Rational(1, 3), -3) == Rational(-1));
}

TEST_CASE("ordering is total and strict") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 4) <= Rational(1, 2));
    CHECK(Rational(2, 4) >= Rational(1, 2));
}
