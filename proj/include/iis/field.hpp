#pragma once

// Shared interface for the two coefficient fields the engine runs over:
// plain rationals and elements of a real number field.  Everything above
// this layer is templated on F and only uses the operations checked here.

#include <concepts>
#include <string>

#include <gmpxx.h>

#include "iis/numberfield.hpp"
#include "iis/rational.hpp"

namespace iis {

template <typename F>
concept ExactOrderedField = requires(const F a, const F b, F m) {
    F(0);
    F(1);
    { a + b } -> std::convertible_to<F>;
    { a - b } -> std::convertible_to<F>;
    { a * b } -> std::convertible_to<F>;
    { a / b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
    m += a;
    m -= a;
    { a == b } -> std::convertible_to<bool>;
    { a < b } -> std::convertible_to<bool>;
    { a <= b } -> std::convertible_to<bool>;
    { a.sign() } -> std::convertible_to<int>;
    { a.floor() } -> std::convertible_to<mpz_class>;
    { a.to_double() } -> std::convertible_to<double>;
    { a.str() } -> std::convertible_to<std::string>;
};

static_assert(ExactOrderedField<Rational>);
static_assert(ExactOrderedField<NFElem>);

// floor(a / b) as a plain machine integer; the iteration counts this feeds
// are tiny compared to the parameter heights, so the narrowing is checked
template <ExactOrderedField F>
long floor_div(const F& a, const F& b) {
    mpz_class q = (a / b).floor();
    if (!q.fits_slong_p()) throw std::overflow_error("floor_div: quotient out of range");
    return q.get_si();
}

// a * n for a machine-integer scale, without requiring F(long)
template <ExactOrderedField F>
F scale(const F& a, long n) {
    F acc(0);
    bool negate = n < 0;
    unsigned long k = negate ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    F base = a;
    while (k) {
        if (k & 1) acc += base;
        base += base;
        k >>= 1;
    }
    return negate ? -acc : acc;
}

template <ExactOrderedField F>
F min(const F& a, const F& b) {
    return a < b ? a : b;
}

template <ExactOrderedField F>
F max(const F& a, const F& b) {
    return a < b ? b : a;
}

}  // namespace iis
