#ifndef IIS_INTPOLY_HPP
#define IIS_INTPOLY_HPP

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "iis/rational.hpp"

namespace iis {

// Polynomial with arbitrary-precision integer coefficients, lowest degree
// first.  The zero polynomial is the empty coefficient vector; otherwise the
// leading coefficient is nonzero.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    static IntPoly from_longs(const std::vector<long>& coeffs);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& leading() const { return c_.back(); }
    mpz_class coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : mpz_class(0);
    }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    IntPoly operator-() const;
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);

    IntPoly derivative() const;

    // gcd of all coefficients (positive; 0 for the zero polynomial)
    mpz_class content() const;
    bool is_primitive() const { return content() == 1; }
    // divide out the content, keeping the leading coefficient positive
    IntPoly primitive_part() const;

    Rational eval(const Rational& x) const;
    int sign_at(const Rational& x) const { return eval(x).sign(); }

    // exact division; throws if the remainder is nonzero
    IntPoly divide_exact(const IntPoly& d) const;

    // largest-degree squarefree divisor (primitive), via gcd with the derivative
    IntPoly squarefree_part() const;

    std::string str() const;  // human-readable, e.g. "t^3 - 4*t + 1"

private:
    void trim();
    std::vector<mpz_class> c_;
};

// Disjoint open isolating intervals with rational endpoints, one per distinct
// real root, sorted increasingly.  Computed with a Sturm chain and bisection.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const IntPoly& p);

// number of distinct real roots in (lo, hi], by Sturm sign variations
int count_roots(const IntPoly& squarefree, const Rational& lo, const Rational& hi);

// Exact factorization into irreducible (primitive, positive-leading) factors
// with multiplicity 1 in the list per occurrence; supports degree <= 4 only.
// Uses the rational root test plus an integer search for quadratic factor
// pairs of monic-content quartics.
std::vector<IntPoly> factor_upto_quartic(const IntPoly& p);

}  // namespace iis

#endif
