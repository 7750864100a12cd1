#ifndef IIS_ALGEBRAIC_HPP
#define IIS_ALGEBRAIC_HPP

#include <utility>

#include "iis/intpoly.hpp"
#include "iis/rational.hpp"

namespace iis {

// A real algebraic number: an irreducible integer polynomial together with a
// rational isolating interval (lo, hi) containing exactly one of its real
// roots.  Values are immutable; refinement returns a new value with the same
// designated root.
class AlgebraicReal {
public:
    AlgebraicReal(IntPoly minimal_poly, Rational lo, Rational hi);

    const IntPoly& minimal_poly() const { return poly_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational midpoint() const { return (lo_ + hi_) / Rational(2); }

    // one bisection step; the designated root never changes
    AlgebraicReal refined() const;
    // bisect until width < eps
    AlgebraicReal refined_below(const Rational& eps) const;

    double approx() const { return midpoint().to_double(); }

private:
    IntPoly poly_;
    Rational lo_, hi_;
};

}  // namespace iis

#endif
