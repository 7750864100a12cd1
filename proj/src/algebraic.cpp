#include "iis/algebraic.hpp"

#include <stdexcept>

namespace iis {

AlgebraicReal::AlgebraicReal(IntPoly minimal_poly, Rational lo, Rational hi)
    : poly_(std::move(minimal_poly)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (!(lo_ < hi_)) throw std::invalid_argument("AlgebraicReal: empty interval");
    if (poly_.degree() < 1) throw std::invalid_argument("AlgebraicReal: constant polynomial");
    // an irreducible polynomial has simple roots, so the isolating interval
    // must show a sign change
    if (poly_.sign_at(lo_) * poly_.sign_at(hi_) >= 0)
        throw std::invalid_argument("AlgebraicReal: no sign change on the interval");
}

AlgebraicReal AlgebraicReal::refined() const {
    Rational mid = midpoint();
    int sm = poly_.sign_at(mid);
    if (sm == 0) {
        // the root is exactly mid (possible only for a linear polynomial);
        // shrink symmetrically so the sign change is preserved
        Rational w = (hi_ - lo_) / Rational(4);
        return AlgebraicReal(poly_, mid - w, mid + w);
    }
    if (sm == poly_.sign_at(lo_)) return AlgebraicReal(poly_, mid, hi_);
    return AlgebraicReal(poly_, lo_, mid);
}

AlgebraicReal AlgebraicReal::refined_below(const Rational& eps) const {
    AlgebraicReal r = *this;
    while (!(r.width() < eps)) r = r.refined();
    return r;
}

}  // namespace iis
