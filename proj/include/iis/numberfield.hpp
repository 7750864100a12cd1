#ifndef IIS_NUMBERFIELD_HPP
#define IIS_NUMBERFIELD_HPP

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "iis/algebraic.hpp"
#include "iis/rational.hpp"

namespace iis {

// The real number field Q(g) for an algebraic generator g.  Elements are
// polynomial residues modulo the (irreducible) minimal polynomial; order
// comparisons refine a shared isolating interval for g.  The shared interval
// is a monotone cache guarded by a mutex: refining it never changes the
// designated root, so concurrent readers stay consistent.
class NumberField {
public:
    explicit NumberField(AlgebraicReal generator);

    int degree() const { return deg_; }
    const IntPoly& minimal_poly() const { return gen_.minimal_poly(); }
    const AlgebraicReal& generator() const { return gen_; }

    // current cached isolating interval (at least as tight as construction)
    std::pair<Rational, Rational> interval() const;
    // tighten the cache below eps and return the result
    std::pair<Rational, Rational> refine_below(const Rational& eps) const;

    // residue arithmetic on coefficient vectors (size = degree, lowest first)
    using Coeffs = std::vector<Rational>;
    Coeffs add(const Coeffs& a, const Coeffs& b) const;
    Coeffs sub(const Coeffs& a, const Coeffs& b) const;
    Coeffs neg(const Coeffs& a) const;
    Coeffs mul(const Coeffs& a, const Coeffs& b) const;
    Coeffs inv(const Coeffs& a) const;  // throws on zero

    // sign of a (nonzero test is exact: zero iff all coefficients are zero)
    int sign(const Coeffs& a) const;
    // exact floor; terminates because the element is either rational or
    // eventually separated from every integer by refinement
    mpz_class floor(const Coeffs& a) const;

    double approx(const Coeffs& a) const;

private:
    // interval bounds of a evaluated over the cached generator interval
    std::pair<Rational, Rational> range(const Coeffs& a, const Rational& lo,
                                        const Rational& hi) const;
    void refine_once_locked() const;

    AlgebraicReal gen_;
    int deg_;
    std::vector<Rational> monic_;  // minimal polynomial made monic, all terms
    mutable std::mutex mu_;
    mutable Rational lo_, hi_;
};

// Element of a NumberField.  A null field pointer means "plain rational
// embedded in whatever field the other operand carries"; this lets generic
// code write F(0) or F(2) without threading a field handle through.
class NFElem {
public:
    NFElem() : r_(0) {}
    NFElem(long n) : r_(n) {}
    NFElem(int n) : r_(n) {}
    explicit NFElem(Rational r) : r_(std::move(r)) {}
    NFElem(std::shared_ptr<const NumberField> fld, NumberField::Coeffs coeffs);

    // the generator g itself
    static NFElem generator(const std::shared_ptr<const NumberField>& fld);
    static NFElem from_rational(const std::shared_ptr<const NumberField>& fld,
                                const Rational& r);

    bool has_field() const { return fld_ != nullptr; }
    const std::shared_ptr<const NumberField>& field() const { return fld_; }
    // coefficient vector in the given field (lifts plain rationals)
    NumberField::Coeffs coeffs_in(const NumberField& f) const;
    // rational value of a field-free element; throws if a field is attached
    const Rational& rational_value() const;

    NFElem operator-() const;
    friend NFElem operator+(const NFElem& a, const NFElem& b);
    friend NFElem operator-(const NFElem& a, const NFElem& b);
    friend NFElem operator*(const NFElem& a, const NFElem& b);
    friend NFElem operator/(const NFElem& a, const NFElem& b);
    NFElem& operator+=(const NFElem& o) { return *this = *this + o; }
    NFElem& operator-=(const NFElem& o) { return *this = *this - o; }
    NFElem& operator*=(const NFElem& o) { return *this = *this * o; }
    NFElem& operator/=(const NFElem& o) { return *this = *this / o; }

    int sign() const;
    friend bool operator==(const NFElem& a, const NFElem& b) { return (a - b).sign() == 0; }
    friend bool operator!=(const NFElem& a, const NFElem& b) { return (a - b).sign() != 0; }
    friend bool operator<(const NFElem& a, const NFElem& b) { return (a - b).sign() < 0; }
    friend bool operator<=(const NFElem& a, const NFElem& b) { return (a - b).sign() <= 0; }
    friend bool operator>(const NFElem& a, const NFElem& b) { return (a - b).sign() > 0; }
    friend bool operator>=(const NFElem& a, const NFElem& b) { return (a - b).sign() >= 0; }

    mpz_class floor() const;
    double to_double() const;
    std::string str() const;  // e.g. "(-1/2) + (7/2)*g + (-3/2)*g^2"

private:
    // resolve the common field of two operands (null if both are rational)
    static const std::shared_ptr<const NumberField>& join(const NFElem& a, const NFElem& b);

    std::shared_ptr<const NumberField> fld_;  // null: plain rational
    NumberField::Coeffs c_;                   // used when fld_ != null
    Rational r_;                              // used when fld_ == null
};

}  // namespace iis

#endif
