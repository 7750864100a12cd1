#include "iis/numberfield.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace iis {

namespace {

int rat_deg(const std::vector<Rational>& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != Rational(0)) return i;
    return -1;
}

}  // namespace

NumberField::NumberField(AlgebraicReal generator)
    : gen_(std::move(generator)),
      deg_(gen_.minimal_poly().degree()),
      lo_(gen_.lo()),
      hi_(gen_.hi()) {
    const auto& ic = gen_.minimal_poly().coeffs();
    Rational lead = Rational(ic.back());
    monic_.reserve(ic.size());
    for (const auto& c : ic) monic_.push_back(Rational(c) / lead);
}

std::pair<Rational, Rational> NumberField::interval() const {
    std::lock_guard<std::mutex> g(mu_);
    return {lo_, hi_};
}

void NumberField::refine_once_locked() const {
    Rational mid = (lo_ + hi_) / Rational(2);
    int sm = gen_.minimal_poly().sign_at(mid);
    if (sm == 0) {
        Rational w = (hi_ - lo_) / Rational(4);
        lo_ = mid - w;
        hi_ = mid + w;
        return;
    }
    if (sm == gen_.minimal_poly().sign_at(lo_))
        lo_ = mid;
    else
        hi_ = mid;
}

std::pair<Rational, Rational> NumberField::refine_below(const Rational& eps) const {
    std::lock_guard<std::mutex> g(mu_);
    while (!(hi_ - lo_ < eps)) refine_once_locked();
    return {lo_, hi_};
}

NumberField::Coeffs NumberField::add(const Coeffs& a, const Coeffs& b) const {
    Coeffs c(deg_, Rational(0));
    for (int i = 0; i < deg_; ++i) c[i] = a[i] + b[i];
    return c;
}

NumberField::Coeffs NumberField::sub(const Coeffs& a, const Coeffs& b) const {
    Coeffs c(deg_, Rational(0));
    for (int i = 0; i < deg_; ++i) c[i] = a[i] - b[i];
    return c;
}

NumberField::Coeffs NumberField::neg(const Coeffs& a) const {
    Coeffs c(deg_, Rational(0));
    for (int i = 0; i < deg_; ++i) c[i] = -a[i];
    return c;
}

NumberField::Coeffs NumberField::mul(const Coeffs& a, const Coeffs& b) const {
    std::vector<Rational> prod(2 * deg_ - 1, Rational(0));
    for (int i = 0; i < deg_; ++i)
        for (int j = 0; j < deg_; ++j) prod[i + j] += a[i] * b[j];
    // fold t^i for i >= deg via t^deg = -(monic_[0] + ... + monic_[deg-1] t^(deg-1))
    for (int i = 2 * deg_ - 2; i >= deg_; --i) {
        Rational v = prod[i];
        if (v == Rational(0)) continue;
        prod[i] = Rational(0);
        for (int j = 0; j < deg_; ++j) prod[i - deg_ + j] -= v * monic_[j];
    }
    prod.resize(deg_);
    return prod;
}

NumberField::Coeffs NumberField::inv(const Coeffs& a) const {
    if (rat_deg(a) < 0) throw std::domain_error("NumberField: division by zero");
    // extended Euclid against the minimal polynomial; gcd is a nonzero
    // constant because the modulus is irreducible
    std::vector<Rational> r0 = monic_, r1(a.begin(), a.end());
    r1.resize(deg_ + 1, Rational(0));
    std::vector<Rational> t0(deg_ + 1, Rational(0)), t1(deg_ + 1, Rational(0));
    t1[0] = Rational(1);
    while (rat_deg(r1) > 0) {
        int d0 = rat_deg(r0), d1 = rat_deg(r1);
        while (d0 >= d1) {
            Rational q = r0[d0] / r1[d1];
            int shift = d0 - d1;
            for (int i = 0; i <= d1; ++i) r0[shift + i] -= q * r1[i];
            for (int i = 0; i + shift <= deg_; ++i) t0[shift + i] -= q * t1[i];
            d0 = rat_deg(r0);
        }
        std::swap(r0, r1);
        std::swap(t0, t1);
    }
    Rational unit = r1[rat_deg(r1)];
    Coeffs out(deg_, Rational(0));
    for (int i = 0; i < deg_; ++i) out[i] = t1[i] / unit;
    return out;
}

std::pair<Rational, Rational> NumberField::range(const Coeffs& a, const Rational& lo,
                                                 const Rational& hi) const {
    // interval evaluation: accumulate interval powers of [lo, hi] exactly
    Rational plo(1), phi(1), rlo(0), rhi(0);
    for (int i = 0; i < deg_; ++i) {
        if (i > 0) {
            Rational x1 = plo * lo, x2 = plo * hi, x3 = phi * lo, x4 = phi * hi;
            plo = std::min(std::min(x1, x2), std::min(x3, x4));
            phi = std::max(std::max(x1, x2), std::max(x3, x4));
        }
        const Rational& c = a[i];
        if (c.sign() >= 0) {
            rlo += c * plo;
            rhi += c * phi;
        } else {
            rlo += c * phi;
            rhi += c * plo;
        }
    }
    return {rlo, rhi};
}

int NumberField::sign(const Coeffs& a) const {
    if (rat_deg(a) < 0) return 0;
    std::lock_guard<std::mutex> g(mu_);
    for (;;) {
        auto [rlo, rhi] = range(a, lo_, hi_);
        if (rlo.sign() > 0) return 1;
        if (rhi.sign() < 0) return -1;
        refine_once_locked();
    }
}

mpz_class NumberField::floor(const Coeffs& a) const {
    if (rat_deg(a) <= 0) return (rat_deg(a) < 0 ? Rational(0) : a[0]).floor();
    // a genuinely involves the generator, hence is irrational (the minimal
    // polynomial is irreducible), so refinement separates it from integers
    std::lock_guard<std::mutex> g(mu_);
    for (;;) {
        auto [rlo, rhi] = range(a, lo_, hi_);
        mpz_class flo = rlo.floor(), fhi = rhi.floor();
        if (flo == fhi) return flo;
        refine_once_locked();
    }
}

double NumberField::approx(const Coeffs& a) const {
    // refine well past double precision so the midpoint evaluation is honest
    static const Rational kEps(1, 1L << 60);
    Rational mid;
    {
        std::lock_guard<std::mutex> g(mu_);
        while (!(hi_ - lo_ < kEps)) refine_once_locked();
        mid = (lo_ + hi_) / Rational(2);
    }
    Rational acc(0);
    for (int i = deg_ - 1; i >= 0; --i) acc = acc * mid + a[i];
    return acc.to_double();
}

NFElem::NFElem(std::shared_ptr<const NumberField> fld, NumberField::Coeffs coeffs)
    : fld_(std::move(fld)), c_(std::move(coeffs)), r_(0) {
    if (!fld_) throw std::invalid_argument("NFElem: null field");
    c_.resize(fld_->degree(), Rational(0));
}

NFElem NFElem::generator(const std::shared_ptr<const NumberField>& fld) {
    if (fld->degree() == 1) {
        // Q itself: the generator is the rational root of the linear polynomial
        const auto& c = fld->minimal_poly().coeffs();
        return NFElem(fld, {Rational(c[0]) / Rational(c[1]) * Rational(-1)});
    }
    NumberField::Coeffs c(fld->degree(), Rational(0));
    c[1] = Rational(1);
    return NFElem(fld, std::move(c));
}

NFElem NFElem::from_rational(const std::shared_ptr<const NumberField>& fld, const Rational& r) {
    NumberField::Coeffs c(fld->degree(), Rational(0));
    c[0] = r;
    return NFElem(fld, std::move(c));
}

NumberField::Coeffs NFElem::coeffs_in(const NumberField& f) const {
    if (fld_) {
        if (fld_.get() != &f) throw std::invalid_argument("NFElem: generator mismatch");
        return c_;
    }
    NumberField::Coeffs c(f.degree(), Rational(0));
    c[0] = r_;
    return c;
}

const Rational& NFElem::rational_value() const {
    if (fld_) throw std::logic_error("NFElem: not a plain rational");
    return r_;
}

const std::shared_ptr<const NumberField>& NFElem::join(const NFElem& a, const NFElem& b) {
    static const std::shared_ptr<const NumberField> none;
    if (a.fld_ && b.fld_) {
        if (a.fld_.get() != b.fld_.get())
            throw std::invalid_argument("NFElem: generator mismatch");
        return a.fld_;
    }
    if (a.fld_) return a.fld_;
    if (b.fld_) return b.fld_;
    return none;
}

NFElem NFElem::operator-() const {
    if (!fld_) return NFElem(-r_);
    return NFElem(fld_, fld_->neg(c_));
}

NFElem operator+(const NFElem& a, const NFElem& b) {
    const auto& f = NFElem::join(a, b);
    if (!f) return NFElem(a.r_ + b.r_);
    return NFElem(f, f->add(a.coeffs_in(*f), b.coeffs_in(*f)));
}

NFElem operator-(const NFElem& a, const NFElem& b) {
    const auto& f = NFElem::join(a, b);
    if (!f) return NFElem(a.r_ - b.r_);
    return NFElem(f, f->sub(a.coeffs_in(*f), b.coeffs_in(*f)));
}

NFElem operator*(const NFElem& a, const NFElem& b) {
    const auto& f = NFElem::join(a, b);
    if (!f) return NFElem(a.r_ * b.r_);
    return NFElem(f, f->mul(a.coeffs_in(*f), b.coeffs_in(*f)));
}

NFElem operator/(const NFElem& a, const NFElem& b) {
    const auto& f = NFElem::join(a, b);
    if (!f) return NFElem(a.r_ / b.r_);
    return NFElem(f, f->mul(a.coeffs_in(*f), f->inv(b.coeffs_in(*f))));
}

int NFElem::sign() const {
    if (!fld_) return r_.sign();
    return fld_->sign(c_);
}

mpz_class NFElem::floor() const {
    if (!fld_) return r_.floor();
    return fld_->floor(c_);
}

double NFElem::to_double() const {
    if (!fld_) return r_.to_double();
    return fld_->approx(c_);
}

std::string NFElem::str() const {
    if (!fld_) return r_.str();
    std::ostringstream os;
    for (int i = 0; i < fld_->degree(); ++i) {
        if (i) os << " + ";
        os << "(" << c_[i].str() << ")";
        if (i == 1) os << "*g";
        if (i > 1) os << "*g^" << i;
    }
    return os.str();
}

}  // namespace iis
