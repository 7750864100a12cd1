#include "iis/intpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace iis {

namespace {

// dense rational polynomial, lowest degree first, used for internal
// division/gcd/Sturm work; kept local to this translation unit
using RatPoly = std::vector<Rational>;

void rtrim(RatPoly& p) {
    while (!p.empty() && p.back() == Rational(0)) p.pop_back();
}

RatPoly to_rat(const IntPoly& p) {
    RatPoly r;
    r.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) r.push_back(Rational(c));
    return r;
}

IntPoly to_int_primitive(const RatPoly& p) {
    // clear denominators, then strip the content
    mpz_class lcm = 1;
    for (const auto& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    std::vector<mpz_class> ic;
    ic.reserve(p.size());
    for (const auto& c : p) ic.push_back(c.num() * (lcm / c.den()));
    return IntPoly(std::move(ic)).primitive_part();
}

Rational eval_rat(const RatPoly& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// polynomial remainder over the rationals
RatPoly rem(RatPoly a, const RatPoly& b) {
    if (b.empty()) throw std::domain_error("poly rem: division by zero polynomial");
    while (a.size() >= b.size()) {
        Rational q = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        rtrim(a);
    }
    return a;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    rtrim(a);
    rtrim(b);
    while (!b.empty()) {
        RatPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    // normalize monic so gcds compare predictably
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// Sturm chain of a squarefree polynomial
std::vector<RatPoly> sturm_chain(const IntPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(to_rat(p));
    chain.push_back(to_rat(p.derivative()));
    rtrim(chain[0]);
    rtrim(chain[1]);
    while (!chain.back().empty()) {
        RatPoly r = rem(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    chain.pop_back();  // drop the final zero polynomial
    return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rational& x) {
    int var = 0, prev = 0;
    for (const auto& q : chain) {
        int s = eval_rat(q, x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

int count_in(const std::vector<RatPoly>& chain, const Rational& lo, const Rational& hi) {
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

void isolate_rec(const IntPoly& p, const std::vector<RatPoly>& chain, const Rational& lo,
                 const Rational& hi, std::vector<std::pair<Rational, Rational>>& out) {
    int n = count_in(chain, lo, hi);
    if (n == 0) return;
    if (n == 1 && p.sign_at(hi) != 0) {
        out.emplace_back(lo, hi);
        return;
    }
    Rational mid = (lo + hi) / Rational(2);
    if (p.sign_at(mid) == 0) {
        // the midpoint is itself a root: carve out a width that isolates it
        Rational w = (hi - lo) / Rational(4);
        while (count_in(chain, mid - w, mid + w) != 1 || p.sign_at(mid - w) == 0 ||
               p.sign_at(mid + w) == 0)
            w = w / Rational(2);
        isolate_rec(p, chain, lo, mid - w, out);
        out.emplace_back(mid - w, mid + w);
        isolate_rec(p, chain, mid + w, hi, out);
        return;
    }
    isolate_rec(p, chain, lo, mid, out);
    isolate_rec(p, chain, mid, hi, out);
}

std::vector<mpz_class> divisors_of(const mpz_class& n) {
    mpz_class a = ::abs(n);
    std::vector<mpz_class> ds;
    if (a == 0) return ds;
    for (mpz_class d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            ds.push_back(d);
            if (d * d != a) ds.push_back(a / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::from_longs(const std::vector<long>& coeffs) {
    std::vector<mpz_class> c;
    c.reserve(coeffs.size());
    for (long x : coeffs) c.emplace_back(x);
    return IntPoly(std::move(c));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::operator-() const {
    std::vector<mpz_class> c = c_;
    for (auto& x : c) x = -x;
    return IntPoly(std::move(c));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(c));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<mpz_class> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly(std::move(c));
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    mpz_class g = content();
    if (leading() < 0) g = -g;
    std::vector<mpz_class> c = c_;
    for (auto& x : c) x /= g;
    return IntPoly(std::move(c));
}

Rational IntPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

IntPoly IntPoly::divide_exact(const IntPoly& d) const {
    if (d.is_zero()) throw std::domain_error("IntPoly: division by zero polynomial");
    RatPoly a = to_rat(*this), b = to_rat(d), q(std::max<size_t>(1, a.size()), Rational(0));
    rtrim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        rtrim(a);
    }
    if (!a.empty()) throw std::domain_error("IntPoly::divide_exact: nonzero remainder");
    rtrim(q);
    std::vector<mpz_class> ic;
    ic.reserve(q.size());
    for (const auto& c : q) {
        if (!c.is_integer())
            throw std::domain_error("IntPoly::divide_exact: non-integer quotient");
        ic.push_back(c.num());
    }
    return IntPoly(std::move(ic));
}

IntPoly IntPoly::squarefree_part() const {
    if (is_zero()) throw std::domain_error("IntPoly: squarefree part of zero");
    if (degree() == 0) return IntPoly({mpz_class(1)});
    RatPoly g = poly_gcd(to_rat(*this), to_rat(derivative()));
    if (g.size() <= 1) return primitive_part();
    IntPoly ig = to_int_primitive(g);
    return primitive_part().divide_exact(ig).primitive_part();
}

std::string IntPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& c = c_[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        mpz_class a = ::abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

int count_roots(const IntPoly& squarefree, const Rational& lo, const Rational& hi) {
    auto chain = sturm_chain(squarefree);
    return count_in(chain, lo, hi);
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const IntPoly& p) {
    if (p.is_zero()) throw std::domain_error("isolate_real_roots: zero polynomial");
    IntPoly sf = p.squarefree_part();
    std::vector<std::pair<Rational, Rational>> out;
    if (sf.degree() <= 0) return out;
    // Cauchy bound: all real roots lie in [-B, B]
    Rational maxc(0);
    for (const auto& c : sf.coeffs()) {
        Rational a = abs(Rational(c));
        if (a > maxc) maxc = a;
    }
    Rational bound = Rational(1) + maxc / abs(Rational(sf.leading()));
    while (sf.sign_at(-bound) == 0 || sf.sign_at(bound) == 0) bound += Rational(1);
    auto chain = sturm_chain(sf);
    isolate_rec(sf, chain, -bound, bound, out);
    return out;
}

std::vector<IntPoly> factor_upto_quartic(const IntPoly& p) {
    if (p.is_zero()) throw std::domain_error("factor_upto_quartic: zero polynomial");
    if (p.degree() > 4)
        throw std::domain_error("factor_upto_quartic: degree > 4 unsupported");
    IntPoly rest = p.primitive_part();
    std::vector<IntPoly> factors;

    // t | p while the constant term vanishes
    while (!rest.is_zero() && rest.degree() >= 1 && rest.coeff(0) == 0) {
        factors.push_back(IntPoly::from_longs({0, 1}));
        rest = rest.divide_exact(IntPoly::from_longs({0, 1}));
    }

    // rational root test: candidate roots r/s with r | constant, s | leading
    bool found = true;
    while (found && rest.degree() >= 2) {
        found = false;
        for (const auto& r : divisors_of(rest.coeff(0))) {
            for (const auto& s : divisors_of(rest.leading())) {
                for (int sign : {1, -1}) {
                    Rational cand(mpz_class(sign * r), s);
                    if (rest.eval(cand) == Rational(0)) {
                        IntPoly lin({mpz_class(-cand.num()), cand.den()});  // den*t - num
                        rest = rest.divide_exact(lin);
                        factors.push_back(lin);
                        found = true;
                    }
                    if (found) break;
                }
                if (found) break;
            }
            if (found) break;
        }
    }

    // with no rational roots left, degree 2 and 3 are irreducible over Q
    if (rest.degree() == 4) {
        // try an integer split into two quadratics (Gauss: a primitive
        // integer polynomial factors over Q iff it factors over Z)
        const mpz_class lead = rest.leading(), c3 = rest.coeff(3), c2 = rest.coeff(2),
                        c1 = rest.coeff(1), c0 = rest.coeff(0);
        bool split = false;
        auto lead_divs = divisors_of(lead);
        auto const_divs = divisors_of(c0);
        for (const auto& a2 : lead_divs) {
            if (split) break;
            mpz_class b2 = lead / a2;
            for (const auto& a0d : const_divs) {
                if (split) break;
                for (int s0 : {1, -1}) {
                    mpz_class a0 = s0 * a0d;
                    if (a0 == 0 || c0 % a0 != 0) continue;
                    mpz_class b0 = c0 / a0;
                    // solve a2*b1 + b2*a1 = c3, a0*b1 + b0*a1 = c1
                    mpz_class det = a2 * b0 - a0 * b2;
                    mpz_class a1, b1;
                    bool have = false;
                    if (det != 0) {
                        mpz_class na1 = a2 * c1 - a0 * c3, nb1 = b0 * c3 - b2 * c1;
                        if (na1 % det == 0 && nb1 % det == 0) {
                            a1 = na1 / det;
                            b1 = nb1 / det;
                            have = true;
                        }
                    } else {
                        // degenerate linear system: scan a1 under a coefficient
                        // bound; b1 = (c3 - b2*a1)/a2 from the cubic coefficient
                        mpz_class cmax = ::abs(lead);
                        for (const mpz_class* v : {&c3, &c2, &c1, &c0}) {
                            mpz_class av = ::abs(*v);
                            if (av > cmax) cmax = av;
                        }
                        mpz_class bound = 16 * (cmax + 1);
                        for (mpz_class t = -bound; t <= bound && !have; ++t) {
                            mpz_class nb = c3 - b2 * t;
                            if (nb % a2 != 0) continue;
                            mpz_class cb1 = nb / a2;
                            if (a0 * cb1 + b0 * t == c1) {
                                a1 = t;
                                b1 = cb1;
                                have = true;
                            }
                        }
                    }
                    if (have && a2 * b0 + a0 * b2 + a1 * b1 == c2) {
                        IntPoly f1({a0, a1, a2}), f2({b0, b1, b2});
                        for (const auto& f : factor_upto_quartic(f1)) factors.push_back(f);
                        for (const auto& f : factor_upto_quartic(f2)) factors.push_back(f);
                        rest = IntPoly({mpz_class(1)});
                        split = true;
                        break;
                    }
                }
            }
        }
    }
    if (rest.degree() >= 1) factors.push_back(rest.primitive_part());
    return factors;
}

}  // namespace iis
