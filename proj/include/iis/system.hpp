#pragma once

// Data model of oriented interval identification systems: a support interval
// plus pairs of equal-length subintervals identified by orientation-preserving
// affine maps.  Systems are immutable values; every operation here is a pure
// function, so concurrent reads are safe.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "iis/errors.hpp"
#include "iis/field.hpp"

namespace iis {

template <ExactOrderedField F>
struct Interval {
    F lo, hi;  // closed [lo, hi], lo < hi

    F length() const { return hi - lo; }
    bool contains(const F& x) const { return lo <= x && x <= hi; }
    // containment as sets, both closed
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

template <ExactOrderedField F>
struct IdentificationPair {
    Interval<F> left, right;  // canonical order: left.lo <= right.lo
    std::string label;        // "a", "b" or "c" for the case machinery

    F length() const { return left.length(); }
    // the orientation-preserving identification and its inverse
    F to_right(const F& x) const { return right.lo + (x - left.lo); }
    F to_left(const F& x) const { return left.lo + (x - right.lo); }
};

template <ExactOrderedField F>
struct IISystem {
    Interval<F> support;
    std::vector<IdentificationPair<F>> pairs;

    int order() const { return static_cast<int>(pairs.size()); }
};

// parameters (a, b, c, u) of the special symmetric shape
template <ExactOrderedField F>
struct SymmetricParams {
    F a, b, c, u;

    bool operator==(const SymmetricParams& o) const {
        return a == o.a && b == o.b && c == o.c && u == o.u;
    }
};

enum class OrbitStatus { exhausted, truncated };

template <ExactOrderedField F>
struct OrbitResult {
    std::vector<F> points;  // sorted
    OrbitStatus status;
};

namespace detail {

template <ExactOrderedField F>
Interval<F> make_interval(const F& lo, const F& hi) {
    if (!(lo < hi)) throw std::invalid_argument("Interval: need lo < hi");
    return {lo, hi};
}

// store the unordered pair {I, J} with the canonical left/right order
template <ExactOrderedField F>
IdentificationPair<F> make_pair(Interval<F> i, Interval<F> j, std::string label) {
    if (!(i.length() == j.length()))
        throw std::invalid_argument("IdentificationPair: unequal lengths");
    if (j.lo < i.lo) std::swap(i, j);
    return {i, j, std::move(label)};
}

}  // namespace detail

// Special symmetric system on [0, a+b+c]:
//   a-pair [0,a] <-> [b+c, a+b+c]
//   b-pair [0,b] <-> [a+c, a+b+c]
//   c-pair [u,u+c] <-> [a+b-u, a+b+c-u]
// Parameters only need to be positive and keep every interval inside the
// support; the a>b, u < a+b-u normalization is recovered by params_of.
template <ExactOrderedField F>
IISystem<F> build_special_symmetric(const SymmetricParams<F>& p) {
    if (p.a.sign() <= 0 || p.b.sign() <= 0 || p.c.sign() <= 0 || p.u.sign() <= 0)
        throw std::invalid_argument("build_special_symmetric: parameters must be positive");
    const F B = p.a + p.b + p.c;
    IISystem<F> s;
    s.support = {F(0), B};
    s.pairs.push_back(detail::make_pair(detail::make_interval(F(0), p.a),
                                        detail::make_interval(p.b + p.c, B), "a"));
    s.pairs.push_back(detail::make_pair(detail::make_interval(F(0), p.b),
                                        detail::make_interval(p.a + p.c, B), "b"));
    s.pairs.push_back(detail::make_pair(detail::make_interval(p.u, p.u + p.c),
                                        detail::make_interval(p.a + p.b - p.u, B - p.u), "c"));
    for (const auto& pr : s.pairs)
        if (!(s.support.contains(pr.left) && s.support.contains(pr.right)))
            throw std::invalid_argument("build_special_symmetric: pair escapes the support");
    return s;
}

// left.lo - A = B - right.hi for every pair
template <ExactOrderedField F>
bool is_symmetric(const IISystem<F>& s) {
    for (const auto& p : s.pairs)
        if (!(p.left.lo - s.support.lo == s.support.hi - p.right.hi)) return false;
    return true;
}

// endpoints reach both support ends and pair lengths sum to the support length
template <ExactOrderedField F>
bool is_balanced(const IISystem<F>& s) {
    if (s.pairs.empty()) return false;
    F lo_min = s.pairs.front().left.lo;
    F hi_max = s.pairs.front().right.hi;
    F total(0);
    for (const auto& p : s.pairs) {
        lo_min = min(lo_min, p.left.lo);
        hi_max = max(hi_max, p.right.hi);
        total += p.length();
    }
    return lo_min == s.support.lo && hi_max == s.support.hi && total == s.support.length();
}

// Maximal open subintervals of the support covered by no pair interval.
// Intervals are closed sets, so the gaps are open; the returned Interval
// values carry the open endpoints.
template <ExactOrderedField F>
std::vector<Interval<F>> coverage_gaps(const IISystem<F>& s) {
    std::vector<Interval<F>> segs;
    for (const auto& p : s.pairs) {
        segs.push_back(p.left);
        segs.push_back(p.right);
    }
    std::sort(segs.begin(), segs.end(),
              [](const Interval<F>& x, const Interval<F>& y) { return x.lo < y.lo; });
    std::vector<Interval<F>> gaps;
    F covered = s.support.lo;  // coverage is contiguous from support.lo up to here
    for (const auto& seg : segs) {
        if (covered < seg.lo) gaps.push_back({covered, seg.lo});
        covered = max(covered, seg.hi);
    }
    if (covered < s.support.hi) gaps.push_back({covered, s.support.hi});
    return gaps;
}

// sorted, deduplicated endpoints of all pair intervals
template <ExactOrderedField F>
std::vector<F> critical_points(const IISystem<F>& s) {
    std::vector<F> pts;
    for (const auto& p : s.pairs) {
        pts.push_back(p.left.lo);
        pts.push_back(p.left.hi);
        pts.push_back(p.right.lo);
        pts.push_back(p.right.hi);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// breadth-first closure of {x} under all identifications, both directions
template <ExactOrderedField F>
OrbitResult<F> orbit(const IISystem<F>& s, const F& x, std::size_t max_size = 10000) {
    if (!s.support.contains(x)) throw std::invalid_argument("orbit: point outside support");
    std::set<F> seen{x};
    std::queue<F> todo;
    todo.push(x);
    bool truncated = false;
    while (!todo.empty() && !truncated) {
        F p = todo.front();
        todo.pop();
        for (const auto& pr : s.pairs) {
            F imgs[2];
            int n = 0;
            if (pr.left.contains(p)) imgs[n++] = pr.to_right(p);
            if (pr.right.contains(p)) imgs[n++] = pr.to_left(p);
            for (int i = 0; i < n; ++i) {
                if (seen.count(imgs[i])) continue;
                if (seen.size() >= max_size) {
                    truncated = true;
                    break;
                }
                seen.insert(imgs[i]);
                todo.push(imgs[i]);
            }
            if (truncated) break;
        }
    }
    return {std::vector<F>(seen.begin(), seen.end()),
            truncated ? OrbitStatus::truncated : OrbitStatus::exhausted};
}

// Inverse of build_special_symmetric up to pair renumbering and the
// u <-> a+b-u reflection: recovers (a,b,c,u) with a >= b and u <= a+b-u.
// Throws if the system is not exactly of that shape.
template <ExactOrderedField F>
SymmetricParams<F> params_of(const IISystem<F>& s) {
    if (s.order() != 3) throw std::invalid_argument("params_of: need exactly 3 pairs");
    const F A = s.support.lo, B = s.support.hi;
    // split into boundary pairs (touching both support ends) and the interior pair
    std::vector<const IdentificationPair<F>*> boundary, interior;
    for (const auto& p : s.pairs) {
        if (p.left.lo == A && p.right.hi == B)
            boundary.push_back(&p);
        else
            interior.push_back(&p);
    }
    if (boundary.size() != 2 || interior.size() != 1)
        throw std::invalid_argument("params_of: not in the special symmetric shape");
    F a = boundary[0]->length(), b = boundary[1]->length();
    if (a < b) std::swap(a, b);
    const auto& cp = *interior[0];
    F c = cp.length();
    F u = cp.left.lo - A;
    SymmetricParams<F> p{a, b, c, u};
    // validate by rebuilding: everything about the shape is pinned down
    IISystem<F> probe = build_special_symmetric(p);
    auto match = [&](const IdentificationPair<F>& x, const IdentificationPair<F>& y) {
        return x.left.lo - A == y.left.lo && x.left.hi - A == y.left.hi &&
               x.right.lo - A == y.right.lo && x.right.hi - A == y.right.hi;
    };
    auto find = [&](const IdentificationPair<F>& want) {
        for (const auto& have : s.pairs)
            if (match(have, want)) return true;
        return false;
    };
    if (!(B - A == probe.support.hi) || !find(probe.pairs[0]) || !find(probe.pairs[1]) ||
        !find(probe.pairs[2]))
        throw std::invalid_argument("params_of: not in the special symmetric shape");
    return p;
}

// Non-fatal genericity screen: report every integer relation
// alpha*a + beta*b + gamma*c + delta*u = 0 with |coefficients| <= 8.
// The case analysis assumes no such relation holds; hits are warnings
// because hand-picked demonstration parameters may carry harmless ones.
template <ExactOrderedField F>
std::vector<std::string> genericity_warnings(const SymmetricParams<F>& p, int bound = 8) {
    std::vector<std::string> warnings;
    const F* vals[4] = {&p.a, &p.b, &p.c, &p.u};
    const char* names[4] = {"a", "b", "c", "u"};
    std::array<int, 4> k{};
    // first nonzero coefficient positive and gcd 1, so each relation is
    // reported once and integer multiples are suppressed
    auto scan = [&](auto&& self, int idx, bool lead_set) -> void {
        if (idx == 4) {
            if (!lead_set) return;
            F acc(0);
            for (int i = 0; i < 4; ++i)
                if (k[i]) acc += scale(*vals[i], k[i]);
            if (acc.sign() != 0) return;
            int g = 0;
            for (int v : k) g = std::gcd(g, v < 0 ? -v : v);
            if (g != 1) return;
            std::string rel;
            for (int i = 0; i < 4; ++i) {
                if (!k[i]) continue;
                if (!rel.empty()) rel += " + ";
                rel += std::to_string(k[i]) + "*" + names[i];
            }
            warnings.push_back("integer relation: " + rel + " = 0");
            return;
        }
        int lo = lead_set ? -bound : 0;
        for (int v = lo; v <= bound; ++v) {
            k[idx] = v;
            self(self, idx + 1, lead_set || v != 0);
        }
        k[idx] = 0;
    };
    scan(scan, 0, false);
    return warnings;
}

// fast path for rational tuples: clear denominators once and scan in machine
// integers (the verification sampler calls this for every candidate draw)
inline std::vector<std::string> genericity_warnings(const SymmetricParams<Rational>& p,
                                                    int bound = 8) {
    mpz_class lcm_z(1);
    const Rational* vals[4] = {&p.a, &p.b, &p.c, &p.u};
    for (const auto* v : vals) mpz_lcm(lcm_z.get_mpz_t(), lcm_z.get_mpz_t(), v->den().get_mpz_t());
    long scaled[4];
    bool fits = true;
    for (int i = 0; i < 4 && fits; ++i) {
        mpz_class s = vals[i]->num() * (lcm_z / vals[i]->den());
        // headroom for the sum of four bound-scaled terms
        if (!s.fits_slong_p() || std::abs(s.get_si()) > (1L << 55) / (4 * bound)) fits = false;
        else scaled[i] = s.get_si();
    }
    if (!fits) {
        // fall back to the generic field scan for oversized inputs
        SymmetricParams<Rational> copy = p;
        return genericity_warnings<Rational>(copy, bound);
    }
    std::vector<std::string> warnings;
    const char* names[4] = {"a", "b", "c", "u"};
    for (int k0 = 0; k0 <= bound; ++k0)
        for (int k1 = k0 ? -bound : 0; k1 <= bound; ++k1)
            for (int k2 = (k0 || k1) ? -bound : 0; k2 <= bound; ++k2)
                for (int k3 = (k0 || k1 || k2) ? -bound : 0; k3 <= bound; ++k3) {
                    if (!k0 && !k1 && !k2 && !k3) continue;
                    if (k0 * scaled[0] + k1 * scaled[1] + k2 * scaled[2] + k3 * scaled[3] != 0)
                        continue;
                    int k[4] = {k0, k1, k2, k3};
                    int g = 0;
                    for (int v : k) g = std::gcd(g, v < 0 ? -v : v);
                    if (g != 1) continue;
                    std::string rel;
                    for (int i = 0; i < 4; ++i) {
                        if (!k[i]) continue;
                        if (!rel.empty()) rel += " + ";
                        rel += std::to_string(k[i]) + "*" + names[i];
                    }
                    warnings.push_back("integer relation: " + rel + " = 0");
                }
    return warnings;
}

}  // namespace iis
