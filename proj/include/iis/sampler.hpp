#pragma once

// Seeded generator of generic rational parameter tuples for verification
// sweeps.  Draws depend only on (seed, index, attempt), so a sweep can be
// farmed out to workers in any order and still produce identical samples.
//
// Static screens reject exact coincidences the analysis genuinely excludes:
// tied critical values, integral floor-count arguments, and small integer
// relations among (a,b,c,u).  Inputs that still reach an exact tie during a
// run are resampled by the caller with the next attempt number.

#include <cstdint>
#include <random>
#include <stdexcept>

#include "iis/cases.hpp"
#include "iis/rational.hpp"
#include "iis/system.hpp"

namespace iis {

struct SamplerConfig {
    long max_height = 50;    // numerators and denominators drawn from [1, max_height]
    int relation_bound = 8;  // |k_i| <= bound in the integer-relation screen
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

// all static genericity screens on a normalized tuple
inline bool is_generic_tuple(const SymmetricParams<Rational>& p, int relation_bound = 8) {
    const Rational &a = p.a, &b = p.b, &c = p.c, &u = p.u;
    // the eight interior critical values must be pairwise distinct
    Rational crit[8] = {u, u + c, b, b + c, a, a + c, a + b - u, a + b + c - u};
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            if (crit[i] == crit[j]) return false;
    // floor-count arguments must be non-integral (denominators are nonzero on
    // normalized generic tuples: a > b and 2u < a+b)
    if (((c + u - a) / (a + b - u - u)).is_integer()) return false;
    if ((b / (a - b)).is_integer()) return false;
    if ((u / (b + c)).is_integer()) return false;
    if (((a - u - c) / (b + c)).is_integer()) return false;
    // small integer relations (this subsumes a=2b, a=2b+c, a=c+2u, ...)
    return genericity_warnings(p, relation_bound).empty();
}

// deterministic generic tuple for (seed, index, attempt); already normalized
inline SymmetricParams<Rational> sample_params(std::uint64_t seed, std::uint64_t index,
                                               std::uint64_t attempt = 0,
                                               const SamplerConfig& cfg = {}) {
    std::uint64_t mixed = detail::splitmix64(seed ^ detail::splitmix64(index));
    mixed = detail::splitmix64(mixed ^ detail::splitmix64(attempt + 1));
    std::mt19937_64 rng(mixed);
    std::uniform_int_distribution<long> draw(1, cfg.max_height);
    for (int tries = 0; tries < 100000; ++tries) {
        Rational vals[4];
        for (auto& v : vals) v = Rational(draw(rng), draw(rng));
        SymmetricParams<Rational> p{vals[0], vals[1], vals[2], vals[3]};
        try {
            p = normalize_params(p);
        } catch (const DegenerateError&) {
            continue;  // a=b or u at the midpoint; redraw
        } catch (const std::invalid_argument&) {
            continue;  // u outside (0, a+b); redraw
        }
        if (is_generic_tuple(p, cfg.relation_bound)) return p;
    }
    throw std::logic_error("sample_params: no generic tuple found (screens too strict?)");
}

}  // namespace iis
