#pragma once

// The thin-type example: the integer matrix M, its eigenvalue λ in (0,1) as
// an exact number-field generator, the positive eigenvector normalized to
// a+b+c = 1, and the self-similarity checks.  Everything here is exact; the
// only floating-point output is display annotation.
//
// A scanner (thin_scan) runs symmetrize rounds on arbitrary parameters and
// looks for exact periodic self-similarity by comparing params normalized to
// unit support.  Once a period is established the support list is reported
// at period boundaries (the scales of the self-map, 1, λ, λ², ... for the
// thin example); for aperiodic runs every round-end support is listed.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "iis/algebraic.hpp"
#include "iis/cases.hpp"
#include "iis/engine.hpp"
#include "iis/intpoly.hpp"
#include "iis/numberfield.hpp"
#include "iis/system.hpp"

namespace iis {

inline TransitionMatrix matrix_M() {
    TransitionMatrix m;
    m.entries = {{{3, 1, -1, -4}, {-1, 2, 0, 0}, {-2, -2, 1, 4}, {3, 2, -1, -5}}};
    m.family = MatrixFamily::M;
    m.tag = "M";
    return m;
}

// characteristic polynomial det(tI - M), exact, lowest degree first
inline IntPoly char_poly(const TransitionMatrix& m) {
    // Faddeev-LeVerrier: every division below is exact over the integers
    mpz_class a[4][4], acc[4][4], next[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc[i][j] = a[i][j] = m.entries[i][j];
    std::vector<mpz_class> c(5);
    c[4] = 1;
    for (int k = 1; k <= 4; ++k) {
        mpz_class tr(0);
        for (int i = 0; i < 4; ++i) tr += acc[i][i];
        if (tr % k != 0) throw std::logic_error("char_poly: inexact trace division");
        c[4 - k] = -tr / k;
        if (k == 4) break;
        for (int i = 0; i < 4; ++i) acc[i][i] += c[4 - k];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                next[i][j] = 0;
                for (int t = 0; t < 4; ++t) next[i][j] += a[i][t] * acc[t][j];
            }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) acc[i][j] = next[i][j];
    }
    return IntPoly(std::move(c));
}

// the exact thin-example environment, built once per process
struct ThinContext {
    std::shared_ptr<const NumberField> field;
    NFElem lambda;
    SymmetricParams<NFElem> params{NFElem(0), NFElem(0), NFElem(0), NFElem(0)};
};

namespace detail {

// the irreducible factor of det(tI-M) with a root in (0,1), as a field
inline ThinContext build_thin_context() {
    ThinContext ctx;
    IntPoly cp = char_poly(matrix_M());
    for (const IntPoly& f : factor_upto_quartic(cp)) {
        if (f.degree() < 2) continue;  // rational eigenvalues are not λ
        for (const auto& [lo, hi] : isolate_real_roots(f)) {
            AlgebraicReal root(f, lo, hi);
            // refine until the isolating interval decides (0,1) membership;
            // terminates because 0 and 1 are not roots of f
            bool inside;
            for (;;) {
                if (root.lo() >= Rational(0) && root.hi() <= Rational(1)) {
                    inside = true;
                    break;
                }
                if (root.hi() <= Rational(0) || root.lo() >= Rational(1)) {
                    inside = false;
                    break;
                }
                root = root.refined();
            }
            if (!inside) continue;
            auto fld = std::make_shared<const NumberField>(root);
            ctx.field = fld;
            ctx.lambda = NFElem::generator(fld);
            return ctx;
        }
    }
    throw std::logic_error("thin: no eigenvalue of M in (0,1)");
}

inline SymmetricParams<NFElem> solve_eigenvector(const ThinContext& ctx) {
    const NFElem& lam = ctx.lambda;
    TransitionMatrix m = matrix_M();
    // rows of M - λI, reduced to row echelon form over Q(λ)
    NFElem a[4][5];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            a[i][j] = NFElem(static_cast<long>(m.entries[i][j]));
            if (i == j) a[i][j] -= lam;
        }
    int pivot_col[4] = {-1, -1, -1, -1};
    int rank = 0;
    for (int col = 0; col < 4 && rank < 4; ++col) {
        int piv = -1;
        for (int r = rank; r < 4; ++r)
            if (a[r][col].sign() != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < 4; ++j) std::swap(a[piv][j], a[rank][j]);
        NFElem inv = NFElem(1) / a[rank][col];
        for (int j = 0; j < 4; ++j) a[rank][j] = a[rank][j] * inv;
        for (int r = 0; r < 4; ++r) {
            if (r == rank || a[r][col].sign() == 0) continue;
            NFElem f = a[r][col];
            for (int j = 0; j < 4; ++j) a[r][j] = a[r][j] - f * a[rank][j];
        }
        pivot_col[rank++] = col;
    }
    if (rank != 3) throw std::logic_error("thin: eigenspace of λ is not one-dimensional");
    bool is_pivot[4] = {false, false, false, false};
    for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    int free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    NFElem v[4];
    v[free_col] = NFElem(1);
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -a[r][free_col];
    // normalize to a+b+c = 1 and certify positivity
    NFElem s = v[0] + v[1] + v[2];
    if (s.sign() == 0) throw std::logic_error("thin: eigenvector has a+b+c = 0");
    NFElem inv_s = NFElem(1) / s;
    for (auto& x : v) x = x * inv_s;
    for (const auto& x : v)
        if (x.sign() <= 0) throw std::logic_error("thin: eigenvector coordinate not positive");
    // exact residual check M v = λ v
    for (int i = 0; i < 4; ++i) {
        NFElem acc(0);
        for (int j = 0; j < 4; ++j) acc += scale(v[j], m.entries[i][j]);
        if (!(acc == ctx.lambda * v[i])) throw std::logic_error("thin: eigen residual nonzero");
    }
    return {v[0], v[1], v[2], v[3]};
}

}  // namespace detail

inline const ThinContext& thin_context() {
    static const ThinContext ctx = [] {
        ThinContext c = detail::build_thin_context();
        c.params = detail::solve_eigenvector(c);
        return c;
    }();
    return ctx;
}

inline const NFElem& thin_lambda() { return thin_context().lambda; }

inline SymmetricParams<NFElem> thin_eigen_params() { return thin_context().params; }

namespace detail {

inline long count_reductions(const InductionTrace<NFElem>& t) {
    long n = 0;
    for (const auto& s : t.steps)
        if (s.kind == StepKind::reduction) ++n;
    return n;
}

}  // namespace detail

// True iff exactly 6 ordinary right-side iterations take p to λ·p, with exact
// field equality.  Any hole, tie, or iteration miscount reports false with a
// diagnostic.
inline bool verify_self_similarity(const SymmetricParams<NFElem>& p,
                                   std::string* diagnostic = nullptr) {
    const NFElem& lam = thin_lambda();
    auto fail = [&](const std::string& why) {
        if (diagnostic) *diagnostic = why;
        return false;
    };
    SymmetricParams<NFElem> cur = p;
    long ordinary = 0;
    for (int round = 0; round < 6; ++round) {
        SymmetrizeOutcome<NFElem> out = symmetrize(build_special_symmetric(cur));
        if (out.result != SymmetrizeOutcome<NFElem>::Result::symmetric) {
            switch (out.result) {
                case SymmetrizeOutcome<NFElem>::Result::hole:
                    return fail("hole after " + std::to_string(ordinary) +
                                " ordinary iterations");
                case SymmetrizeOutcome<NFElem>::Result::degenerate:
                    return fail("degenerate tie during the run: " + out.trace.note);
                default:
                    return fail("step cap reached");
            }
        }
        ordinary += detail::count_reductions(out.trace);
        cur = *out.params;
        if (ordinary < 6) continue;
        if (ordinary > 6)
            return fail("no symmetric state at 6 iterations (overshot to " +
                        std::to_string(ordinary) + ")");
        bool ok = cur.a == lam * p.a && cur.b == lam * p.b && cur.c == lam * p.c &&
                  cur.u == lam * p.u;
        if (!ok) return fail("params after 6 iterations differ from λ·p");
        return true;
    }
    return fail("six ordinary iterations not reached");
}

// The period's matrices, multiplied exactly, must reproduce M: the second
// round's A-family matrix times the first round's B-family matrix.
inline bool verify_matrix_product(std::string* diagnostic = nullptr) {
    auto fail = [&](const std::string& why) {
        if (diagnostic) *diagnostic = why;
        return false;
    };
    SymmetricParams<NFElem> p0 = thin_eigen_params();
    PredictResult<NFElem> r1 = predict_next(p0);
    if (r1.kind != PredictResult<NFElem>::Kind::symmetric || !r1.matrix)
        return fail("first round did not select a matrix");
    PredictResult<NFElem> r2 = predict_next(*r1.params);
    if (r2.kind != PredictResult<NFElem>::Kind::symmetric || !r2.matrix)
        return fail("second round did not select a matrix");
    TransitionMatrix prod = matrix_product(*r2.matrix, *r1.matrix);
    if (!(prod.entries == matrix_M().entries)) {
        std::ostringstream os;
        os << "product " << prod.tag << " differs from M:";
        for (int i = 0; i < 4; ++i) {
            os << " (";
            for (int j = 0; j < 4; ++j) os << (j ? "," : "") << prod.entries[i][j];
            os << ")";
        }
        return fail(os.str());
    }
    return true;
}

template <ExactOrderedField F>
struct ThinReport {
    long depth = 0;                // generalized iterations run
    std::vector<F> support_lengths;
    bool hole_found = false;
    std::optional<long> self_similar_period;  // in symmetrize rounds
    std::optional<F> scale_factor;            // exact support ratio per period
    std::string stop_reason;                  // "epsilon" | "hole" | "cap"
};

// Repeated symmetrize rounds with support tracking and exact period
// detection.  Stops when the support has shrunk to epsilon times the initial
// one (epsilon = 1 therefore stops before any round), at a hole, or at the
// generalized-iteration cap.  Degenerate ties propagate.
template <ExactOrderedField F>
ThinReport<F> thin_scan(const SymmetricParams<F>& p, long max_generalized, const F& epsilon) {
    ThinReport<F> rep;
    SymmetricParams<F> cur = normalize_params(p);
    std::vector<F> supports{cur.a + cur.b + cur.c};
    std::vector<SymmetricParams<F>> normalized;
    auto unit = [](const SymmetricParams<F>& q) {
        F inv = F(1) / (q.a + q.b + q.c);
        return SymmetricParams<F>{q.a * inv, q.b * inv, q.c * inv, q.u * inv};
    };
    normalized.push_back(unit(cur));
    std::size_t period_base = 0;
    const F threshold = supports.front() * epsilon;
    for (;;) {
        if (supports.back() <= threshold) {
            rep.stop_reason = "epsilon";
            break;
        }
        if (rep.depth >= max_generalized) {
            rep.stop_reason = "cap";
            break;
        }
        SymmetrizeOutcome<F> out = symmetrize(build_special_symmetric(cur));
        if (out.result == SymmetrizeOutcome<F>::Result::degenerate)
            throw DegenerateError("thin_scan: " + out.trace.note);
        rep.depth += out.generalized_iterations_used;
        if (out.result == SymmetrizeOutcome<F>::Result::hole) {
            rep.hole_found = true;
            rep.stop_reason = "hole";
            break;
        }
        if (out.result != SymmetrizeOutcome<F>::Result::symmetric) {
            rep.stop_reason = "cap";
            break;
        }
        cur = *out.params;
        supports.push_back(cur.a + cur.b + cur.c);
        SymmetricParams<F> q = unit(cur);
        if (!rep.self_similar_period) {
            for (std::size_t e = 0; e < normalized.size(); ++e) {
                if (normalized[e] == q) {
                    // exact recurrence of the unit shape: the scan from round
                    // e onward is the image of itself under one scaling
                    rep.self_similar_period = static_cast<long>(normalized.size() - e);
                    rep.scale_factor = supports[e + *rep.self_similar_period] / supports[e];
                    period_base = e;
                    break;
                }
            }
        }
        normalized.push_back(q);
    }
    if (rep.self_similar_period) {
        for (std::size_t i = period_base; i < supports.size();
             i += static_cast<std::size_t>(*rep.self_similar_period))
            rep.support_lengths.push_back(supports[i]);
    } else {
        rep.support_lengths = supports;
    }
    return rep;
}

}  // namespace iis
