#pragma once

// Randomized dual-route sweep: sample generic parameter tuples, run the
// matrix prediction and the induction engine on each, and require the two
// routes to agree.  Every engine trace is additionally replayed and checked
// for structural invariants (balancedness after every step, strictly
// decreasing support at reductions, bit-exact replay).
//
// Two drivers share the per-sample worker: run_sweep_serial is the plain
// reference loop, run_sweep parallelizes over samples with OpenMP.  Results
// are stored by sample index, so both produce identical summaries and the
// parallel driver merges in seed order by construction.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "iis/cases.hpp"
#include "iis/engine.hpp"
#include "iis/sampler.hpp"
#include "iis/system.hpp"

namespace iis {

// ---------------------------------------------------------------------------
// trace invariants

// Replays the trace from its initial system and returns a description of the
// first violated invariant, or nullopt if all hold:
//   - every intermediate state is balanced,
//   - reductions strictly shrink the support (and never grow it elsewhere),
//   - recorded supports match the replay and the final state is reproduced
//     bit-exactly.
template <ExactOrderedField F>
std::optional<std::string> trace_invariants(const InductionTrace<F>& t) {
    const F k = t.initial.support.lo + t.initial.support.hi;
    if (!is_balanced(t.initial)) return "initial system is not balanced";
    IISystem<F> cur = t.initial;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& rec = t.steps[i];
        const F before = cur.support.length();
        cur = apply_record(cur, rec, k);
        if (!(cur.support == rec.support_after))
            return "step " + std::to_string(i) + ": replayed support differs from record";
        if (!is_balanced(cur)) return "step " + std::to_string(i) + ": system is not balanced";
        const F after = cur.support.length();
        if (rec.kind == StepKind::reduction) {
            if (!(after < before))
                return "step " + std::to_string(i) + ": reduction did not shrink the support";
        } else if (!(after == before)) {
            return "step " + std::to_string(i) + ": transmission changed the support length";
        }
    }
    if (!(cur.support == t.final_state.support) || cur.pairs.size() != t.final_state.pairs.size())
        return "replayed final state differs from recorded final state";
    for (std::size_t i = 0; i < cur.pairs.size(); ++i)
        if (!(cur.pairs[i].left == t.final_state.pairs[i].left &&
              cur.pairs[i].right == t.final_state.pairs[i].right &&
              cur.pairs[i].label == t.final_state.pairs[i].label))
            return "replayed final state differs from recorded final state";
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepConfig {
    std::uint64_t seed = 7;
    long samples = 1000;
    SamplerConfig sampler{};
    long max_ordinary_steps = 2000;
    int max_resample_attempts = 64;  // degenerate draws are resampled
    int threads = 0;                 // 0 = library default (parallel driver only)
};

struct SampleResult {
    std::uint64_t index = 0;
    int attempts = 0;  // resamples consumed before a non-degenerate verdict
    VerifyReport<Rational> report;
    std::optional<std::string> invariant_violation;
    bool ok = false;  // agree and no invariant violation
};

struct SweepSummary {
    long samples = 0;
    long agreed = 0;
    long symmetric = 0;
    long holes = 0;
    long max_generalized = 0;
    long resamples = 0;
    std::map<int, long> case_tally;  // by case index, symmetric+hole samples
    std::vector<SampleResult> failures;
    bool all_ok() const { return agreed == samples && failures.empty(); }
};

namespace detail {

inline SampleResult verify_sample(std::uint64_t seed, std::uint64_t index,
                                  const SweepConfig& cfg) {
    SampleResult out;
    out.index = index;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= cfg.max_resample_attempts) {
            out.report.engine_verdict = out.report.matrix_verdict = "degenerate";
            out.report.agree = false;
            out.report.anomalies.push_back("resample limit exhausted");
            out.ok = false;
            return out;
        }
        SymmetricParams<Rational> p = sample_params(seed, index, attempt, cfg.sampler);
        VerifyReport<Rational> rep = verify_symmetrization(p, cfg.max_ordinary_steps);
        if (rep.engine_verdict == "degenerate" || rep.matrix_verdict == "degenerate") continue;
        out.attempts = attempt;
        out.report = std::move(rep);
        break;
    }
    // invariants are checked on the same engine run the verdict came from
    auto trace = run_induction(build_special_symmetric(out.report.params), Side::right,
                               cfg.max_ordinary_steps);
    out.invariant_violation = trace_invariants(trace);
    out.ok = out.report.agree && !out.invariant_violation;
    return out;
}

inline SweepSummary summarize(const std::vector<SampleResult>& results) {
    SweepSummary s;
    s.samples = static_cast<long>(results.size());
    for (const auto& r : results) {
        if (r.report.agree) ++s.agreed;
        if (r.report.engine_verdict == "symmetric") ++s.symmetric;
        if (r.report.engine_verdict == "hole") ++s.holes;
        if (r.report.generalized_iterations > s.max_generalized)
            s.max_generalized = r.report.generalized_iterations;
        s.resamples += r.attempts;
        ++s.case_tally[r.report.label.index];
        if (!r.ok) s.failures.push_back(r);
    }
    return s;
}

}  // namespace detail

inline SweepSummary run_sweep_serial(const SweepConfig& cfg) {
    std::vector<SampleResult> results(static_cast<std::size_t>(cfg.samples));
    for (long i = 0; i < cfg.samples; ++i)
        results[static_cast<std::size_t>(i)] =
            detail::verify_sample(cfg.seed, static_cast<std::uint64_t>(i), cfg);
    return detail::summarize(results);
}

inline SweepSummary run_sweep(const SweepConfig& cfg) {
    std::vector<SampleResult> results(static_cast<std::size_t>(cfg.samples));
#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < cfg.samples; ++i)
        results[static_cast<std::size_t>(i)] =
            detail::verify_sample(cfg.seed, static_cast<std::uint64_t>(i), cfg);
#else
    for (long i = 0; i < cfg.samples; ++i)
        results[static_cast<std::size_t>(i)] =
            detail::verify_sample(cfg.seed, static_cast<std::uint64_t>(i), cfg);
#endif
    return detail::summarize(results);
}

}  // namespace iis
