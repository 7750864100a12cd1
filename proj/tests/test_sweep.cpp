#include "doctest.h"

#include "iis/sampler.hpp"
#include "iis/verify.hpp"

using namespace iis;

TEST_CASE("sampler is deterministic and produces generic normalized tuples") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        auto p = sample_params(42, i);
        CHECK(p == sample_params(42, i));
        CHECK(p == normalize_params(p));
        CHECK(is_generic_tuple(p));
    }
    // different indices and attempts give different draws
    CHECK_FALSE(sample_params(42, 1) == sample_params(42, 2));
    CHECK_FALSE(sample_params(42, 1, 0) == sample_params(42, 1, 1));
}

TEST_CASE("trace invariants hold on engine runs and catch tampering") {
    auto trace = run_induction(
        build_special_symmetric(
            SymmetricParams<Rational>{Rational(10), Rational(4), Rational(1), Rational(2)}),
        Side::right);
    CHECK_FALSE(trace_invariants(trace).has_value());

    auto broken = trace;
    broken.final_state.support.hi += Rational(1, 7);
    CHECK(trace_invariants(broken).has_value());

    auto shifted = trace;
    shifted.steps[1].cut_point = *shifted.steps[1].cut_point - Rational(1, 9);
    CHECK(trace_invariants(shifted).has_value());
}

TEST_CASE("serial and parallel sweeps produce identical summaries") {
    SweepConfig cfg;
    cfg.seed = 99;
    cfg.samples = 120;
    auto a = run_sweep_serial(cfg);
    auto b = run_sweep(cfg);
    CHECK(a.samples == b.samples);
    CHECK(a.agreed == b.agreed);
    CHECK(a.symmetric == b.symmetric);
    CHECK(a.holes == b.holes);
    CHECK(a.max_generalized == b.max_generalized);
    CHECK(a.resamples == b.resamples);
    CHECK(a.case_tally == b.case_tally);
    CHECK(a.failures.size() == b.failures.size());
}

TEST_CASE("a seeded sweep agrees on every sample") {
    SweepConfig cfg;
    cfg.seed = 2024;
    cfg.samples = 300;
    auto sum = run_sweep(cfg);
    CHECK(sum.all_ok());
    CHECK(sum.agreed == 300);
    CHECK(sum.symmetric + sum.holes == 300);
    CHECK(sum.max_generalized <= 3);
    CHECK(sum.max_generalized >= 1);
    // every case shows up at this sample size
    long seen = 0;
    for (const auto& [idx, n] : sum.case_tally) {
        CHECK(idx >= 1);
        CHECK(idx <= 8);
        if (n > 0) ++seen;
    }
    CHECK(seen == 8);
}
