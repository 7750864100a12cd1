// Compares the serial reference sweep against the OpenMP driver on the same
// seeded workload and reports throughput and agreement of the summaries.
//
// Usage: bench_sweep [samples] [seed] [height]

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "iis/verify.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_summary(const iis::SweepSummary& a, const iis::SweepSummary& b) {
    return a.samples == b.samples && a.agreed == b.agreed && a.symmetric == b.symmetric &&
           a.holes == b.holes && a.max_generalized == b.max_generalized &&
           a.resamples == b.resamples && a.case_tally == b.case_tally &&
           a.failures.size() == b.failures.size();
}

}  // namespace

int main(int argc, char** argv) {
    iis::SweepConfig cfg;
    cfg.samples = argc > 1 ? std::atol(argv[1]) : 4000;
    cfg.seed = argc > 2 ? static_cast<std::uint64_t>(std::atoll(argv[2])) : 7;
    cfg.sampler.max_height = argc > 3 ? std::atol(argv[3]) : 50;

#ifdef _OPENMP
    std::cout << "OpenMP enabled, max threads " << omp_get_max_threads() << "\n";
#else
    std::cout << "OpenMP not enabled; both drivers run serially\n";
#endif
    std::cout << "samples " << cfg.samples << ", seed " << cfg.seed << ", height "
              << cfg.sampler.max_height << "\n\n";

    auto t0 = std::chrono::steady_clock::now();
    auto serial = iis::run_sweep_serial(cfg);
    double ts = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel = iis::run_sweep(cfg);
    double tp = seconds_since(t0);

    std::cout << "serial   : " << ts << " s  (" << static_cast<double>(cfg.samples) / ts
              << " samples/s)\n";
    std::cout << "parallel : " << tp << " s  (" << static_cast<double>(cfg.samples) / tp
              << " samples/s)\n";
    std::cout << "speedup  : " << ts / tp << "x\n";
    std::cout << "agreed   : " << serial.agreed << "/" << serial.samples << ", summaries "
              << (same_summary(serial, parallel) ? "identical" : "DIFFER") << "\n";

    if (!same_summary(serial, parallel) || !serial.all_ok() || !parallel.all_ok()) return 1;
    return 0;
}
