// Benchmark of the OpenMP-parallel kernels against their single-threaded
// reference implementations. Besides timing, it verifies that both produce
// bit-identical results, which is the determinism contract the tests rely
// on. Exits nonzero on any mismatch.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "lindley/model.hpp"
#include "lindley/montecarlo.hpp"
#include "lindley/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

template <typename Fn>
double time_best_of(int repeats, Fn&& fn) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        auto start = std::chrono::steady_clock::now();
        fn();
        double elapsed = seconds_since(start);
        if (elapsed < best) best = elapsed;
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    int failures = 0;

    // --- figure sweep: 2 t-values x 5 breadths x 200 n-points ---------------
    lindley::SweepConfig config;
    std::vector<lindley::SweepRow> serial_rows;
    std::vector<lindley::SweepRow> parallel_rows;
    double sweep_serial = time_best_of(
        3, [&] { serial_rows = lindley::run_sweep_serial(config); });
    double sweep_parallel =
        time_best_of(3, [&] { parallel_rows = lindley::run_sweep(config); });
    bool sweep_identical = serial_rows.size() == parallel_rows.size();
    for (std::size_t i = 0; sweep_identical && i < serial_rows.size(); ++i) {
        sweep_identical = serial_rows[i].log_b10 == parallel_rows[i].log_b10 &&
                          serial_rows[i].n == parallel_rows[i].n &&
                          serial_rows[i].t == parallel_rows[i].t;
    }
    std::printf(
        "sweep (%zu rows)        serial %7.3f s   parallel %7.3f s   "
        "speedup %.2fx   identical: %s\n",
        serial_rows.size(), sweep_serial, sweep_parallel,
        sweep_serial / sweep_parallel, sweep_identical ? "yes" : "NO");
    if (!sweep_identical) ++failures;

    // --- Monte Carlo Bayes factor at 2e7 samples -----------------------------
    lindley::ExperimentSummary summary(2.0, 1e4, 1.0);
    lindley::TruncatedScalePrior prior(0.1, 10.0);
    const std::uint64_t samples = 20000000;
    lindley::McEstimate serial_mc{};
    lindley::McEstimate parallel_mc{};
    double mc_serial = time_best_of(3, [&] {
        serial_mc = lindley::mc_bayes_factor_serial(summary, prior, samples, 7);
    });
    double mc_parallel = time_best_of(3, [&] {
        parallel_mc = lindley::mc_bayes_factor(summary, prior, samples, 7);
    });
    bool mc_identical = serial_mc.log_b10 == parallel_mc.log_b10 &&
                        serial_mc.std_error == parallel_mc.std_error;
    std::printf(
        "mc (%llu samples)   serial %7.3f s   parallel %7.3f s   "
        "speedup %.2fx   identical: %s\n",
        static_cast<unsigned long long>(samples), mc_serial, mc_parallel,
        mc_serial / mc_parallel, mc_identical ? "yes" : "NO");
    if (!mc_identical) ++failures;

    return failures == 0 ? 0 : 1;
}
