#pragma once

#include <cstdint>
#include <vector>

#include "lindley/model.hpp"

namespace lindley {

struct McEstimate {
    double log_b10;
    double std_error;  // standard error of the linear-scale B10 estimate,
                       // divided by the estimate
    std::uint64_t samples;
    std::uint64_t seed;
};

// i.i.d. draws from the truncated scale prior: sign uniform on {-1, +1},
// magnitude exp(Uniform(log a, log b)). Deterministic given the seed; draw i
// depends only on (seed, i), so any partition of the index range across
// workers yields the same stream.
std::vector<double> sample_prior(const TruncatedScalePrior& prior, std::uint64_t seed,
                                 std::uint64_t count);

// Monte Carlo estimate of the Bayes factor: the mean over prior draws mu_i
// of the likelihood ratio exp((t^2 - (t - sqrt(n) mu_i / sigma)^2)/2),
// accumulated with log-sum-exp over fixed-size chunks so the result is
// bit-identical for any worker count. std_error comes from the delta method
// on the sample variance of the linear-scale terms. Requires samples >= 100;
// throws DegenerateError when every term underflows to -infinity in log
// domain.
McEstimate mc_bayes_factor(const ExperimentSummary& summary,
                           const TruncatedScalePrior& prior, std::uint64_t samples,
                           std::uint64_t seed);

// Single-threaded reference implementation: identical chunking and
// arithmetic, plain loop. Kept so tests can pin the parallel version to it
// bit for bit.
McEstimate mc_bayes_factor_serial(const ExperimentSummary& summary,
                                  const TruncatedScalePrior& prior,
                                  std::uint64_t samples, std::uint64_t seed);

namespace detail {

// Counter-based generator: output i of a stream is a mixed function of
// (seed, i) alone (SplitMix64's finalizer applied to seed + (i+1) * odd
// constant). No sequential state, so streams can be evaluated in any order.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index);

// Uniform double in [0, 1) from the top 53 bits of counter_hash.
double uniform01(std::uint64_t seed, std::uint64_t index);

// Draw i of the prior sample stream; consumes hash outputs 2i and 2i+1.
double draw_mu(double a, double b, double log_a, double log_b, std::uint64_t seed,
               std::uint64_t i);

}  // namespace detail

}  // namespace lindley
