#include "lindley/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "lindley/errors.hpp"

namespace lindley {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kStride = 0x9E3779B97F4A7C15ull;

// Fixed accumulation block: each chunk of draws is reduced independently
// (two-pass log-sum-exp) and the per-chunk results are merged in index
// order, so the final numbers do not depend on how chunks were distributed
// across threads.
constexpr std::uint64_t kChunk = 4096;

struct ChunkStat {
    double peak;    // max of the log terms in the chunk
    double sum1;    // sum of exp(l - peak)
    double sum2;    // sum of exp(2 (l - peak))
};

// Log likelihood ratio of one draw: (t^2 - (t - y)^2)/2 with y = sqrt(n)
// mu / sigma, evaluated as y (2t - y) / 2 so oversized y collapses to
// -infinity instead of producing inf - inf.
double log_weight(double t, double y) { return 0.5 * y * (2.0 * t - y); }

ChunkStat reduce_chunk(double t, double scale, double a, double b, double log_a,
                       double log_b, std::uint64_t seed, std::uint64_t begin,
                       std::uint64_t end) {
    std::array<double, kChunk> terms;
    std::uint64_t count = end - begin;
    double peak = -kInf;
    for (std::uint64_t i = 0; i < count; ++i) {
        double mu = detail::draw_mu(a, b, log_a, log_b, seed, begin + i);
        double l = log_weight(t, scale * mu);
        terms[i] = l;
        peak = std::max(peak, l);
    }
    if (peak == -kInf) {
        return {-kInf, 0.0, 0.0};
    }
    double sum1 = 0.0;
    double sum2 = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
        double shifted = terms[i] - peak;
        sum1 += std::exp(shifted);
        sum2 += std::exp(2.0 * shifted);
    }
    return {peak, sum1, sum2};
}

McEstimate estimate_from_chunks(const ExperimentSummary& summary,
                                const TruncatedScalePrior& prior,
                                std::uint64_t samples, std::uint64_t seed,
                                bool parallel) {
    if (samples < 100) {
        throw std::domain_error("mc_bayes_factor: requires samples >= 100");
    }
    double scale = std::sqrt(summary.n) / summary.sigma;
    double log_a = std::log(prior.a);
    double log_b = std::log(prior.b);

    std::uint64_t chunk_count = (samples + kChunk - 1) / kChunk;
    std::vector<ChunkStat> stats(chunk_count);

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long long c = 0; c < static_cast<long long>(chunk_count); ++c) {
            std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
            std::uint64_t end = std::min(samples, begin + kChunk);
            stats[static_cast<std::size_t>(c)] = reduce_chunk(
                summary.t, scale, prior.a, prior.b, log_a, log_b, seed, begin, end);
        }
    } else {
        for (std::uint64_t c = 0; c < chunk_count; ++c) {
            std::uint64_t begin = c * kChunk;
            std::uint64_t end = std::min(samples, begin + kChunk);
            stats[c] = reduce_chunk(summary.t, scale, prior.a, prior.b, log_a, log_b,
                                    seed, begin, end);
        }
    }

    double peak = -kInf;
    for (const ChunkStat& s : stats) peak = std::max(peak, s.peak);
    if (peak == -kInf) {
        throw DegenerateError(
            "mc_bayes_factor: every likelihood term underflowed to -infinity");
    }
    double sum1 = 0.0;
    double sum2 = 0.0;
    for (const ChunkStat& s : stats) {
        if (s.peak == -kInf) continue;
        double shift = s.peak - peak;
        sum1 += std::exp(shift) * s.sum1;
        sum2 += std::exp(2.0 * shift) * s.sum2;
    }

    double count = static_cast<double>(samples);
    double log_b10 = peak + std::log(sum1) - std::log(count);
    // Relative standard error of the linear-scale mean, from the sample
    // variance of the terms; the log-sum-exp shift cancels in the ratio
    // N sum2 / sum1^2.
    double ratio = count * sum2 / (sum1 * sum1);
    double std_error = std::sqrt(std::max(0.0, ratio - 1.0) / (count - 1.0));
    return {log_b10, std_error, samples, seed};
}

}  // namespace

namespace detail {

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * kStride;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(counter_hash(seed, index) >> 11) * 0x1.0p-53;
}

double draw_mu(double a, double b, double log_a, double log_b, std::uint64_t seed,
               std::uint64_t i) {
    bool negative = (counter_hash(seed, 2 * i) >> 63) != 0;
    double u = uniform01(seed, 2 * i + 1);
    double magnitude = std::exp(log_a + u * (log_b - log_a));
    // One-ulp rounding of exp can step just past the support edge; clamp so
    // draws always satisfy a <= |mu| <= b.
    magnitude = std::clamp(magnitude, a, b);
    return negative ? -magnitude : magnitude;
}

}  // namespace detail

std::vector<double> sample_prior(const TruncatedScalePrior& prior, std::uint64_t seed,
                                 std::uint64_t count) {
    if (count < 1) {
        throw std::domain_error("sample_prior: requires count >= 1");
    }
    double log_a = std::log(prior.a);
    double log_b = std::log(prior.b);
    std::vector<double> draws(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        draws[i] = detail::draw_mu(prior.a, prior.b, log_a, log_b, seed, i);
    }
    return draws;
}

McEstimate mc_bayes_factor(const ExperimentSummary& summary,
                           const TruncatedScalePrior& prior, std::uint64_t samples,
                           std::uint64_t seed) {
    return estimate_from_chunks(summary, prior, samples, seed, true);
}

McEstimate mc_bayes_factor_serial(const ExperimentSummary& summary,
                                  const TruncatedScalePrior& prior,
                                  std::uint64_t samples, std::uint64_t seed) {
    return estimate_from_chunks(summary, prior, samples, seed, false);
}

}  // namespace lindley
