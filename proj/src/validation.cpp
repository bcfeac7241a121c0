#include "lindley/validation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lindley/bayes.hpp"

namespace lindley {

namespace {

// Slot layout of the per-configuration random stream.
enum Slot : std::uint64_t {
    kSlotT = 0,
    kSlotN = 1,
    kSlotSigma = 2,
    kSlotDecade = 3,
    kSlotWidth = 4,
    kSlotsPerConfig = 16,
};

double uniform_slot(std::uint64_t seed, std::uint64_t index, std::uint64_t slot) {
    return detail::uniform01(seed, index * kSlotsPerConfig + slot);
}

int int_in_range(double u, int lo, int hi) {
    int span = hi - lo + 1;
    int v = lo + static_cast<int>(u * span);
    return std::min(v, hi);
}

struct BaseDraw {
    double t;
    double n;
    double sigma;
    int decade;  // j in {-6..0}
    int width;   // w in {1..6}
};

BaseDraw base_draw(std::uint64_t seed, std::uint64_t index) {
    BaseDraw d;
    d.t = -5.0 + 10.0 * uniform_slot(seed, index, kSlotT);
    d.n = std::pow(10.0, 12.0 * uniform_slot(seed, index, kSlotN));
    d.sigma = std::pow(10.0, -1.0 + 2.0 * uniform_slot(seed, index, kSlotSigma));
    d.decade = int_in_range(uniform_slot(seed, index, kSlotDecade), -6, 0);
    d.width = int_in_range(uniform_slot(seed, index, kSlotWidth), 1, 6);
    return d;
}

constexpr std::uint64_t kMaxAttempts = 4096;

// Offset separating the per-trial Monte Carlo seeds from the configuration
// stream of the same master seed.
constexpr std::uint64_t kMcSeedOffset = 0x51ED0FF5ull;

}  // namespace

TrialConfig random_config(std::uint64_t seed, std::uint64_t index) {
    BaseDraw d = base_draw(seed, index);
    double a = std::pow(10.0, d.decade);
    double b = std::pow(10.0, d.decade + d.width);
    return {ExperimentSummary(d.t, d.n, d.sigma), TruncatedScalePrior(a, b)};
}

TrialConfig random_informative_config(std::uint64_t seed, std::uint64_t index) {
    for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
        TrialConfig config = random_config(seed, index * kMaxAttempts + attempt);
        double m = std::fabs(mu_hat(config.summary));
        if (m >= config.prior.a / 10.0 && m <= 10.0 * config.prior.b) {
            return config;
        }
    }
    // The acceptance window covers several decades; exhausting the attempt
    // budget is practically impossible.
    throw std::runtime_error(
        "random_informative_config: no informative configuration found");
}

TrialConfig random_scale_identity_config(std::uint64_t seed, std::uint64_t index) {
    BaseDraw d = base_draw(seed, index);
    // Anchor the lower integration limit sqrt(n) a / sigma at 10^j <= 1.
    double a = std::pow(10.0, d.decade) * d.sigma / std::sqrt(d.n);
    double b = a * std::pow(10.0, d.width);
    return {ExperimentSummary(d.t, d.n, d.sigma), TruncatedScalePrior(a, b)};
}

ValidationReport run_validation(std::uint64_t trials, std::uint64_t seed,
                                std::uint64_t samples) {
    if (trials < 1) {
        throw std::domain_error("run_validation: requires trials >= 1");
    }
    ValidationReport report;
    report.trials.reserve(trials);
    report.passed = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        TrialConfig config = random_informative_config(seed, i);
        BayesFactorResult exact = bayes_factor_truncated(config.summary, config.prior);
        std::uint64_t mc_seed = detail::counter_hash(seed, kMcSeedOffset + i);
        McEstimate mc = mc_bayes_factor(config.summary, config.prior, samples, mc_seed);

        // Agreement on the linear scale: |B_exact/B_mc - 1| vs the relative
        // standard error, computed through expm1 so deep-tail magnitudes
        // never leave the log domain.
        double rel_diff = std::fabs(std::expm1(exact.log_b10 - mc.log_b10));
        double z = mc.std_error > 0.0
                       ? rel_diff / mc.std_error
                       : (rel_diff == 0.0
                              ? 0.0
                              : std::numeric_limits<double>::infinity());
        bool pass = z <= 3.0;
        if (pass) ++report.passed;
        report.trials.push_back({config, exact.log_b10, mc, z, pass});
    }
    report.pass_rate = static_cast<double>(report.passed) /
                       static_cast<double>(report.trials.size());
    return report;
}

}  // namespace lindley
