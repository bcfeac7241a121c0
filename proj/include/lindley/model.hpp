#pragma once

#include <functional>

namespace lindley {

// Sufficient summary of the experiment: observed t-statistic, sample size,
// and the known standard deviation. The sample size is carried as a positive
// real so that figure sweeps can use log-spaced grids; integer-n use cases
// simply pass whole numbers.
struct ExperimentSummary {
    double t;
    double n;
    double sigma;

    ExperimentSummary(double t, double n, double sigma);
};

// Proper prior with density 1/(2 log(b/a) |mu|) on a <= |mu| <= b and zero
// elsewhere. This is the scale-invariant 1/|mu| shape truncated to a finite
// symmetric support so that it normalizes.
struct TruncatedScalePrior {
    double a;
    double b;

    TruncatedScalePrior(double a, double b);

    // log of the normalization constant 1/(2 log(b/a)), computed as
    // log(b) - log(a) internally so extreme supports cannot overflow.
    double log_norm() const;
};

// One-parameter family with support e^{-c} <= |mu| <= e^{c} and
// normalization 1/(4c); the wide-c limit probes prior-diffuseness
// sensitivity. c is capped so that e^{+/-c} stays a normal double.
struct BartlettPrior {
    double c;

    explicit BartlettPrior(double c);

    TruncatedScalePrior to_truncated() const;
};

// Caller-supplied prior density, assumed slowly varying on the likelihood's
// scale; consumed by the Laplace approximation.
struct SlowlyVaryingPrior {
    std::function<double(double)> density;
};

// sqrt(n) * xbar / sigma.
double t_statistic(double xbar, double n, double sigma);

// Maximum-likelihood mean t * sigma / sqrt(n).
double mu_hat(const ExperimentSummary& summary);

// Density of the truncated scale prior at mu (zero outside support,
// symmetric in mu).
double prior_density(const TruncatedScalePrior& prior, double mu);

// Density of t0 = sqrt(n) mu / sigma induced by the prior on mu:
// p(sigma t0 / sqrt(n)) * sigma / sqrt(n). At in-support points the value is
// 1/(2 log(b/a) |t0|), carrying no n dependence.
double induced_t0_density(const TruncatedScalePrior& prior, double n, double sigma,
                          double t0);

}  // namespace lindley
