#include "lindley/model.hpp"

#include <cmath>
#include <stdexcept>

namespace lindley {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::domain_error(message);
}

}  // namespace

ExperimentSummary::ExperimentSummary(double t_, double n_, double sigma_)
    : t(t_), n(n_), sigma(sigma_) {
    require(std::isfinite(t), "ExperimentSummary: t must be finite");
    require(std::isfinite(n) && n > 0.0, "ExperimentSummary: n must be positive");
    require(std::isfinite(sigma) && sigma > 0.0,
            "ExperimentSummary: sigma must be positive");
}

TruncatedScalePrior::TruncatedScalePrior(double a_, double b_) : a(a_), b(b_) {
    require(std::isfinite(a) && a > 0.0, "TruncatedScalePrior: a must be positive");
    require(std::isfinite(b), "TruncatedScalePrior: b must be finite");
    require(a < b, "TruncatedScalePrior: requires a < b");
}

double TruncatedScalePrior::log_norm() const {
    return -std::log(2.0 * (std::log(b) - std::log(a)));
}

BartlettPrior::BartlettPrior(double c_) : c(c_) {
    require(std::isfinite(c) && c > 0.0, "BartlettPrior: c must be positive");
    // e^{+/-c} must stay a normal double for the equivalent truncated prior.
    require(c <= 350.0, "BartlettPrior: c must be at most 350");
}

TruncatedScalePrior BartlettPrior::to_truncated() const {
    return TruncatedScalePrior(std::exp(-c), std::exp(c));
}

double t_statistic(double xbar, double n, double sigma) {
    require(std::isfinite(xbar), "t_statistic: xbar must be finite");
    require(std::isfinite(n) && n > 0.0, "t_statistic: n must be positive");
    require(std::isfinite(sigma) && sigma > 0.0, "t_statistic: sigma must be positive");
    return std::sqrt(n) * xbar / sigma;
}

double mu_hat(const ExperimentSummary& summary) {
    return summary.t * summary.sigma / std::sqrt(summary.n);
}

double prior_density(const TruncatedScalePrior& prior, double mu) {
    double m = std::fabs(mu);
    if (m < prior.a || m > prior.b) return 0.0;
    return 1.0 / (2.0 * (std::log(prior.b) - std::log(prior.a)) * m);
}

double induced_t0_density(const TruncatedScalePrior& prior, double n, double sigma,
                          double t0) {
    require(std::isfinite(n) && n > 0.0, "induced_t0_density: n must be positive");
    require(std::isfinite(sigma) && sigma > 0.0,
            "induced_t0_density: sigma must be positive");
    double scale = sigma / std::sqrt(n);
    return prior_density(prior, t0 * scale) * scale;
}

}  // namespace lindley
