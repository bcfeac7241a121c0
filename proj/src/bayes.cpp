#include "lindley/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lindley/numerics.hpp"

namespace lindley {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454836;

// log of e^{-(ta-y)^2/2} + e^{-(ta+y)^2/2} with y = e^u, for ta = |t| >= 0.
// Both squares are expanded through (p-q)(p+q) factorizations upstream of
// overflow, so enormous y degrades gracefully to -infinity instead of NaN.
double log_integrand_u(double ta, double u) {
    double y = std::exp(u);
    double d1 = ta - y;
    double d2 = ta + y;
    double l1 = -0.5 * d1 * d1;
    double l2 = -0.5 * d2 * d2;
    double hi = std::max(l1, l2);
    double lo = std::min(l1, l2);
    if (hi == -kInf) return -kInf;
    return hi + std::log1p(std::exp(lo - hi));
}

// Pre-split points for the adaptive quadrature over u in [u_lo, u_hi].
//
// When the integrand's peak u* = log(ta) lies inside the interval, a single
// cut there guarantees the adaptive rule sees the bump. When the peak lies
// outside, all mass hugs one endpoint in a boundary layer whose width in u
// can be far smaller than the node spacing of any fixed rule on the full
// interval (down to ~1/(A(A - ta)) at the left edge); a geometric ladder of
// cuts growing away from that endpoint makes the layer visible no matter
// how thin it is.
std::vector<double> make_splits(double ta, double u_lo, double u_hi) {
    std::vector<double> splits;
    double ustar = ta > 0.0 ? std::log(ta) : -kInf;

    if (ustar > u_lo && ustar < u_hi) {
        splits.push_back(ustar);
        return splits;
    }

    // Clamp the endpoint magnitude so squaring cannot overflow; beyond
    // e^{353} the layer is unrepresentable in double u anyway.
    if (ustar <= u_lo) {
        double edge_y = std::exp(std::min(u_lo, 353.0));
        double rate = edge_y * std::max(1.0, edge_y - ta);
        double step = 1.0 / std::max(1.0, rate);
        for (int j = 0; j < 60 && u_lo + step < u_hi; ++j, step *= 4.0) {
            splits.push_back(u_lo + step);
        }
    } else {
        double edge_y = std::exp(std::min(u_hi, 353.0));
        double rate = edge_y * std::max(1.0, ta - edge_y);
        double step = 1.0 / std::max(1.0, rate);
        for (int j = 0; j < 60 && u_hi - step > u_lo; ++j, step *= 4.0) {
            splits.push_back(u_hi - step);
        }
    }
    return splits;
}

// Shared core: log B10 = ta^2/2 + log_norm + log integral of the transformed
// integrand over [u_lo, u_hi].
BayesFactorResult bf_core(double ta, double u_lo, double u_hi, double log_norm,
                          double rel_tol) {
    QuadratureOptions options;
    options.rel_tol = rel_tol;
    options.split_points = make_splits(ta, u_lo, u_hi);

    QuadratureResult q;
    try {
        q = integrate_log_space(
            [ta](double u) { return log_integrand_u(ta, u); }, u_lo, u_hi,
            options);
    } catch (const ConvergenceError& e) {
        // Deep in the tail (A = sqrt(n) a / sigma far above |t|) the mass sits
        // in a boundary layer where |d log f / du| ~ A (A - |t|), so moving u
        // by one ulp shifts the log-integrand by A^2 epsilon |u| / 2 and no
        // subdivision can improve the estimate past that floor (about 1e-2 at
        // A ~ 1e7). The carried best estimate is still accurate on the
        // linear scale to that floor — and log B10 to ~1e-15 relative — so
        // accept it with the achieved error reported honestly, and rethrow
        // once even the leading digits are in doubt (A beyond ~3e7).
        if (!(e.rel_error() <= 5e-2) || !std::isfinite(e.log_value())) throw;
        q = {e.log_value(), e.rel_error(), e.subdivisions()};
    }

    double log_b10 = 0.5 * ta * ta + log_norm + q.log_value;

    // The integral times the normalization can never exceed 1 (the upper
    // bound e^{t^2/2} on B10); compare in the normalized domain so large t
    // cannot mask a violation through cancellation.
    if (log_norm + q.log_value > std::log1p(1e-8)) {
        throw ConsistencyError(
            "bayes_factor_truncated: result exceeds the e^{t^2/2} bound");
    }

    return {log_b10, q.abs_error_estimate, BfMethod::exact_quadrature};
}

void require(bool ok, const char* message) {
    if (!ok) throw std::domain_error(message);
}

}  // namespace

const char* to_string(BfMethod method) {
    switch (method) {
        case BfMethod::exact_quadrature: return "exact-quadrature";
        case BfMethod::laplace: return "laplace";
        case BfMethod::monte_carlo: return "monte-carlo";
    }
    return "unknown";
}

double evidence_null(double t) {
    require(std::isfinite(t), "evidence_null: t must be finite");
    return std_normal_pdf(t);
}

double bayes_factor_upper_bound(double t) {
    require(std::isfinite(t), "bayes_factor_upper_bound: t must be finite");
    return std::exp(0.5 * t * t);
}

BayesFactorResult bayes_factor_truncated(const ExperimentSummary& summary,
                                         const TruncatedScalePrior& prior,
                                         double rel_tol) {
    require(rel_tol > 0.0, "bayes_factor_truncated: rel_tol must be positive");
    // Integration limits log(sqrt(n) a / sigma), log(sqrt(n) b / sigma),
    // assembled in log space so extreme n or supports cannot overflow.
    double half_log_n = 0.5 * std::log(summary.n);
    double log_sigma = std::log(summary.sigma);
    double u_lo = half_log_n + std::log(prior.a) - log_sigma;
    double u_hi = half_log_n + std::log(prior.b) - log_sigma;
    return bf_core(std::fabs(summary.t), u_lo, u_hi, prior.log_norm(), rel_tol);
}

BayesFactorResult bayes_factor_laplace(const ExperimentSummary& summary,
                                       const SlowlyVaryingPrior& prior) {
    require(static_cast<bool>(prior.density),
            "bayes_factor_laplace: prior density function must be set");
    double density = prior.density(mu_hat(summary));
    require(std::isfinite(density) && density >= 0.0,
            "bayes_factor_laplace: prior density must be finite and non-negative");
    if (density == 0.0) {
        throw DegenerateError(
            "bayes_factor_laplace: prior density vanishes at mu_hat; the "
            "approximation point is unsupported");
    }
    double log_b10 = 0.5 * summary.t * summary.t + 0.5 * kLog2Pi + std::log(density) +
                     std::log(summary.sigma) - 0.5 * std::log(summary.n);
    return {log_b10, kInf, BfMethod::laplace};
}

BayesFactorResult bayes_factor_bartlett(const ExperimentSummary& summary, double c,
                                        double rel_tol) {
    BartlettPrior prior(c);  // validates c
    require(rel_tol > 0.0, "bayes_factor_bartlett: rel_tol must be positive");
    double half_log_n = 0.5 * std::log(summary.n);
    double log_sigma = std::log(summary.sigma);
    double u_lo = half_log_n - prior.c - log_sigma;
    double u_hi = half_log_n + prior.c - log_sigma;
    return bf_core(std::fabs(summary.t), u_lo, u_hi, -std::log(4.0 * prior.c),
                   rel_tol);
}

double bartlett_limit() { return 0.5; }

}  // namespace lindley
