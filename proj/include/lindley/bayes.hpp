#pragma once

#include "lindley/model.hpp"

namespace lindley {

enum class BfMethod {
    exact_quadrature,
    laplace,
    monte_carlo,
};

const char* to_string(BfMethod method);

struct BayesFactorResult {
    double log_b10;             // natural log of B10
    double abs_error_estimate;  // on the linear B10 scale, relative to
                                // exp(log_b10); +infinity means unquantified
    BfMethod method;
};

// Prior predictive density of t under the null: the standard normal density,
// independent of n.
double evidence_null(double t);

// e^{t^2/2}, the supremum of the truncated-scale-prior Bayes factor over all
// supports and sample sizes.
double bayes_factor_upper_bound(double t);

// Exact Bayes factor for the truncated scale prior:
//   B10 = e^{t^2/2} / (2 log(b/a)) *
//         integral over sqrt(n) a / sigma <= y <= sqrt(n) b / sigma of
//         [e^{-(t-y)^2/2} + e^{-(t+y)^2/2}] dy / y,
// evaluated in log space under the substitution u = log y (which absorbs the
// 1/y factor). Finite for all valid inputs including extreme n. Throws
// ConvergenceError (carrying the best estimate) if the quadrature cannot
// reach rel_tol, and ConsistencyError if the result breaches the e^{t^2/2}
// bound beyond tolerance.
BayesFactorResult bayes_factor_truncated(const ExperimentSummary& summary,
                                         const TruncatedScalePrior& prior,
                                         double rel_tol = 1e-10);

// Laplace approximation log B10 = t^2/2 + log(sqrt(2 pi) p(mu_hat) sigma /
// sqrt(n)) for a slowly varying prior density p. The error estimate is
// reported as +infinity (unquantified): the approximation has no computed
// remainder term. Throws DegenerateError when p(mu_hat) = 0.
BayesFactorResult bayes_factor_laplace(const ExperimentSummary& summary,
                                       const SlowlyVaryingPrior& prior);

// Bayes factor for the Bartlett prior with parameter c: the truncated scale
// prior with a = e^{-c}, b = e^{c} and normalization 1/(4c).
BayesFactorResult bayes_factor_bartlett(const ExperimentSummary& summary, double c,
                                        double rel_tol = 1e-10);

// The wide-c limit of the Bartlett-prior Bayes factor (independent of t and
// n): the integral becomes dominated by the small-y part of the integrand,
// where it approaches 2 e^{-t^2/2} / y, giving e^{t^2/2} (1/(4c)) (2
// e^{-t^2/2}) (2c) = 1/2.
double bartlett_limit();

}  // namespace lindley
