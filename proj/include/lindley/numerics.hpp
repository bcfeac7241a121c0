#pragma once

#include <functional>
#include <vector>

#include "lindley/errors.hpp"

namespace lindley {

struct QuadratureResult {
    double log_value;           // log of the integral of exp(log_integrand)
    double abs_error_estimate;  // estimated error relative to exp(log_value)
    int subdivisions;           // bisections performed by the adaptive loop
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    int max_subdivisions = 10000;
    // Interior points at which the interval is cut before adaptation starts.
    // Used to make sure the adaptive rule sees features (a sharp peak, a
    // boundary layer) that are much narrower than the whole interval.
    // Bracket a narrow feature with cuts on both sides rather than placing a
    // single cut exactly at its peak: a panel edge at a symmetric peak whose
    // flanking panels have very unequal widths can leave the wide side's
    // flank outside every node, and mass the nodes never see is mass the
    // error estimate never sees.
    std::vector<double> split_points;
};

// Standard normal density and distribution function. The CDF is accurate to
// well below 1e-12 absolute everywhere (rational approximations of the
// complementary error function; see numerics.cpp).
double std_normal_pdf(double x);
double log_std_normal_pdf(double x);
double std_normal_cdf(double x);

// log of the integral over [u_lo, u_hi] of exp(log_integrand(u)) du.
//
// Works entirely in log space: each panel of an adaptive Gauss-Kronrod
// scheme subtracts the running maximum of log_integrand over its nodes
// before exponentiating, and panel totals are combined by log-sum-exp, so
// integrals far below the linear double-precision floor are returned with
// full relative accuracy. The estimated relative error of a successful
// result is at most options.rel_tol.
//
// Throws std::domain_error when u_lo >= u_hi (or either bound is NaN) and
// when the integrand returns NaN; throws ConvergenceError (carrying the best
// estimate) when the subdivision cap is reached before the tolerance.
QuadratureResult integrate_log_space(const std::function<double(double)>& log_integrand,
                                     double u_lo, double u_hi,
                                     const QuadratureOptions& options);

QuadratureResult integrate_log_space(const std::function<double(double)>& log_integrand,
                                     double u_lo, double u_hi, double rel_tol = 1e-10);

}  // namespace lindley
