#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "lindley/model.hpp"

namespace lindley {

struct SweepConfig {
    std::vector<double> t_values = {2.0, 3.0};
    double sigma = 1.0;
    std::vector<double> n_grid = default_n_grid();
    std::vector<TruncatedScalePrior> breadths = default_breadths();
    double rel_tol = 1e-10;

    // 200 log-spaced points from 1 to 1e12.
    static std::vector<double> default_n_grid();
    // Five symmetric-decade priors 10^-k <= |mu| <= 10^k, k = 1..5.
    static std::vector<TruncatedScalePrior> default_breadths();
};

// `points` log-spaced values from n_min to n_max inclusive (a single point
// requires n_min == n_max). The default grid is make_n_grid(1, 1e12, 200).
std::vector<double> make_n_grid(double n_min, double n_max, int points);

struct SweepRow {
    double t;
    double n;
    double a;
    double b;
    double log_b10;
    double mu_hat;
    bool in_support;  // whether a <= |mu_hat| <= b
};

// One row per (t, breadth, n) triple, ordered by t entry, then breadth
// entry, then ascending n. Grid points are evaluated concurrently when
// OpenMP is available; the output is identical either way. Quadrature
// convergence failures are re-thrown annotated with the offending grid
// point.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

// Single-threaded reference implementation with identical output.
std::vector<SweepRow> run_sweep_serial(const SweepConfig& config);

// Centered finite differences of log_b10 with respect to log n, for rows
// sharing one (t, a, b). Returns (n, local_slope) for each interior row.
// Requires >= 3 rows.
std::vector<std::pair<double, double>> scaling_diagnostic(
    const std::vector<SweepRow>& rows);

// CSV with header `t,n,a,b,log_b10,b10,mu_hat,in_support`, floating-point
// fields at 17 significant digits, in_support as true/false, rows sorted by
// (t, a, n).
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace lindley
