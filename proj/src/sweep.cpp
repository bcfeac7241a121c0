#include "lindley/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <stdexcept>

#include "lindley/bayes.hpp"
#include "lindley/errors.hpp"

namespace lindley {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::domain_error(message);
}

void validate(const SweepConfig& config) {
    require(!config.t_values.empty(), "run_sweep: t_values must be non-empty");
    for (double t : config.t_values) {
        require(std::isfinite(t), "run_sweep: t values must be finite");
    }
    require(std::isfinite(config.sigma) && config.sigma > 0.0,
            "run_sweep: sigma must be positive");
    require(!config.n_grid.empty(), "run_sweep: n_grid must be non-empty");
    for (double n : config.n_grid) {
        require(std::isfinite(n) && n > 0.0, "run_sweep: n values must be positive");
    }
    require(!config.breadths.empty(), "run_sweep: breadths must be non-empty");
    require(config.rel_tol > 0.0, "run_sweep: rel_tol must be positive");
}

SweepRow evaluate_row(double t, double n, double sigma,
                      const TruncatedScalePrior& prior, double rel_tol) {
    ExperimentSummary summary(t, n, sigma);
    try {
        BayesFactorResult bf = bayes_factor_truncated(summary, prior, rel_tol);
        double mh = mu_hat(summary);
        double mag = std::fabs(mh);
        bool in_support = mag >= prior.a && mag <= prior.b;
        return {t, n, prior.a, prior.b, bf.log_b10, mh, in_support};
    } catch (const ConvergenceError& e) {
        char where[160];
        std::snprintf(where, sizeof(where),
                      " at grid point (t=%.17g, n=%.17g, a=%.17g, b=%.17g)", t, n,
                      prior.a, prior.b);
        throw ConvergenceError(std::string(e.what()) + where, e.log_value(),
                               e.rel_error(), e.subdivisions());
    }
}

std::vector<SweepRow> run_sweep_impl(const SweepConfig& config, bool parallel) {
    validate(config);

    std::vector<double> n_sorted = config.n_grid;
    std::sort(n_sorted.begin(), n_sorted.end());

    // Flatten (t, breadth, n) into one task list so grid points can be
    // computed in any order; output position is fixed by the index.
    struct Task {
        double t;
        const TruncatedScalePrior* prior;
        double n;
    };
    std::vector<Task> tasks;
    tasks.reserve(config.t_values.size() * config.breadths.size() * n_sorted.size());
    for (double t : config.t_values) {
        for (const TruncatedScalePrior& prior : config.breadths) {
            for (double n : n_sorted) {
                tasks.push_back({t, &prior, n});
            }
        }
    }

    std::vector<SweepRow> rows(tasks.size());
    std::exception_ptr first_error = nullptr;
    std::atomic<bool> failed{false};

    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long long i = 0; i < static_cast<long long>(tasks.size()); ++i) {
            if (failed.load(std::memory_order_relaxed)) continue;
            const Task& task = tasks[static_cast<std::size_t>(i)];
            try {
                rows[static_cast<std::size_t>(i)] = evaluate_row(
                    task.t, task.n, config.sigma, *task.prior, config.rel_tol);
            } catch (...) {
#pragma omp critical(lindley_sweep_error)
                {
                    if (!first_error) first_error = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
    } else {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            rows[i] = evaluate_row(tasks[i].t, tasks[i].n, config.sigma,
                                   *tasks[i].prior, config.rel_tol);
        }
    }

    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

void append_number(std::string& line, double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    line += buf;
}

}  // namespace

std::vector<double> SweepConfig::default_n_grid() {
    return make_n_grid(1.0, 1e12, 200);
}

std::vector<double> make_n_grid(double n_min, double n_max, int points) {
    require(std::isfinite(n_min) && n_min > 0.0,
            "make_n_grid: n_min must be positive");
    require(std::isfinite(n_max) && n_max >= n_min,
            "make_n_grid: n_max must be at least n_min");
    require(points >= 1, "make_n_grid: points must be at least 1");
    if (points == 1) {
        require(n_min == n_max,
                "make_n_grid: a single point requires n_min == n_max");
        return {n_min};
    }
    double lg_lo = std::log10(n_min);
    double lg_hi = std::log10(n_max);
    std::vector<double> grid(static_cast<std::size_t>(points));
    grid.front() = n_min;
    grid.back() = n_max;
    for (int i = 1; i + 1 < points; ++i) {
        grid[static_cast<std::size_t>(i)] =
            std::pow(10.0, lg_lo + (lg_hi - lg_lo) *
                                       (static_cast<double>(i) /
                                        static_cast<double>(points - 1)));
    }
    return grid;
}

std::vector<TruncatedScalePrior> SweepConfig::default_breadths() {
    std::vector<TruncatedScalePrior> breadths;
    breadths.reserve(5);
    for (int k = 1; k <= 5; ++k) {
        breadths.emplace_back(std::pow(10.0, -k), std::pow(10.0, k));
    }
    return breadths;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    return run_sweep_impl(config, true);
}

std::vector<SweepRow> run_sweep_serial(const SweepConfig& config) {
    return run_sweep_impl(config, false);
}

std::vector<std::pair<double, double>> scaling_diagnostic(
    const std::vector<SweepRow>& rows) {
    if (rows.size() < 3) {
        throw std::domain_error("scaling_diagnostic: requires at least 3 rows");
    }
    for (const SweepRow& row : rows) {
        if (row.t != rows.front().t || row.a != rows.front().a ||
            row.b != rows.front().b) {
            throw std::domain_error(
                "scaling_diagnostic: rows must share one (t, a, b)");
        }
    }
    std::vector<SweepRow> sorted = rows;
    std::sort(sorted.begin(), sorted.end(),
              [](const SweepRow& x, const SweepRow& y) { return x.n < y.n; });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (sorted[i].n == sorted[i + 1].n) {
            throw std::domain_error("scaling_diagnostic: n values must be distinct");
        }
    }

    std::vector<std::pair<double, double>> slopes;
    slopes.reserve(sorted.size() - 2);
    for (std::size_t i = 1; i + 1 < sorted.size(); ++i) {
        double dlog_b10 = sorted[i + 1].log_b10 - sorted[i - 1].log_b10;
        double dlog_n = std::log(sorted[i + 1].n) - std::log(sorted[i - 1].n);
        slopes.emplace_back(sorted[i].n, dlog_b10 / dlog_n);
    }
    return slopes;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    std::vector<SweepRow> sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const SweepRow& x, const SweepRow& y) {
                         if (x.t != y.t) return x.t < y.t;
                         if (x.a != y.a) return x.a < y.a;
                         return x.n < y.n;
                     });
    os << "t,n,a,b,log_b10,b10,mu_hat,in_support\n";
    std::string line;
    for (const SweepRow& row : sorted) {
        line.clear();
        append_number(line, row.t);
        line += ',';
        append_number(line, row.n);
        line += ',';
        append_number(line, row.a);
        line += ',';
        append_number(line, row.b);
        line += ',';
        append_number(line, row.log_b10);
        line += ',';
        append_number(line, std::exp(row.log_b10));
        line += ',';
        append_number(line, row.mu_hat);
        line += ',';
        line += row.in_support ? "true" : "false";
        line += '\n';
        os << line;
    }
}

}  // namespace lindley
