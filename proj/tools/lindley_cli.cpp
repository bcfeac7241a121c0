// Command-line surface: p-values, Bayes factors, figure sweeps, and the
// Monte-Carlo-vs-quadrature validation harness, with CSV or json-lines
// output.
//
// Exit codes: 0 success, 2 usage/parse error, 3 degenerate computation,
// 4 numerical failure. `validate` exits 0 only when at least 98% of trials
// pass.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lindley/bayes.hpp"
#include "lindley/errors.hpp"
#include "lindley/frequentist.hpp"
#include "lindley/model.hpp"
#include "lindley/montecarlo.hpp"
#include "lindley/sweep.hpp"
#include "lindley/validation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using ordered_json = nlohmann::ordered_json;

// One typed cell of an output record; `name` becomes the CSV header entry or
// the json-lines key.
struct Field {
    enum class Kind { number, text, flag };
    Kind kind;
    const char* name;
    double number;
    const char* text;
    bool flag;
};

Field fnum(const char* name, double value) {
    return {Field::Kind::number, name, value, nullptr, false};
}

Field ftext(const char* name, const char* value) {
    return {Field::Kind::text, name, 0.0, value, false};
}

Field fflag(const char* name, bool value) {
    return {Field::Kind::flag, name, 0.0, nullptr, value};
}

// 17 significant digits: enough for the printed decimal to parse back to the
// exact binary value.
std::string num17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void emit_table(std::ostream& os, bool json,
                const std::vector<std::vector<Field>>& rows) {
    if (rows.empty()) return;
    if (!json) {
        std::string header;
        for (const Field& field : rows.front()) {
            if (!header.empty()) header += ',';
            header += field.name;
        }
        os << header << '\n';
    }
    std::string line;
    for (const std::vector<Field>& row : rows) {
        if (json) {
            ordered_json record = ordered_json::object();
            for (const Field& field : row) {
                switch (field.kind) {
                    case Field::Kind::number:
                        if (std::isfinite(field.number)) {
                            record[field.name] = field.number;
                        } else if (std::isnan(field.number)) {
                            record[field.name] = "nan";
                        } else {
                            record[field.name] = field.number > 0 ? "inf" : "-inf";
                        }
                        break;
                    case Field::Kind::text:
                        record[field.name] = field.text;
                        break;
                    case Field::Kind::flag:
                        record[field.name] = field.flag;
                        break;
                }
            }
            os << record.dump() << '\n';
        } else {
            line.clear();
            for (const Field& field : row) {
                if (!line.empty()) line += ',';
                switch (field.kind) {
                    case Field::Kind::number:
                        line += num17(field.number);
                        break;
                    case Field::Kind::text:
                        line += field.text;
                        break;
                    case Field::Kind::flag:
                        line += field.flag ? "true" : "false";
                        break;
                }
            }
            os << line << '\n';
        }
    }
    if (!os) throw std::runtime_error("failed writing output");
}

// Resolves --out: empty means standard output.
std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::domain_error("cannot open output file: " + path);
    return file;
}

void apply_thread_cap(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Frequentist p-values and Bayes factors for a normal mean with known "
        "variance, under truncated scale-invariant priors"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string out_path;
    int threads = 0;
    app.add_option("--format", format, "Output format (default csv)")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    app.add_option("--out", out_path, "Output file (default standard output)");
    app.add_option("--threads", threads, "Cap worker threads (default: all)")
        ->check(CLI::PositiveNumber);

    int exit_status = 0;

    // ---- pvalue ------------------------------------------------------------
    struct {
        double t = 0.0;
    } pv;
    CLI::App* pvalue_cmd =
        app.add_subcommand("pvalue", "Two-sided p-value of the t statistic");
    pvalue_cmd->fallthrough();
    pvalue_cmd->add_option("--t", pv.t, "Observed t statistic")->required();
    pvalue_cmd->callback([&] {
        std::ofstream file;
        std::ostream& os = open_output(out_path, file);
        emit_table(os, format == "json-lines",
                   {{fnum("t", pv.t), fnum("p_value", lindley::p_value(pv.t))}});
    });

    // ---- bf ----------------------------------------------------------------
    struct {
        double t = 0.0;
        double n = 1.0;
        double sigma = 1.0;
        double a = 0.1;
        double b = 10.0;
        double rel_tol = 1e-10;
        std::string method = "exact";
        std::uint64_t samples = 1000000;
        std::uint64_t seed = 0;
    } bf;
    CLI::App* bf_cmd = app.add_subcommand(
        "bf", "Bayes factor B10 for the truncated scale-invariant prior");
    bf_cmd->fallthrough();
    bf_cmd->add_option("--t", bf.t, "Observed t statistic")->required();
    bf_cmd->add_option("--n", bf.n, "Sample size (default 1)");
    bf_cmd->add_option("--sigma", bf.sigma, "Known standard deviation (default 1)");
    bf_cmd->add_option("--a", bf.a, "Lower support bound (default 0.1)");
    bf_cmd->add_option("--b", bf.b, "Upper support bound (default 10)");
    bf_cmd->add_option("--method", bf.method,
                       "exact | laplace | mc (default exact)")
        ->check(CLI::IsMember({"exact", "laplace", "mc"}));
    bf_cmd->add_option("--samples", bf.samples,
                       "Monte Carlo sample count (default 1000000)");
    bf_cmd->add_option("--seed", bf.seed, "Monte Carlo seed (default 0)");
    bf_cmd->add_option("--rel-tol", bf.rel_tol,
                       "Quadrature relative tolerance (default 1e-10)");
    bf_cmd->callback([&] {
        apply_thread_cap(threads);
        lindley::ExperimentSummary summary(bf.t, bf.n, bf.sigma);
        lindley::TruncatedScalePrior prior(bf.a, bf.b);
        double log_b10 = 0.0;
        double error_estimate = 0.0;
        const char* method_name = nullptr;
        if (bf.method == "exact") {
            lindley::BayesFactorResult result =
                lindley::bayes_factor_truncated(summary, prior, bf.rel_tol);
            log_b10 = result.log_b10;
            error_estimate = result.abs_error_estimate;
            method_name = lindley::to_string(result.method);
        } else if (bf.method == "laplace") {
            lindley::SlowlyVaryingPrior density{[prior](double mu) {
                return lindley::prior_density(prior, mu);
            }};
            lindley::BayesFactorResult result =
                lindley::bayes_factor_laplace(summary, density);
            log_b10 = result.log_b10;
            error_estimate = result.abs_error_estimate;
            method_name = lindley::to_string(result.method);
        } else {
            lindley::McEstimate result =
                lindley::mc_bayes_factor(summary, prior, bf.samples, bf.seed);
            log_b10 = result.log_b10;
            error_estimate = result.std_error;
            method_name = lindley::to_string(lindley::BfMethod::monte_carlo);
        }
        std::ofstream file;
        std::ostream& os = open_output(out_path, file);
        emit_table(os, format == "json-lines",
                   {{fnum("t", bf.t), fnum("n", bf.n), fnum("a", bf.a),
                     fnum("b", bf.b), ftext("method", method_name),
                     fnum("log_b10", log_b10), fnum("b10", std::exp(log_b10)),
                     fnum("error_estimate", error_estimate)}});
    });

    // ---- sweep -------------------------------------------------------------
    struct {
        std::vector<double> t = {2.0, 3.0};
        double sigma = 1.0;
        double n_min = 1.0;
        double n_max = 1e12;
        int n_points = 200;
        std::vector<int> k = {1, 2, 3, 4, 5};
        double rel_tol = 1e-10;
        bool diagnostic = false;
    } sw;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Bayes factor vs sample size over a grid of prior breadths");
    sweep_cmd->fallthrough();
    sweep_cmd->add_option("--t", sw.t, "t statistics (default 2 3)")
        ->expected(-1);
    sweep_cmd->add_option("--sigma", sw.sigma,
                          "Known standard deviation (default 1)");
    sweep_cmd->add_option("--n-min", sw.n_min, "Smallest n (default 1)");
    sweep_cmd->add_option("--n-max", sw.n_max, "Largest n (default 1e12)");
    sweep_cmd->add_option("--n-points", sw.n_points,
                          "Number of log-spaced n values (default 200)")
        ->check(CLI::Range(1, 1000000));
    sweep_cmd
        ->add_option("--k", sw.k,
                     "Prior breadths: support 10^-k <= |mu| <= 10^k "
                     "(default 1 2 3 4 5)")
        ->expected(-1)
        ->check(CLI::Range(1, 300));
    sweep_cmd->add_option("--rel-tol", sw.rel_tol,
                          "Quadrature relative tolerance (default 1e-10)");
    sweep_cmd->add_flag("--diagnostic", sw.diagnostic,
                        "Append a local d(log B10)/d(ln n) slope column");
    sweep_cmd->callback([&] {
        apply_thread_cap(threads);
        lindley::SweepConfig config;
        config.t_values = sw.t;
        config.sigma = sw.sigma;
        config.n_grid = lindley::make_n_grid(sw.n_min, sw.n_max, sw.n_points);
        config.breadths.clear();
        for (int k : sw.k) {
            config.breadths.emplace_back(std::pow(10.0, -k), std::pow(10.0, k));
        }
        config.rel_tol = sw.rel_tol;
        std::vector<lindley::SweepRow> rows = lindley::run_sweep(config);

        std::ofstream file;
        std::ostream& os = open_output(out_path, file);
        if (!sw.diagnostic && format == "csv") {
            lindley::write_csv(os, rows);
            if (!os) throw std::runtime_error("failed writing output");
            return;
        }

        // Same row order as write_csv.
        std::stable_sort(rows.begin(), rows.end(),
                         [](const lindley::SweepRow& x, const lindley::SweepRow& y) {
                             if (x.t != y.t) return x.t < y.t;
                             if (x.a != y.a) return x.a < y.a;
                             return x.n < y.n;
                         });

        const double nan = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> slope(rows.size(), nan);
        if (sw.diagnostic) {
            std::size_t lo = 0;
            while (lo < rows.size()) {
                std::size_t hi = lo;
                while (hi < rows.size() && rows[hi].t == rows[lo].t &&
                       rows[hi].a == rows[lo].a && rows[hi].b == rows[lo].b) {
                    ++hi;
                }
                if (hi - lo >= 3) {
                    std::vector<lindley::SweepRow> group(rows.begin() + lo,
                                                         rows.begin() + hi);
                    std::vector<std::pair<double, double>> diag =
                        lindley::scaling_diagnostic(group);
                    for (std::size_t j = 0; j < diag.size(); ++j) {
                        slope[lo + 1 + j] = diag[j].second;
                    }
                }
                lo = hi;
            }
        }

        std::vector<std::vector<Field>> table;
        table.reserve(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const lindley::SweepRow& row = rows[i];
            std::vector<Field> record = {
                fnum("t", row.t),
                fnum("n", row.n),
                fnum("a", row.a),
                fnum("b", row.b),
                fnum("log_b10", row.log_b10),
                fnum("b10", std::exp(row.log_b10)),
                fnum("mu_hat", row.mu_hat),
                fflag("in_support", row.in_support),
            };
            if (sw.diagnostic) record.push_back(fnum("local_slope", slope[i]));
            table.push_back(std::move(record));
        }
        emit_table(os, format == "json-lines", table);
    });

    // ---- validate ----------------------------------------------------------
    struct {
        std::uint64_t trials = 50;
        std::uint64_t seed = 0;
        std::uint64_t samples = 1000000;
    } va;
    CLI::App* validate_cmd = app.add_subcommand(
        "validate",
        "Randomized quadrature-vs-Monte-Carlo cross-checks (exit 0 iff >= 98% "
        "of trials agree within 3 standard errors)");
    validate_cmd->fallthrough();
    validate_cmd->add_option("--trials", va.trials,
                             "Number of random configurations (default 50)");
    validate_cmd->add_option("--seed", va.seed, "Base seed (default 0)");
    validate_cmd->add_option("--samples", va.samples,
                             "Monte Carlo samples per trial (default 1000000)");
    validate_cmd->callback([&] {
        apply_thread_cap(threads);
        lindley::ValidationReport report =
            lindley::run_validation(va.trials, va.seed, va.samples);
        std::vector<std::vector<Field>> table;
        table.reserve(report.trials.size());
        for (std::size_t i = 0; i < report.trials.size(); ++i) {
            const lindley::TrialResult& trial = report.trials[i];
            table.push_back(
                {fnum("trial", static_cast<double>(i)),
                 fnum("t", trial.config.summary.t),
                 fnum("n", trial.config.summary.n),
                 fnum("sigma", trial.config.summary.sigma),
                 fnum("a", trial.config.prior.a), fnum("b", trial.config.prior.b),
                 fnum("exact_log_b10", trial.exact_log_b10),
                 fnum("mc_log_b10", trial.mc.log_b10),
                 fnum("mc_std_error", trial.mc.std_error), fnum("z", trial.z),
                 fflag("pass", trial.pass)});
        }
        std::ofstream file;
        std::ostream& os = open_output(out_path, file);
        emit_table(os, format == "json-lines", table);
        std::fprintf(stderr, "validate: %zu/%zu trials passed (%.1f%%)\n",
                     report.passed, report.trials.size(),
                     100.0 * report.pass_rate);
        exit_status = report.pass_rate >= 0.98 ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const lindley::DegenerateError& e) {
        std::cerr << "degenerate: " << e.what() << '\n';
        return 3;
    } catch (const lindley::ConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 4;
    } catch (const lindley::ConsistencyError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 4;
    }
    return exit_status;
}
