#include "lindley/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lindley {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr double kLogSqrt2Pi = 0.9189385332046727417803297;
constexpr double kInvSqrt2 = 0.7071067811865475244008444;
constexpr double kInvSqrtPi = 0.5641895835477562869480795;

// Rational Chebyshev approximations for erf/erfc (Cody's coefficients, as
// used by the netlib special-function library). Relative accuracy is close
// to double epsilon on each branch.
constexpr double kErfA[5] = {3.16112374387056560e00, 1.13864154151050156e02,
                             3.77485237685302021e02, 3.20937758913846947e03,
                             1.85777706184603153e-1};
constexpr double kErfB[4] = {2.36012909523441209e01, 2.44024637934444173e02,
                             1.28261652607737228e03, 2.84423683343917062e03};
constexpr double kErfC[9] = {5.64188496988670089e-1, 8.88314979438837594e00,
                             6.61191906371416295e01, 2.98635138197400131e02,
                             8.81952221241769090e02, 1.71204761263407058e03,
                             2.05107837782607147e03, 1.23033935479799725e03,
                             2.15311535474403846e-8};
constexpr double kErfD[8] = {1.57449261107098347e01, 1.17693950891312499e02,
                             5.37181101862009858e02, 1.62138957456669019e03,
                             3.29079923573345963e03, 4.36261909014324716e03,
                             3.43936767414372164e03, 1.23033935480374942e03};
constexpr double kErfP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                             1.25781726111229246e-1, 1.60837851487422766e-2,
                             6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kErfQ[5] = {2.56852019228982242e00, 1.87295284992346047e00,
                             5.27905102951428412e-1, 6.05183413124413191e-2,
                             2.33520497626869185e-3};

// erf on |x| <= 0.46875.
double erf_small(double x) {
    double z = x * x;
    double num = kErfA[4] * z;
    double den = z;
    for (int i = 0; i < 3; ++i) {
        num = (num + kErfA[i]) * z;
        den = (den + kErfB[i]) * z;
    }
    return x * (num + kErfA[3]) / (den + kErfB[3]);
}

// exp(-y^2) evaluated as exp(-q^2) exp(-(y-q)(y+q)) with q = y rounded to
// 1/16, which keeps the argument of each exp small enough that the product
// loses almost no accuracy.
double exp_neg_y_squared(double y) {
    double q = std::trunc(y * 16.0) / 16.0;
    double del = (y - q) * (y + q);
    return std::exp(-q * q) * std::exp(-del);
}

// erfc on 0.46875 < y <= 4.
double erfc_mid(double y) {
    double num = kErfC[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
        num = (num + kErfC[i]) * y;
        den = (den + kErfD[i]) * y;
    }
    return exp_neg_y_squared(y) * (num + kErfC[7]) / (den + kErfD[7]);
}

// erfc on y > 4.
double erfc_large(double y) {
    double z = 1.0 / (y * y);
    double num = kErfP[5] * z;
    double den = z;
    for (int i = 0; i < 4; ++i) {
        num = (num + kErfP[i]) * z;
        den = (den + kErfQ[i]) * z;
    }
    double r = z * (num + kErfP[4]) / (den + kErfQ[4]);
    return exp_neg_y_squared(y) * (kInvSqrtPi - r) / y;
}

double erfc_positive(double y) {
    if (y <= 0.46875) return 1.0 - erf_small(y);
    if (y <= 4.0) return erfc_mid(y);
    if (y >= 26.6) return 0.0;  // below the double underflow threshold
    return erfc_large(y);
}

double erfc_cody(double x) {
    if (x >= 0.0) return erfc_positive(x);
    return 2.0 - erfc_positive(-x);
}

}  // namespace

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double log_std_normal_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double std_normal_cdf(double x) { return 0.5 * erfc_cody(-x * kInvSqrt2); }

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1]
// (abscissae are symmetric; kXgk holds the non-negative half, with the Gauss
// subset at the odd indices and the center).
constexpr double kXgk[8] = {
    0.9914553711208126392069, 0.9491079123427585245262, 0.8648644233597690727897,
    0.7415311855993944398639, 0.5860872354676911302941, 0.4058451513773971669066,
    0.2077849550078984676007, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292249637, 0.0630920926299785532907, 0.1047900103222501838399,
    0.1406532597155259187452, 0.1690047266392679028266, 0.1903505780647854099133,
    0.2044329400752988924142, 0.2094821410847278280130};
constexpr double kWg[4] = {
    0.1294849661688696932706, 0.2797053914892766679015, 0.3818300505051189449504,
    0.4179591836734693877551};

struct Panel {
    double lo;
    double hi;
    double log_value;  // log of the panel integral
    double log_error;  // log of the panel's absolute error estimate
};

// Evaluates one Gauss-Kronrod panel in log space: the maximum of the log
// integrand over the nodes is subtracted before exponentiating, so panels
// whose true integral underflows a linear double still come out with full
// relative accuracy.
Panel evaluate_panel(const std::function<double(double)>& f, double lo, double hi) {
    double center = 0.5 * (lo + hi);
    double half = 0.5 * (hi - lo);

    double logf[15];
    double peak = -kInf;
    for (int i = 0; i < 7; ++i) {
        double v_lo = f(center - half * kXgk[i]);
        double v_hi = f(center + half * kXgk[i]);
        if (std::isnan(v_lo) || std::isnan(v_hi)) {
            throw std::domain_error("integrate_log_space: integrand returned NaN");
        }
        logf[i] = v_lo;
        logf[14 - i] = v_hi;
        peak = std::max(peak, std::max(v_lo, v_hi));
    }
    double v_c = f(center);
    if (std::isnan(v_c)) {
        throw std::domain_error("integrate_log_space: integrand returned NaN");
    }
    logf[7] = v_c;
    peak = std::max(peak, v_c);

    if (peak == -kInf) {
        return {lo, hi, -kInf, -kInf};  // integrand vanishes on this panel
    }

    double kronrod = kWgk[7] * std::exp(logf[7] - peak);
    double gauss = kWg[3] * std::exp(logf[7] - peak);
    for (int i = 0; i < 7; ++i) {
        double pair = std::exp(logf[i] - peak) + std::exp(logf[14 - i] - peak);
        kronrod += kWgk[i] * pair;
        if (i % 2 == 1) gauss += kWg[i / 2] * pair;
    }

    double log_value = kronrod > 0.0 ? peak + std::log(half * kronrod) : -kInf;
    double diff = std::fabs(kronrod - gauss);
    double log_error = diff > 0.0 ? peak + std::log(half * diff) : -kInf;
    // A panel narrower than the local floating-point resolution has every
    // node rounding to one representable u, so Kronrod and Gauss agree
    // exactly and the panel would claim perfect accuracy while actually
    // sampling a single point. Report 100% relative uncertainty instead.
    if (center - half * kXgk[0] == center + half * kXgk[0]) {
        log_error = log_value;
    }
    return {lo, hi, log_value, log_error};
}

struct Totals {
    double log_value;
    double rel_error;
};

// log-sum-exp of panel values and error estimates.
Totals combine(const std::vector<Panel>& panels) {
    double max_v = -kInf;
    double max_e = -kInf;
    for (const Panel& p : panels) {
        max_v = std::max(max_v, p.log_value);
        max_e = std::max(max_e, p.log_error);
    }
    if (max_v == -kInf) {
        return {-kInf, 0.0};
    }
    double sum_v = 0.0;
    double sum_e = 0.0;
    for (const Panel& p : panels) {
        if (p.log_value != -kInf) sum_v += std::exp(p.log_value - max_v);
        if (max_e != -kInf && p.log_error != -kInf)
            sum_e += std::exp(p.log_error - max_e);
    }
    double log_value = max_v + std::log(sum_v);
    double rel_error =
        max_e == -kInf ? 0.0 : std::exp(max_e + std::log(sum_e) - log_value);
    return {log_value, rel_error};
}

}  // namespace

QuadratureResult integrate_log_space(const std::function<double(double)>& log_integrand,
                                     double u_lo, double u_hi,
                                     const QuadratureOptions& options) {
    if (std::isnan(u_lo) || std::isnan(u_hi) || !(u_lo < u_hi)) {
        throw std::domain_error("integrate_log_space: requires u_lo < u_hi");
    }
    if (!(options.rel_tol > 0.0)) {
        throw std::domain_error("integrate_log_space: rel_tol must be positive");
    }

    std::vector<double> edges;
    edges.push_back(u_lo);
    std::vector<double> splits = options.split_points;
    std::sort(splits.begin(), splits.end());
    for (double s : splits) {
        if (s > edges.back() && s < u_hi) edges.push_back(s);
    }
    edges.push_back(u_hi);

    std::vector<Panel> panels;
    panels.reserve(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        panels.push_back(evaluate_panel(log_integrand, edges[i], edges[i + 1]));
    }

    int subdivisions = 0;
    double best_rel_error = kInf;
    int stagnant = 0;
    while (true) {
        Totals totals = combine(panels);
        if (totals.log_value == -kInf) {
            return {-kInf, 0.0, subdivisions};
        }
        if (totals.rel_error <= options.rel_tol) {
            return {totals.log_value, totals.rel_error, subdivisions};
        }
        if (subdivisions >= options.max_subdivisions) {
            throw ConvergenceError(
                "integrate_log_space: subdivision limit reached before tolerance",
                totals.log_value, totals.rel_error, subdivisions);
        }
        // When the integrand itself cannot be evaluated more accurately (for
        // example one ulp of rounding inside it moves its log by more than
        // the tolerance), further bisection stops improving the estimate.
        // Detect the stall rather than burning the whole subdivision budget.
        if (totals.rel_error < 0.995 * best_rel_error) {
            best_rel_error = totals.rel_error;
            stagnant = 0;
        } else if (++stagnant >= 48) {
            throw ConvergenceError(
                "integrate_log_space: error estimate stopped improving "
                "(round-off floor) before tolerance",
                totals.log_value, totals.rel_error, subdivisions);
        }

        // Split the worst panel that is still wide enough to bisect. Panels
        // within a few ulps of the local floating-point resolution are frozen
        // with their current error estimate: halving them cannot place new
        // nodes between existing representable points.
        std::size_t worst = panels.size();
        for (std::size_t i = 0; i < panels.size(); ++i) {
            const Panel& candidate = panels[i];
            double scale =
                std::max({std::fabs(candidate.lo), std::fabs(candidate.hi), 1e-300});
            bool splittable = candidate.hi - candidate.lo >
                              8.0 * std::numeric_limits<double>::epsilon() * scale;
            if (splittable &&
                (worst == panels.size() ||
                 candidate.log_error > panels[worst].log_error)) {
                worst = i;
            }
        }
        if (worst == panels.size()) {
            throw ConvergenceError(
                "integrate_log_space: remaining panels are at floating-point "
                "resolution",
                totals.log_value, totals.rel_error, subdivisions);
        }
        Panel p = panels[worst];
        double mid = 0.5 * (p.lo + p.hi);
        if (!(mid > p.lo && mid < p.hi)) {
            // Backstop; unreachable given the splittable-width filter above.
            throw ConvergenceError(
                "integrate_log_space: panel width reached floating-point resolution",
                totals.log_value, totals.rel_error, subdivisions);
        }
        panels[worst] = evaluate_panel(log_integrand, p.lo, mid);
        panels.push_back(evaluate_panel(log_integrand, mid, p.hi));
        ++subdivisions;
    }
}

QuadratureResult integrate_log_space(const std::function<double(double)>& log_integrand,
                                     double u_lo, double u_hi, double rel_tol) {
    QuadratureOptions options;
    options.rel_tol = rel_tol;
    return integrate_log_space(log_integrand, u_lo, u_hi, options);
}

}  // namespace lindley
