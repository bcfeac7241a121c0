#include "lindley/frequentist.hpp"

#include <cmath>
#include <stdexcept>

#include "lindley/numerics.hpp"

namespace lindley {

double p_value(double t) {
    if (!std::isfinite(t)) {
        throw std::domain_error("p_value: t must be finite");
    }
    // 2 CDF(-|t|) is the cancellation-free form of 2 (1 - CDF(|t|)).
    return 2.0 * std_normal_cdf(-std::fabs(t));
}

}  // namespace lindley
