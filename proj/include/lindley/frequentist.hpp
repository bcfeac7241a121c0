#pragma once

namespace lindley {

// Two-sided p-value 2(1 - CDF(|t|)), computed as 2 CDF(-|t|) to stay
// accurate in the far tail. Depends only on t; the signature deliberately
// admits no sample size or standard deviation. Throws std::domain_error for
// non-finite t.
double p_value(double t);

}  // namespace lindley
