#pragma once

#include <functional>
#include <span>

namespace nigarch {

struct KsResult {
    double statistic = 0.0;  // D
    double p_value = 1.0;
};

/// P(K <= x) for the Kolmogorov limit law of sqrt(m) D_m.
double kolmogorov_cdf(double x);

/// One-sample two-sided Kolmogorov-Smirnov test with the asymptotic p-value
/// 1 - kolmogorov_cdf(sqrt(m) D). Throws std::invalid_argument on empty or
/// non-finite samples.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& target_cdf);

}  // namespace nigarch
