#include "nigarch/ks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nigarch {

double kolmogorov_cdf(double x) {
    if (!(x > 0.0)) return 0.0;
    if (x < 0.3) {
        // Jacobi-theta form; the alternating series needs O(1/x) terms here.
        // sqrt(2 pi)/x sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 x^2))
        using std::numbers::pi;
        double sum = 0.0;
        for (int k = 1; k < 100; ++k) {
            const double odd = 2.0 * k - 1.0;
            const double term = std::exp(-odd * odd * pi * pi / (8.0 * x * x));
            sum += term;
            if (term < 1e-12 * sum || term == 0.0) break;
        }
        return std::sqrt(2.0 * pi) / x * sum;
    }
    // 1 - 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2)
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-12) break;
    }
    return std::clamp(1.0 - 2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& target_cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_test needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    for (double v : sorted) {
        if (!std::isfinite(v)) throw std::invalid_argument("ks_test: non-finite sample");
    }
    std::sort(sorted.begin(), sorted.end());

    const double m = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = target_cdf(sorted[i]);
        const double above = static_cast<double>(i + 1) / m - f;
        const double below = f - static_cast<double>(i) / m;
        d = std::max({d, above, below});
    }
    KsResult r;
    r.statistic = d;
    r.p_value = std::clamp(1.0 - kolmogorov_cdf(std::sqrt(m) * d), 0.0, 1.0);
    return r;
}

}  // namespace nigarch
