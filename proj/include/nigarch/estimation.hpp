#pragma once

#include "nigarch/params.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nigarch {

enum class SeriesOrigin { RawReturns, LogDifferencedPrices };

struct ReturnSeries {
    std::vector<double> values;
    SeriesOrigin origin = SeriesOrigin::RawReturns;

    std::size_t size() const noexcept { return values.size(); }
    /// First `n` observations.
    ReturnSeries prefix(std::size_t n) const;
};

inline constexpr std::size_t kMinFitLength = 50;
inline constexpr const char* kInitialVarianceConvention =
    "sigma_1^2 = mean of squared returns; likelihood summed over k = 2..N";

struct QmleFit {
    GarchParams params{1.0, 0.0, 0.0};
    double loglik = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    std::string initial_variance_convention = kInitialVarianceConvention;

    double gamma() const noexcept { return params.gamma(); }
};

struct FitOptions {
    double f_spread_tol = 1e-8;
    std::size_t max_iterations = 2000;
    /// Starting points; the three defaults are used when empty.
    std::vector<GarchParams> starts;
};

/// Gaussian quasi log-likelihood, constants dropped:
/// -(1/2) sum_{k=2..N} (log sigma_k^2 + y_k^2 / sigma_k^2), with sigma_1^2 the
/// mean of squared returns.
double qmle_loglik(const GarchParams& params, const ReturnSeries& series);

/// (v 0.1, 0.05, 0.85), (v 0.05, 0.10, 0.80), (v 0.01, 0.01, 0.98) with v the sample variance.
std::vector<GarchParams> default_starts(const ReturnSeries& series);

/// Maximizes qmle_loglik over omega = e^u, alpha = e^v, beta = e^w with a
/// Nelder-Mead simplex from each start, keeping the best. alpha + beta is
/// left unconstrained. Non-convergence is reported in the result.
QmleFit fit(const ReturnSeries& series, const std::optional<GarchParams>& init = std::nullopt,
            const FitOptions& options = {});

struct WindowFit {
    std::size_t n = 0;
    QmleFit fit;
    /// Set when the optimizer did not converge; the row is kept but flagged.
    bool warning = false;
};

/// One fit per prefix {1..n} for each window, rows in window order.
std::vector<WindowFit> expanding_window_fit(const ReturnSeries& series, const std::vector<std::size_t>& windows,
                                            const FitOptions& options = {});

struct LoadOptions {
    std::size_t column = 0;
    bool has_header = false;
    bool prices = false;
    char delimiter = ',';
};

/// Reads one column of delimiter-separated text. In prices mode returns
/// log(p_t / p_{t-1}). Throws ParseError with the 1-based line number and
/// IoError when the file cannot be read.
ReturnSeries load_returns(const std::filesystem::path& path, const LoadOptions& options = {});

}  // namespace nigarch
