#include "nigarch/estimation.hpp"

#include "nigarch/errors.hpp"
#include "nigarch/nelder_mead.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string_view>

namespace nigarch {
namespace {

double sample_variance(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size() - 1);
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

Point<3> to_unconstrained(const GarchParams& p) {
    // exp(-inf) is not reachable; floor zero coefficients.
    constexpr double tiny = 1e-12;
    return {std::log(p.omega()), std::log(std::max(p.alpha(), tiny)), std::log(std::max(p.beta(), tiny))};
}

GarchParams from_unconstrained(const Point<3>& x) {
    return GarchParams(std::exp(x[0]), std::exp(x[1]), std::exp(x[2]));
}

}  // namespace

ReturnSeries ReturnSeries::prefix(std::size_t n) const {
    if (n > values.size()) throw std::invalid_argument("prefix longer than series");
    return {std::vector<double>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n)), origin};
}

double qmle_loglik(const GarchParams& params, const ReturnSeries& series) {
    const auto& y = series.values;
    if (y.size() < 2) throw std::invalid_argument("qmle_loglik needs N >= 2");
    double s2 = 0.0;
    for (double v : y) s2 += v * v;
    s2 /= static_cast<double>(y.size());

    const double omega = params.omega();
    const double alpha = params.alpha();
    const double beta = params.beta();
    double ll = 0.0;
    for (std::size_t k = 1; k < y.size(); ++k) {
        s2 = omega + alpha * y[k - 1] * y[k - 1] + beta * s2;
        if (!(s2 > 0.0) || !std::isfinite(s2)) {
            throw std::domain_error("quasi-likelihood not finite: sigma_k^2 = " + std::to_string(s2) +
                                    " at k=" + std::to_string(k + 1));
        }
        ll += std::log(s2) + y[k] * y[k] / s2;
    }
    return -0.5 * ll;
}

std::vector<GarchParams> default_starts(const ReturnSeries& series) {
    const double v = sample_variance(series.values);
    return {GarchParams(v * 0.1, 0.05, 0.85), GarchParams(v * 0.05, 0.10, 0.80),
            GarchParams(v * 0.01, 0.01, 0.98)};
}

QmleFit fit(const ReturnSeries& series, const std::optional<GarchParams>& init, const FitOptions& options) {
    if (series.size() < kMinFitLength) {
        throw std::invalid_argument("fit needs N >= " + std::to_string(kMinFitLength) + " observations, got " +
                                    std::to_string(series.size()));
    }
    for (double v : series.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("fit: series contains non-finite values");
    }
    if (!(sample_variance(series.values) > 0.0)) {
        throw std::invalid_argument("fit: degenerate series (zero sample variance)");
    }

    std::vector<GarchParams> starts = options.starts;
    if (init) starts.insert(starts.begin(), *init);
    if (options.starts.empty()) {
        for (const auto& s : default_starts(series)) starts.push_back(s);
    }

    const std::function<double(const Point<3>&)> objective = [&](const Point<3>& x) {
        for (double c : x) {
            if (!std::isfinite(c) || c > 700.0) return std::numeric_limits<double>::infinity();
        }
        try {
            return -qmle_loglik(from_unconstrained(x), series);
        } catch (const std::exception&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    NelderMeadOptions nm;
    nm.f_spread_tol = options.f_spread_tol;
    nm.max_iterations = options.max_iterations;

    QmleFit best;
    best.loglik = -std::numeric_limits<double>::infinity();
    for (const auto& start : starts) {
        // Restart from the incumbent until a fresh simplex no longer improves;
        // a collapsed simplex can stall short of the optimum.
        auto res = nelder_mead<3>(objective, to_unconstrained(start), nm);
        std::size_t iterations = res.iterations;
        for (int restart = 0; restart < 10; ++restart) {
            auto again = nelder_mead<3>(objective, res.x, nm);
            iterations += again.iterations;
            const bool improved = again.f < res.f - options.f_spread_tol;
            if (again.f <= res.f) res = again;
            if (!improved) break;
        }
        if (!std::isfinite(res.f)) continue;
        if (-res.f > best.loglik) {
            best.params = from_unconstrained(res.x);
            best.loglik = -res.f;
            best.converged = res.converged;
            best.iterations = iterations;
        }
    }
    if (!std::isfinite(best.loglik)) best.converged = false;
    return best;
}

std::vector<WindowFit> expanding_window_fit(const ReturnSeries& series, const std::vector<std::size_t>& windows,
                                            const FitOptions& options) {
    if (!std::is_sorted(windows.begin(), windows.end())) {
        throw std::invalid_argument("expanding_window_fit: windows must be sorted");
    }
    for (std::size_t w : windows) {
        if (w > series.size()) {
            throw std::invalid_argument("expanding_window_fit: window " + std::to_string(w) + " exceeds N=" +
                                        std::to_string(series.size()));
        }
    }
    std::vector<WindowFit> rows;
    rows.reserve(windows.size());
    for (std::size_t w : windows) {
        WindowFit row;
        row.n = w;
        row.fit = fit(series.prefix(w), std::nullopt, options);
        row.warning = !row.fit.converged;
        rows.push_back(std::move(row));
    }
    return rows;
}

ReturnSeries load_returns(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");

    std::vector<double> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && options.has_header) continue;
        if (trim(line).empty()) continue;

        std::string_view rest(line);
        std::string_view cell;
        for (std::size_t c = 0; c <= options.column; ++c) {
            if (rest.data() == nullptr) {
                throw ParseError("line " + std::to_string(lineno) + ": missing column " +
                                     std::to_string(options.column),
                                 lineno);
            }
            const auto pos = rest.find(options.delimiter);
            cell = rest.substr(0, pos);
            rest = pos == std::string_view::npos ? std::string_view{} : rest.substr(pos + 1);
        }
        cell = trim(cell);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
            throw ParseError("line " + std::to_string(lineno) + ": cannot parse '" + std::string(cell) +
                                 "' as a number",
                             lineno);
        }
        if (options.prices && !(v > 0.0)) {
            throw ParseError("line " + std::to_string(lineno) + ": non-positive price " + std::string(cell), lineno);
        }
        raw.push_back(v);
    }

    ReturnSeries series;
    if (!options.prices) {
        series.values = std::move(raw);
        series.origin = SeriesOrigin::RawReturns;
        return series;
    }
    series.origin = SeriesOrigin::LogDifferencedPrices;
    for (std::size_t i = 1; i < raw.size(); ++i) series.values.push_back(std::log(raw[i] / raw[i - 1]));
    return series;
}

}  // namespace nigarch
