#include "nigarch/garch.hpp"

#include "nigarch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nigarch {
namespace {

void require_sigma0(double sigma0_sq) {
    if (!std::isfinite(sigma0_sq) || !(sigma0_sq > 0.0)) {
        throw std::invalid_argument("sigma0_sq must be positive and finite");
    }
}

[[noreturn]] void explode(std::size_t k) {
    throw ExplosionError("conditional variance exploded (non-finite sigma_k^2) at k=" +
                             std::to_string(k),
                         k);
}

// Fills sigma_sq[1..] and y[0..] in place. eps.size() is either
// sigma_sq.size() (closed) or sigma_sq.size() - 1 (open).
void run_recursion(const GarchParams& p, std::span<const double> eps, Path& path) {
    const double omega = p.omega();
    const double alpha = p.alpha();
    const double beta = p.beta();
    const std::size_t n = path.n();
    path.y.resize(eps.size());
    path.eps.assign(eps.begin(), eps.end());

    double s2 = path.sigma_sq[0];
    path.y[0] = std::sqrt(s2) * eps[0];
    for (std::size_t k = 1; k <= n; ++k) {
        const double y_prev = path.y[k - 1];
        s2 = omega + alpha * y_prev * y_prev + beta * s2;
        if (!std::isfinite(s2)) explode(k);
        path.sigma_sq[k] = s2;
        if (k < eps.size()) path.y[k] = std::sqrt(s2) * eps[k];
    }
}

// sigma_k^2 by the plain recursion over eps_0 .. eps_{k-1}.
double recursion_value(const GarchParams& p, double sigma0_sq, std::span<const double> eps,
                       std::size_t k) {
    double s2 = sigma0_sq;
    for (std::size_t i = 1; i <= k; ++i) {
        const double e = eps[i - 1];
        s2 = p.omega() + (p.alpha() * e * e + p.beta()) * s2;
        if (!std::isfinite(s2)) explode(i);
    }
    return s2;
}

void require_index(std::span<const double> eps, std::size_t k) {
    if (k < 1 || k > eps.size()) {
        throw std::invalid_argument("index k=" + std::to_string(k) + " outside [1, " +
                                    std::to_string(eps.size()) + "]");
    }
}

}  // namespace

Path simulate(const GarchParams& params, const InnovationSpec& innovation, std::size_t n,
              double sigma0_sq, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("simulate needs n >= 1");
    require_sigma0(sigma0_sq);
    std::vector<double> eps(n + 1);
    InnovationSampler sampler(innovation, seed);
    sampler.fill(eps);

    Path path;
    path.sigma_sq.assign(n + 1, 0.0);
    path.sigma_sq[0] = sigma0_sq;
    run_recursion(params, eps, path);
    return path;
}

Path simulate_with_innovations(const GarchParams& params, std::span<const double> eps,
                               double sigma0_sq) {
    if (eps.empty()) throw std::invalid_argument("simulate_with_innovations needs eps nonempty");
    require_sigma0(sigma0_sq);
    Path path;
    path.sigma_sq.assign(eps.size() + 1, 0.0);
    path.sigma_sq[0] = sigma0_sq;
    run_recursion(params, eps, path);
    return path;
}

double volterra_sigma_sq(const GarchParams& params, double sigma0_sq, std::span<const double> eps,
                         std::size_t k) {
    require_sigma0(sigma0_sq);
    require_index(eps, k);
    const double alpha = params.alpha();
    const double beta = params.beta();

    // P_j = prod_{i=1..j} (beta + alpha eps_{k-i}^2), j = 1 .. k.
    double product = 1.0;
    double bracket = 1.0;
    for (std::size_t j = 1; j < k; ++j) {
        const double e = eps[k - j];
        product *= beta + alpha * e * e;
        bracket += product;
        if (!std::isfinite(bracket)) explode(k);
    }
    product *= beta + alpha * eps[0] * eps[0];
    const double value = sigma0_sq * product + params.omega() * bracket;
    if (!std::isfinite(value)) explode(k);
    return value;
}

std::vector<double> volterra_sigma_sq_path(const GarchParams& params, double sigma0_sq,
                                           std::span<const double> eps) {
    require_sigma0(sigma0_sq);
    const double alpha = params.alpha();
    const double beta = params.beta();
    double log_s0 = std::log(sigma0_sq);
    const double log_omega = std::log(params.omega());

    std::vector<double> out(eps.size() + 1);
    out[0] = sigma0_sq;
    double level = 0.0;  // L_k, Neumaier-compensated
    double carry = 0.0;
    double log_inner = -std::numeric_limits<double>::infinity();  // log sum_{j<=k} e^{-L_j}
    for (std::size_t k = 1; k <= eps.size(); ++k) {
        const double e = eps[k - 1];
        const double factor = beta + alpha * e * e;
        if (factor == 0.0) {
            // every earlier term is multiplied by zero: start afresh from sigma_k^2 = omega
            out[k] = params.omega();
            log_s0 = log_omega;
            level = carry = 0.0;
            log_inner = -std::numeric_limits<double>::infinity();
            continue;
        }
        const double term = std::log(factor);
        const double t = level + term;
        carry += std::abs(level) >= std::abs(term) ? (level - t) + term : (term - t) + level;
        level = t;
        const double L = level + carry;

        const double x = -L;
        log_inner = log_inner > x ? log_inner + std::log1p(std::exp(x - log_inner))
                                  : x + std::log1p(std::exp(log_inner - x));
        const double a = L + log_s0;
        const double b = L + log_inner + log_omega;
        const double value = a > b ? std::exp(a) * (1.0 + std::exp(b - a)) : std::exp(b) * (1.0 + std::exp(a - b));
        if (!std::isfinite(value)) explode(k);
        out[k] = value;
    }
    return out;
}

AdditiveDecomposition additive_sigma_sq(const GarchParams& params, double sigma0_sq,
                                        std::span<const double> eps, std::size_t k) {
    require_sigma0(sigma0_sq);
    require_index(eps, k);
    const double alpha = params.alpha();
    const double gamma = params.gamma();
    auto xi = [&](std::size_t idx) { return eps[idx] * eps[idx] - 1.0; };

    // Initial-value term: sigma0^2 e^{k gamma} (1 + alpha sum_{j=1..k} xi_{k-j}).
    double xi_sum = 0.0;
    for (std::size_t j = 1; j <= k; ++j) xi_sum += xi(k - j);
    const double initial = sigma0_sq * std::exp(static_cast<double>(k) * gamma) * (1.0 + alpha * xi_sum);

    // sum_{j=1..k-1} e^{j gamma} sum_{i=1..j} xi_{k-i}
    //   = sum_{i=1..k-1} xi_{k-i} W_i,  W_i = sum_{j=i..k-1} e^{j gamma}.
    double weight = 0.0;
    double weighted = 0.0;
    for (std::size_t i = k - 1; i >= 1; --i) {
        weight += std::exp(static_cast<double>(i) * gamma);
        weighted += xi(k - i) * weight;
    }
    // After the loop `weight` is W_1 = sum_{j=1..k-1} e^{j gamma}.
    const double drift = params.omega() * (1.0 + weight + alpha * weighted);

    AdditiveDecomposition out;
    out.k = k;
    out.main_value = initial + drift;
    if (!std::isfinite(out.main_value)) explode(k);
    out.exact_value = recursion_value(params, sigma0_sq, eps, k);
    out.relative_error = std::abs(out.main_value - out.exact_value) / out.exact_value;
    out.predicted_order = static_cast<double>(k) * (alpha * alpha + gamma * gamma);
    return out;
}

std::vector<double> arma_residuals(const Path& path, const GarchParams& params) {
    const double omega = params.omega();
    const double persistence = params.alpha() + params.beta();
    const double beta = params.beta();
    const std::size_t last = path.eps.size();
    std::vector<double> res(last, 0.0);
    if (last == 0) return res;

    auto e_at = [&](std::size_t k) { return (path.eps[k] * path.eps[k] - 1.0) * path.sigma_sq[k]; };
    double e_prev = e_at(0);
    for (std::size_t k = 1; k < last; ++k) {
        const double e_k = e_at(k);
        const double y_prev = path.y[k - 1];
        const double lhs = path.y[k] * path.y[k];
        const double rhs = omega + persistence * y_prev * y_prev + e_k - beta * e_prev;
        res[k] = std::abs(lhs - rhs);
        e_prev = e_k;
    }
    return res;
}

double arma_residual_check(const Path& path, const GarchParams& params) {
    const auto res = arma_residuals(path, params);
    return res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
}

LyapunovEstimate lyapunov_estimate(const GarchParams& params, const InnovationSpec& innovation,
                                   std::size_t m, std::uint64_t seed) {
    const double alpha = params.alpha();
    const double beta = params.beta();
    if (beta == 0.0 && (alpha == 0.0 || innovation.has_atom_at_zero())) {
        throw std::invalid_argument(
            "Lyapunov integrand log(beta + alpha eps^2) is -inf with positive probability");
    }
    LyapunovEstimate est;
    if (alpha == 0.0) {
        est.mean = std::log(beta);
        est.std_error = 0.0;
    } else {
        if (m < 2) throw std::invalid_argument("lyapunov_estimate needs m >= 2");
        InnovationSampler sampler(innovation, seed);
        // Welford
        double mean = 0.0;
        double m2 = 0.0;
        for (std::size_t i = 1; i <= m; ++i) {
            const double e = sampler();
            const double v = std::log(beta + alpha * e * e);
            const double d = v - mean;
            mean += d / static_cast<double>(i);
            m2 += d * (v - mean);
        }
        est.mean = mean;
        est.std_error = std::sqrt(m2 / static_cast<double>(m - 1) / static_cast<double>(m));
    }
    if (est.mean + 3.0 * est.std_error < 0.0) {
        est.verdict = LyapunovVerdict::Negative;
    } else if (est.mean - 3.0 * est.std_error > 0.0) {
        est.verdict = LyapunovVerdict::Positive;
    } else {
        est.verdict = LyapunovVerdict::Inconclusive;
    }
    return est;
}

double default_sigma0_sq(const GarchParams& params) { return params.omega(); }

}  // namespace nigarch
