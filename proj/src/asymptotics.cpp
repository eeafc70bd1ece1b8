#include "nigarch/asymptotics.hpp"

#include "nigarch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nigarch {
namespace {

// |gamma| below this counts as an exact IGARCH model; it covers the rounding
// of alpha + (1 - alpha) - 1.
constexpr double kZeroGammaTol = 8.0 * std::numeric_limits<double>::epsilon();

void check_sign(TheoremId theorem, double gamma) {
    const GammaSign need = required_sign(theorem);
    bool ok = false;
    switch (need) {
        case GammaSign::Negative: ok = gamma < -kZeroGammaTol; break;
        case GammaSign::Zero: ok = std::abs(gamma) <= kZeroGammaTol; break;
        case GammaSign::Positive: ok = gamma > kZeroGammaTol; break;
    }
    if (!ok) {
        throw SignMismatchError("theorem " + to_string(theorem) + " needs gamma " + to_string(need) +
                                ", got gamma=" + std::to_string(gamma));
    }
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> t) : t_(std::move(t)) {
    if (t_.empty()) throw std::invalid_argument("time grid must be nonempty");
    for (std::size_t i = 0; i < t_.size(); ++i) {
        if (!(t_[i] > 0.0) || !(t_[i] <= 1.0)) {
            throw std::invalid_argument("time grid points must lie in (0, 1]");
        }
        if (i > 0 && !(t_[i] > t_[i - 1])) {
            throw std::invalid_argument("time grid must be strictly increasing");
        }
    }
}

std::vector<std::size_t> TimeGrid::indices(std::size_t n) const {
    std::vector<std::size_t> k(t_.size());
    for (std::size_t m = 0; m < t_.size(); ++m) {
        k[m] = static_cast<std::size_t>(std::floor(static_cast<double>(n) * t_[m]));
    }
    if (k.front() < 1) {
        throw std::invalid_argument("time grid: floor(n t_1) = 0 for n=" + std::to_string(n));
    }
    return k;
}

double geometric_sum(double gamma, std::size_t k) {
    if (k < 1) throw std::invalid_argument("geometric_sum needs k >= 1");
    const double km1 = static_cast<double>(k - 1);
    if (km1 == 0.0) return 0.0;
    if (gamma == 0.0) return km1;
    if (km1 * gamma > 700.0) {
        throw std::overflow_error("geometric_sum overflow: (k-1) gamma = " + std::to_string(km1 * gamma));
    }
    return std::exp(gamma) * std::expm1(km1 * gamma) / std::expm1(gamma);
}

double weighted_geometric_sum(double nu, double gamma, std::size_t k) {
    if (!(gamma < 0.0)) throw std::invalid_argument("weighted_geometric_sum needs gamma < 0");
    if (!(nu >= 0.0)) throw std::invalid_argument("weighted_geometric_sum needs nu >= 0");
    const double peak = nu / -gamma;
    double sum = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        const double jd = static_cast<double>(j);
        const double term = std::exp(nu * std::log(jd) + gamma * jd);
        sum += term;
        if (jd > peak && term < 1e-18 * sum) break;
    }
    return sum;
}

double gamma_asymptote(double nu, double gamma) {
    const double direct = std::tgamma(nu + 1.0) / std::pow(std::abs(gamma), nu + 1.0);
    if (std::isfinite(direct) && direct > 0.0) return direct;
    return std::exp(std::lgamma(nu + 1.0) - (nu + 1.0) * std::log(std::abs(gamma)));
}

double xi_variance(const InnovationSpec& innovation) { return innovation.xi_variance(); }

std::vector<double> theorem_statistic(TheoremId theorem, const Path& path, const GarchParams& params,
                                      std::size_t n, const TimeGrid& grid, double xi_var) {
    const double gamma = params.gamma();
    check_sign(theorem, gamma);
    if (!(xi_var > 0.0)) throw std::invalid_argument("xi variance must be positive");
    const auto ks = grid.indices(n);

    const bool uses_y = theorem == TheoremId::T22 || theorem == TheoremId::T24 || theorem == TheoremId::T26;
    const std::size_t limit = uses_y ? path.y.size() : path.sigma_sq.size();
    if (ks.back() >= limit) {
        throw std::invalid_argument("path too short for grid: need index " + std::to_string(ks.back()));
    }
    const double omega = params.omega();
    const double alpha = params.alpha();
    const double nd = static_cast<double>(n);
    const double xi_sd = std::sqrt(xi_var);
    if (!uses_y && !(alpha > 0.0)) {
        throw std::invalid_argument("theorem " + to_string(theorem) + " needs alpha > 0");
    }

    std::vector<double> out(ks.size());
    for (std::size_t m = 0; m < ks.size(); ++m) {
        const std::size_t k = ks[m];
        const double kd = static_cast<double>(k);
        switch (theorem) {
            case TheoremId::T21: {
                const double g = std::abs(gamma);
                const double scale = std::sqrt(2.0 * g * g * g) / alpha / xi_sd;
                out[m] = scale * (path.sigma_sq[k] / omega - geometric_sum(gamma, k));
                break;
            }
            case TheoremId::T22:
                out[m] = std::sqrt(std::abs(gamma) / omega) * path.y[k];
                break;
            case TheoremId::T23:
                out[m] = (path.sigma_sq[k] / omega - kd) / (nd * std::sqrt(nd) * alpha * xi_sd);
                break;
            case TheoremId::T24:
                out[m] = path.y[k] / std::sqrt(omega * kd);
                break;
            case TheoremId::T25: {
                const double scale = gamma * std::exp(-kd * gamma) / (alpha * std::sqrt(nd) * xi_sd);
                out[m] = scale * (path.sigma_sq[k] / omega - geometric_sum(gamma, k));
                break;
            }
            case TheoremId::T26:
                out[m] = std::sqrt(gamma / omega) * std::exp(-kd * gamma / 2.0) * path.y[k];
                break;
        }
    }
    return out;
}

TargetLaw target_covariance(TheoremId theorem, const TimeGrid& grid) {
    const auto N = static_cast<Eigen::Index>(grid.size());
    TargetLaw law;
    law.covariance = Eigen::MatrixXd::Identity(N, N);
    switch (theorem) {
        case TheoremId::T21:
            law.kind = TargetKind::IidStandardNormal;
            break;
        case TheoremId::T22:
        case TheoremId::T24:
        case TheoremId::T26:
            // eps has unit variance
            law.kind = TargetKind::IidInnovation;
            break;
        case TheoremId::T23:
            law.kind = TargetKind::GaussianCubicMin;
            for (Eigen::Index i = 0; i < N; ++i) {
                for (Eigen::Index j = 0; j < N; ++j) {
                    const double m = std::min(grid[i], grid[j]);
                    law.covariance(i, j) = m * m * m / 3.0;
                }
            }
            break;
        case TheoremId::T25:
            law.kind = TargetKind::WienerMarginals;
            for (Eigen::Index i = 0; i < N; ++i) {
                for (Eigen::Index j = 0; j < N; ++j) law.covariance(i, j) = std::min(grid[i], grid[j]);
            }
            break;
    }
    return law;
}

bool is_positive_semidefinite(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) return false;
    if (!m.isApprox(m.transpose(), 1e-14) && (m - m.transpose()).cwiseAbs().maxCoeff() > tol) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) return false;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return solver.eigenvalues().minCoeff() >= -tol * scale;
}

double oscillation_rate(GammaSign sign, std::size_t n, double q, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("oscillation_rate needs omega > 0");
    const double nd = static_cast<double>(n);
    if (sign == GammaSign::Zero) return std::sqrt(omega * nd);
    if (!(q > 0.5 && q < 1.0)) throw std::invalid_argument("oscillation_rate needs q in (1/2, 1)");
    const double power = std::sqrt(omega) * std::pow(nd, q / 2.0);
    if (sign == GammaSign::Negative) return power;
    const double half_exponent = std::pow(nd, 1.0 - q) / 2.0;
    if (half_exponent > 700.0) throw std::overflow_error("oscillation_rate overflow: n^{1-q}/2 > 700");
    return power * std::exp(half_exponent);
}

}  // namespace nigarch
