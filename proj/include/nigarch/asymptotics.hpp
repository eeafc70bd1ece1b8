#pragma once

#include "nigarch/garch.hpp"
#include "nigarch/innovation.hpp"
#include "nigarch/params.hpp"
#include "nigarch/schemes.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace nigarch {

/// Fractions 0 < t_1 < ... < t_N <= 1 at which paths are sampled, k = floor(n t).
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> t);

    const std::vector<double>& values() const noexcept { return t_; }
    std::size_t size() const noexcept { return t_.size(); }
    double operator[](std::size_t i) const { return t_[i]; }

    /// floor(n t_m); throws when the first index is 0 or any exceeds n.
    std::vector<std::size_t> indices(std::size_t n) const;

private:
    std::vector<double> t_;
};

enum class TargetKind {
    IidStandardNormal,   // T21
    IidInnovation,       // T22, T24, T26
    GaussianCubicMin,    // T23: cov (1/3) min(t_i, t_j)^3
    WienerMarginals,     // T25: cov min(t_i, t_j)
};

struct TargetLaw {
    TargetKind kind = TargetKind::IidStandardNormal;
    Eigen::MatrixXd covariance;
};

/// sum_{j=1}^{k-1} e^{j gamma} via e^gamma expm1((k-1) gamma) / expm1(gamma);
/// equals k - 1 at gamma = 0. Throws std::overflow_error if (k-1) gamma > 700.
double geometric_sum(double gamma, std::size_t k);

/// sum_{j=1}^{k} j^nu e^{gamma j} for gamma < 0, summed directly and cut off
/// once past the peak the terms drop below 1e-18 of the running total.
double weighted_geometric_sum(double nu, double gamma, std::size_t k);

/// Gamma(nu + 1) / |gamma|^{nu + 1}, the |gamma| -> 0 asymptote of
/// weighted_geometric_sum.
double gamma_asymptote(double nu, double gamma);

/// E xi_0^2 = E eps^4 - 1.
double xi_variance(const InnovationSpec& innovation);

/// Normalized statistic of the named limit theorem at every grid point.
///
///   t21: sqrt(2|g|^3)/alpha / sqrt(Exi^2) * (sigma_k^2/omega - G(g, k))
///   t22: (|g|/omega)^{1/2} y_k
///   t23: 1/(n^{3/2} alpha sqrt(Exi^2)) * (sigma_k^2/omega - k)
///   t24: (omega k)^{-1/2} y_k
///   t25: g e^{-k g} / (alpha n^{1/2} sqrt(Exi^2)) * (sigma_k^2/omega - G(g, k))
///   t26: (g/omega)^{1/2} e^{-k g/2} y_k
///
/// with k = floor(n t_m) and G = geometric_sum. The t25 normalization uses
/// n^{1/2}, which is what makes the limit a Wiener process W(t_m).
/// Throws SignMismatchError if sign(gamma) does not fit the theorem.
std::vector<double> theorem_statistic(TheoremId theorem, const Path& path, const GarchParams& params,
                                      std::size_t n, const TimeGrid& grid, double xi_var);

TargetLaw target_covariance(TheoremId theorem, const TimeGrid& grid);

/// Symmetric with nonnegative eigenvalues (up to a small tolerance).
bool is_positive_semidefinite(const Eigen::MatrixXd& m, double tol = 1e-12);

/// Rate at which |y_n| grows: omega^{1/2} n^{q/2} (negative),
/// omega^{1/2} n^{1/2} (zero), omega^{1/2} n^{q/2} e^{n^{1-q}/2} (positive).
double oscillation_rate(GammaSign sign, std::size_t n, double q, double omega);

}  // namespace nigarch
