#pragma once

#include "nigarch/innovation.hpp"
#include "nigarch/params.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nigarch {

/// One GARCH(1,1) trajectory.
///
/// sigma_sq holds sigma_0^2 .. sigma_n^2. eps and y hold the realized
/// innovations and returns, y[k] = sqrt(sigma_sq[k]) * eps[k]. A path from
/// simulate() is closed: eps and y also have n + 1 entries. A path replayed
/// from caller-supplied innovations eps_0 .. eps_{n-1} is open: its last
/// conditional variance sigma_n^2 has no realized return, so eps and y have
/// n entries.
struct Path {
    std::vector<double> sigma_sq;
    std::vector<double> y;
    std::vector<double> eps;

    std::size_t n() const noexcept { return sigma_sq.empty() ? 0 : sigma_sq.size() - 1; }
    bool closed() const noexcept { return eps.size() == sigma_sq.size(); }
};

/// Additive expansion of sigma_k^2 against the exact recursion.
struct AdditiveDecomposition {
    std::size_t k = 0;
    double main_value = 0.0;
    double exact_value = 0.0;
    double relative_error = 0.0;
    /// k (alpha^2 + gamma^2), the order of the leading remainder.
    double predicted_order = 0.0;
};

enum class LyapunovVerdict { Negative, Positive, Inconclusive };

struct LyapunovEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    /// Sign of E log(beta + alpha eps^2) at three standard errors.
    LyapunovVerdict verdict = LyapunovVerdict::Inconclusive;
};

/// Draws eps_0 .. eps_n from `innovation` seeded by `seed`, sets
/// y_0 = sigma_0 eps_0 and runs sigma_k^2 = omega + alpha y_{k-1}^2 + beta sigma_{k-1}^2.
/// Throws ExplosionError naming the first k whose sigma_k^2 is not finite.
Path simulate(const GarchParams& params, const InnovationSpec& innovation, std::size_t n,
              double sigma0_sq, std::uint64_t seed);

/// Same recursion driven by eps_0 .. eps_{m-1}; returns an open path with n = m.
Path simulate_with_innovations(const GarchParams& params, std::span<const double> eps,
                               double sigma0_sq);

/// Multiplicative (Volterra) product expansion of sigma_k^2, consuming
/// eps_0 .. eps_{k-1}. The backward partial products are accumulated in
/// one O(k) pass.
double volterra_sigma_sq(const GarchParams& params, double sigma0_sq, std::span<const double> eps,
                         std::size_t k);

/// The same product expansion for every k = 0 .. m at once, in O(m):
/// sigma_k^2 = e^{L_k} (sigma0^2 + omega sum_{j=1..k} e^{-L_j}) with
/// L_k = sum_{i<k} log(beta + alpha eps_i^2) kept as a compensated prefix sum
/// and the inner sum carried in log space.
std::vector<double> volterra_sigma_sq_path(const GarchParams& params, double sigma0_sq,
                                           std::span<const double> eps);

/// Additive representation with all remainder terms set to zero, compared
/// against the recursion on the same innovations.
AdditiveDecomposition additive_sigma_sq(const GarchParams& params, double sigma0_sq,
                                        std::span<const double> eps, std::size_t k);

/// |y_k^2 - (omega + (alpha + beta) y_{k-1}^2 + e_k - beta e_{k-1})| for
/// k = 1 .. last realized index, with e_k = (eps_k^2 - 1) sigma_k^2.
/// Entry 0 is zero.
std::vector<double> arma_residuals(const Path& path, const GarchParams& params);

/// Maximum of arma_residuals().
double arma_residual_check(const Path& path, const GarchParams& params);

/// Monte Carlo estimate of E log(beta + alpha eps_0^2) over m draws.
LyapunovEstimate lyapunov_estimate(const GarchParams& params, const InnovationSpec& innovation,
                                   std::size_t m, std::uint64_t seed);

/// sigma_0^2 used when the caller gives none. Experiments start every path
/// from omega, which keeps the initial-value terms negligible in all regimes.
double default_sigma0_sq(const GarchParams& params);

}  // namespace nigarch
