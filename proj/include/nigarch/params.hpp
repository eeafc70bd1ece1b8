#pragma once

#include <string>

namespace nigarch {

/// GARCH(1,1) coefficients (omega, alpha, beta).
///
/// Construction enforces omega > 0, alpha >= 0, beta >= 0. The persistence
/// gap gamma = alpha + beta - 1 is derived on demand, never stored.
class GarchParams {
public:
    GarchParams(double omega, double alpha, double beta);

    double omega() const noexcept { return omega_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    /// alpha + (beta - 1); the subtraction is exact for beta in [0.5, 2].
    double gamma() const noexcept { return alpha_ + (beta_ - 1.0); }

    std::string to_string() const;

    friend bool operator==(const GarchParams&, const GarchParams&) = default;

private:
    double omega_;
    double alpha_;
    double beta_;
};

}  // namespace nigarch
