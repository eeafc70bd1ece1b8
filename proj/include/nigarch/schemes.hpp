#pragma once

#include "nigarch/innovation.hpp"
#include "nigarch/params.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nigarch {

enum class GammaSign { Negative, Zero, Positive };

GammaSign parse_gamma_sign(std::string_view text);
std::string to_string(GammaSign sign);
double sign_value(GammaSign sign);

enum class TheoremId { T21, T22, T23, T24, T25, T26 };

TheoremId parse_theorem(std::string_view text);
std::string to_string(TheoremId id);
GammaSign required_sign(TheoremId id);

/// Power-law near-integrated family: alpha_n = n^{-a}, gamma_n = sign n^{-q},
/// beta_n = 1 + gamma_n - alpha_n.
///
/// q is ignored for sign = zero. Construction rejects exponents outside
/// (1/2, 1), a negative scheme with 3q/2 <= a, a positive scheme with q < a,
/// and innovation laws without a finite moment of order 4 + delta.
class Scheme {
public:
    Scheme(GammaSign sign, double q, double a, double omega, InnovationSpec innovation,
           std::optional<double> delta = std::nullopt);

    GammaSign sign() const noexcept { return sign_; }
    double q() const noexcept { return q_; }
    double a() const noexcept { return a_; }
    double omega() const noexcept { return omega_; }
    const InnovationSpec& innovation() const noexcept { return innovation_; }
    double delta() const noexcept { return delta_; }

    /// Flat key=value lines: sign, q, a, omega, law, nu, delta.
    std::string to_config() const;
    static Scheme from_config(std::string_view text);
    static Scheme from_map(const std::map<std::string, std::string>& kv);

private:
    GammaSign sign_;
    double q_;
    double a_;
    double omega_;
    InnovationSpec innovation_;
    double delta_;
};

/// Model M_n of the scheme. Throws InfeasibleSchemeError when beta < 0.
GarchParams scheme_params(const Scheme& scheme, std::size_t n);

enum class Requirement { Required, Implied, NotRequired };
enum class Verdict { Holds, Fails };

std::string to_string(Requirement r);
std::string to_string(Verdict v);

struct AssumptionRow {
    std::string id;           // "2.9" .. "2.22"
    std::string statement;    // e.g. "n^{1/2} alpha -> 0"
    Requirement requirement = Requirement::NotRequired;
    Verdict verdict = Verdict::Holds;  // asymptotic, by exponent arithmetic
    double witness = 0.0;              // the quantity evaluated at n
};

struct AssumptionReport {
    TheoremId theorem = TheoremId::T21;
    std::size_t n = 0;
    std::vector<AssumptionRow> rows;  // always nine, fixed order
    bool regime_mismatch = false;     // scheme sign differs from the theorem's
    bool overflow_risk = false;       // n gamma > 600
    bool beta_feasible = true;        // 1 + gamma - alpha >= 0

    /// Every Required row holds, sign matches and beta is feasible.
    bool ok() const noexcept;
    std::vector<std::string> failures() const;
};

inline constexpr double kOverflowRiskThreshold = 600.0;

/// log log x with the convention log log x = 1 for x < 4.
double loglog(double x);

/// Checks every assumption the theorem needs, asymptotically and at n.
/// Never throws for a constructible scheme.
AssumptionReport validate_assumptions(const Scheme& scheme, std::size_t n, TheoremId theorem);

}  // namespace nigarch
