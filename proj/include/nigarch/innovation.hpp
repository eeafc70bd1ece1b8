#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace nigarch {

enum class InnovationLaw { StandardNormal, ScaledUniform, ScaledStudentT };

/// Law of the i.i.d. innovations eps_k, normalized to E eps^2 = 1.
///
/// Admissible laws have 1 < E eps^4 < inf.
/// ScaledStudentT is t_nu * sqrt((nu - 2) / nu) and needs nu > 4.
class InnovationSpec {
public:
    static InnovationSpec standard_normal();
    /// Uniform on [-sqrt(3), sqrt(3)].
    static InnovationSpec scaled_uniform();
    static InnovationSpec scaled_student_t(double nu);

    /// Parses "normal", "uniform" or "student:<nu>". Also recognizes
    /// "rademacher", which is rejected (eps^2 is a.s. constant).
    static InnovationSpec parse(std::string_view text);

    InnovationLaw law() const noexcept { return law_; }
    /// Degrees of freedom; 0 for the laws without one.
    double nu() const noexcept { return nu_; }

    double fourth_moment() const noexcept { return fourth_moment_; }
    /// E xi^2 = E eps^4 - 1.
    double xi_variance() const noexcept { return fourth_moment_ - 1.0; }

    /// E|eps|^p, +inf when the moment does not exist.
    double absolute_moment(double p) const;

    /// Default delta for the E|eps|^{4+delta} < inf requirement:
    /// 1 for laws with all moments, (nu - 4) / 2 for Student t.
    double default_delta() const noexcept;

    /// Whether E|eps|^{4+delta} is finite.
    bool has_moment_above_four(double delta) const noexcept;

    /// P(eps = 0) > 0. False for every built-in law.
    bool has_atom_at_zero() const noexcept { return false; }

    double cdf(double x) const;

    /// Round-trips through parse().
    std::string name() const;

    friend bool operator==(const InnovationSpec&, const InnovationSpec&) = default;

private:
    InnovationSpec(InnovationLaw law, double nu, double fourth_moment);

    InnovationLaw law_;
    double nu_;
    double fourth_moment_;
};

/// Seeded i.i.d. stream from an InnovationSpec. mt19937_64 underneath, so a
/// given (seed, law) reproduces bit-identically on one platform.
class InnovationSampler {
public:
    InnovationSampler(const InnovationSpec& spec, std::uint64_t seed);

    double operator()();
    void fill(std::span<double> out);

private:
    std::mt19937_64 engine_;
    std::variant<std::normal_distribution<double>, std::uniform_real_distribution<double>,
                 std::student_t_distribution<double>>
        dist_;
    double scale_ = 1.0;
};

}  // namespace nigarch
