#include "nigarch/innovation.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nigarch {
namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void validate_moments(double second, double fourth) {
    if (std::abs(second - 1.0) > 1e-12) {
        throw std::invalid_argument("innovation law must satisfy E eps^2 = 1");
    }
    if (!std::isfinite(fourth)) {
        throw std::invalid_argument("innovation law must satisfy E eps^4 < inf");
    }
    // Var(eps^2) = E eps^4 - (E eps^2)^2.
    if (!(fourth - second * second > 0.0)) {
        throw std::invalid_argument(
            "innovation law rejected: the distribution of eps^2 is degenerate");
    }
}

}  // namespace

InnovationSpec::InnovationSpec(InnovationLaw law, double nu, double fourth_moment)
    : law_(law), nu_(nu), fourth_moment_(fourth_moment) {
    validate_moments(1.0, fourth_moment_);
}

InnovationSpec InnovationSpec::standard_normal() {
    return {InnovationLaw::StandardNormal, 0.0, 3.0};
}

InnovationSpec InnovationSpec::scaled_uniform() {
    // (sqrt 3)^4 / 5
    return {InnovationLaw::ScaledUniform, 0.0, 9.0 / 5.0};
}

InnovationSpec InnovationSpec::scaled_student_t(double nu) {
    if (!std::isfinite(nu) || !(nu > 4.0)) {
        throw std::invalid_argument("Student t innovations need nu > 4 for E eps^4 < inf (nu=" +
                                    std::to_string(nu) + ")");
    }
    return {InnovationLaw::ScaledStudentT, nu, 3.0 * (nu - 2.0) / (nu - 4.0)};
}

InnovationSpec InnovationSpec::parse(std::string_view text) {
    if (text == "normal") return standard_normal();
    if (text == "uniform") return scaled_uniform();
    if (text == "rademacher") {
        // eps = +-1: E eps^2 = 1 but E eps^4 = 1.
        validate_moments(1.0, 1.0);
    }
    constexpr std::string_view prefix = "student:";
    if (text.starts_with(prefix)) {
        auto digits = text.substr(prefix.size());
        double nu = 0.0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), nu);
        if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
            throw std::invalid_argument("bad degrees of freedom in '" + std::string(text) + "'");
        }
        return scaled_student_t(nu);
    }
    throw std::invalid_argument("unknown innovation law '" + std::string(text) +
                                "' (expected normal, uniform or student:<nu>)");
}

double InnovationSpec::absolute_moment(double p) const {
    using std::numbers::pi;
    switch (law_) {
        case InnovationLaw::StandardNormal:
            return std::pow(2.0, p / 2.0) * std::tgamma((p + 1.0) / 2.0) / std::sqrt(pi);
        case InnovationLaw::ScaledUniform:
            return std::pow(kSqrt3, p) / (p + 1.0);
        case InnovationLaw::ScaledStudentT: {
            if (p >= nu_) return std::numeric_limits<double>::infinity();
            const double raw = std::pow(nu_, p / 2.0) *
                               std::exp(std::lgamma((p + 1.0) / 2.0) + std::lgamma((nu_ - p) / 2.0) -
                                        std::lgamma(nu_ / 2.0)) /
                               std::sqrt(pi);
            return raw * std::pow((nu_ - 2.0) / nu_, p / 2.0);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double InnovationSpec::default_delta() const noexcept {
    return law_ == InnovationLaw::ScaledStudentT ? (nu_ - 4.0) / 2.0 : 1.0;
}

bool InnovationSpec::has_moment_above_four(double delta) const noexcept {
    if (!(delta > 0.0)) return false;
    return law_ != InnovationLaw::ScaledStudentT || nu_ > 4.0 + delta;
}

double InnovationSpec::cdf(double x) const {
    switch (law_) {
        case InnovationLaw::StandardNormal:
            return 0.5 * std::erfc(-x / std::numbers::sqrt2);
        case InnovationLaw::ScaledUniform:
            if (x <= -kSqrt3) return 0.0;
            if (x >= kSqrt3) return 1.0;
            return (x + kSqrt3) / (2.0 * kSqrt3);
        case InnovationLaw::ScaledStudentT: {
            if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
            boost::math::students_t_distribution<double> t(nu_);
            return boost::math::cdf(t, x / std::sqrt((nu_ - 2.0) / nu_));
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string InnovationSpec::name() const {
    switch (law_) {
        case InnovationLaw::StandardNormal: return "normal";
        case InnovationLaw::ScaledUniform: return "uniform";
        case InnovationLaw::ScaledStudentT: {
            char buf[64];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, nu_);
            return "student:" + std::string(buf, ptr);
        }
    }
    return "unknown";
}

InnovationSampler::InnovationSampler(const InnovationSpec& spec, std::uint64_t seed)
    : engine_(seed) {
    switch (spec.law()) {
        case InnovationLaw::StandardNormal:
            dist_ = std::normal_distribution<double>(0.0, 1.0);
            break;
        case InnovationLaw::ScaledUniform:
            dist_ = std::uniform_real_distribution<double>(-kSqrt3, kSqrt3);
            break;
        case InnovationLaw::ScaledStudentT:
            dist_ = std::student_t_distribution<double>(spec.nu());
            scale_ = std::sqrt((spec.nu() - 2.0) / spec.nu());
            break;
    }
}

double InnovationSampler::operator()() {
    return scale_ * std::visit([this](auto& d) { return d(engine_); }, dist_);
}

void InnovationSampler::fill(std::span<double> out) {
    for (double& v : out) v = (*this)();
}

}  // namespace nigarch
