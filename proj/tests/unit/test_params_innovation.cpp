#include <catch2/catch_amalgamated.hpp>

#include "nigarch/innovation.hpp"
#include "nigarch/params.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace nigarch;
using Catch::Approx;

TEST_CASE("GarchParams enforces omega > 0, alpha >= 0, beta >= 0", "[params]") {
    REQUIRE_NOTHROW(GarchParams(1.0, 0.0, 0.0));
    REQUIRE_THROWS_AS(GarchParams(0.0, 0.1, 0.8), std::invalid_argument);
    REQUIRE_THROWS_AS(GarchParams(-1.0, 0.1, 0.8), std::invalid_argument);
    REQUIRE_THROWS_AS(GarchParams(1.0, -0.1, 0.8), std::invalid_argument);
    REQUIRE_THROWS_AS(GarchParams(1.0, 0.1, -1e-9), std::invalid_argument);
    REQUIRE_THROWS_AS(GarchParams(1.0, std::nan(""), 0.8), std::invalid_argument);
    REQUIRE_THROWS_WITH(GarchParams(1.0, -0.1, 0.8), Catch::Matchers::ContainsSubstring("α ≥ 0"));
}

TEST_CASE("gamma is alpha + beta - 1", "[params]") {
    CHECK(GarchParams(1.0, 0.05, 0.90).gamma() == Approx(-0.05).margin(1e-15));
    CHECK(GarchParams(1.0, 0.5, 0.5).gamma() == 0.0);
    // S&P 500 estimate over the first 500 days
    const GarchParams row(1.0, 0.007391279, 0.992564947);
    CHECK(row.gamma() == Approx(-4.3774e-05).margin(5e-10));
}

TEST_CASE("innovation laws have unit variance and the stated fourth moments", "[innovation]") {
    CHECK(InnovationSpec::standard_normal().fourth_moment() == 3.0);
    CHECK(InnovationSpec::standard_normal().xi_variance() == 2.0);
    CHECK(InnovationSpec::scaled_uniform().xi_variance() == Approx(0.8).epsilon(1e-15));
    CHECK(InnovationSpec::scaled_student_t(8.0).fourth_moment() == Approx(4.5));
    CHECK(InnovationSpec::scaled_student_t(8.0).xi_variance() == Approx(3.5));
}

TEST_CASE("scaled Student t fourth moment agrees with quadrature", "[innovation][oracle]") {
    const double nu = 8.0;
    const double scale = std::sqrt((nu - 2.0) / nu);
    const double norm = std::tgamma((nu + 1) / 2) / (std::sqrt(nu * std::numbers::pi) * std::tgamma(nu / 2));
    auto integrand = [&](double t) {
        if (!(t > 0.0) || !std::isfinite(t)) return 0.0;
        const double log_tail = 4.0 * std::log(scale * t) - (nu + 1) / 2 * std::log1p(t * t / nu);
        return 2.0 * norm * std::exp(log_tail);
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    const double m4 = integrator.integrate(integrand);
    CHECK(m4 == Approx(4.5).epsilon(1e-8));
    CHECK(InnovationSpec::scaled_student_t(nu).absolute_moment(4.0) == Approx(4.5).epsilon(1e-12));
}

TEST_CASE("inadmissible laws are rejected", "[innovation]") {
    REQUIRE_THROWS_AS(InnovationSpec::scaled_student_t(4.0), std::invalid_argument);
    REQUIRE_THROWS_AS(InnovationSpec::scaled_student_t(3.0), std::invalid_argument);
    REQUIRE_THROWS_WITH(InnovationSpec::parse("rademacher"), Catch::Matchers::ContainsSubstring("degenerate"));
    REQUIRE_THROWS_AS(InnovationSpec::parse("cauchy"), std::invalid_argument);
    REQUIRE_THROWS_AS(InnovationSpec::parse("student:x"), std::invalid_argument);
}

TEST_CASE("parse and name round-trip", "[innovation]") {
    for (const auto* text : {"normal", "uniform", "student:8", "student:6.5"}) {
        CHECK(InnovationSpec::parse(text).name() == text);
    }
}

TEST_CASE("absolute moments", "[innovation]") {
    const auto normal = InnovationSpec::standard_normal();
    CHECK(normal.absolute_moment(2.0) == Approx(1.0));
    CHECK(normal.absolute_moment(4.0) == Approx(3.0));
    CHECK(normal.absolute_moment(5.0) == Approx(6.383076486422923));
    CHECK(InnovationSpec::scaled_uniform().absolute_moment(2.0) == Approx(1.0));
    const auto t = InnovationSpec::scaled_student_t(6.0);
    CHECK(t.absolute_moment(2.0) == Approx(1.0));
    CHECK(std::isinf(t.absolute_moment(6.0)));
    CHECK(t.default_delta() == 1.0);
    CHECK(t.has_moment_above_four(1.0));
    CHECK_FALSE(t.has_moment_above_four(2.0));
}

TEST_CASE("cdf values", "[innovation]") {
    CHECK(InnovationSpec::standard_normal().cdf(0.0) == Approx(0.5));
    CHECK(InnovationSpec::standard_normal().cdf(1.959963984540054) == Approx(0.975));
    const auto u = InnovationSpec::scaled_uniform();
    CHECK(u.cdf(-2.0) == 0.0);
    CHECK(u.cdf(0.0) == Approx(0.5));
    CHECK(u.cdf(2.0) == 1.0);
    CHECK(InnovationSpec::scaled_student_t(8.0).cdf(0.0) == Approx(0.5));
}

TEST_CASE("sampler draws have unit second moment and the law's fourth moment", "[innovation]") {
    for (const auto& law : {InnovationSpec::standard_normal(), InnovationSpec::scaled_uniform(),
                            InnovationSpec::scaled_student_t(12.0)}) {
        InnovationSampler s(law, 42);
        const int m = 400000;
        double s2 = 0.0, s4 = 0.0;
        for (int i = 0; i < m; ++i) {
            const double e = s();
            s2 += e * e;
            s4 += e * e * e * e;
        }
        INFO(law.name());
        CHECK(s2 / m == Approx(1.0).margin(0.01));
        CHECK(s4 / m == Approx(law.fourth_moment()).epsilon(0.05));
    }
}

TEST_CASE("sampler is reproducible from its seed", "[innovation]") {
    InnovationSampler a(InnovationSpec::standard_normal(), 9), b(InnovationSpec::standard_normal(), 9);
    std::vector<double> x(100), y(100);
    a.fill(x);
    b.fill(y);
    CHECK(x == y);
}
