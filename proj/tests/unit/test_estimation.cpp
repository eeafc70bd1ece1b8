#include <catch2/catch_amalgamated.hpp>

#include "nigarch/errors.hpp"
#include "nigarch/estimation.hpp"
#include "nigarch/garch.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

using namespace nigarch;
using Catch::Approx;

namespace {

ReturnSeries simulated(const GarchParams& p, std::size_t n, std::uint64_t seed) {
    const auto path = simulate(p, InnovationSpec::standard_normal(), n - 1, p.omega() / (1.0 - p.alpha() - p.beta()),
                               seed);
    return ReturnSeries{path.y};
}

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const auto dir = std::filesystem::temp_directory_path() / "nigarch_unit";
    std::filesystem::create_directories(dir);
    const auto p = dir / name;
    std::ofstream(p) << body;
    return p;
}

// Independent evaluation of the likelihood, straight from its definition.
double oracle_loglik(double omega, double alpha, double beta, const std::vector<double>& y) {
    double s = 0.0;
    for (double v : y) s += v * v;
    double sig = s / static_cast<double>(y.size());
    double ll = 0.0;
    for (std::size_t k = 1; k < y.size(); ++k) {
        sig = omega + alpha * y[k - 1] * y[k - 1] + beta * sig;
        ll += std::log(sig) + y[k] * y[k] / sig;
    }
    return -0.5 * ll;
}

}  // namespace

TEST_CASE("qmle_loglik hand values", "[estimation]") {
    const ReturnSeries ones{{1.0, 1.0}};
    CHECK(qmle_loglik(GarchParams(1.0, 0.0, 0.0), ones) == Approx(-0.5));
    CHECK(qmle_loglik(GarchParams(2.0, 0.0, 0.0), ones) == Approx(-0.5 * (std::log(2.0) + 0.5)));
    CHECK(qmle_loglik(GarchParams(2.0, 0.0, 0.0), ones) == Approx(-0.59657).margin(1e-5));
    CHECK_THROWS_AS(qmle_loglik(GarchParams(1.0, 0.0, 0.0), ReturnSeries{{1.0}}), std::invalid_argument);
}

TEST_CASE("qmle_loglik matches the definition on random inputs", "[estimation][property]") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> y(2 + gen() % 500);
        for (double& v : y) v = z(gen) * (0.5 + u(gen));
        const double omega = 0.01 + u(gen), alpha = 0.3 * u(gen), beta = 0.99 * u(gen);
        CHECK(qmle_loglik(GarchParams(omega, alpha, beta), ReturnSeries{y}) ==
              Approx(oracle_loglik(omega, alpha, beta, y)).epsilon(1e-12));
    }
}

TEST_CASE("qmle_loglik scaling equivariance", "[estimation][property]") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> z;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> y(10 + gen() % 1000);
        for (double& v : y) v = z(gen);
        const double c = 0.01 + 20.0 * u(gen);
        std::vector<double> cy(y);
        for (double& v : cy) v *= c;
        const GarchParams p(0.1 + u(gen), 0.2 * u(gen), 0.7 * u(gen));
        const double base = qmle_loglik(p, ReturnSeries{y});
        const double scaled = qmle_loglik(GarchParams(c * c * p.omega(), p.alpha(), p.beta()), ReturnSeries{cy});
        const double expected = base - static_cast<double>(y.size() - 1) * std::log(c);
        CHECK(scaled == Approx(expected).epsilon(1e-10).margin(1e-9));
    }
}

TEST_CASE("qmle_loglik depends on order", "[estimation]") {
    std::vector<double> y{3.0, -0.1, 0.2, 0.05, -0.1, 0.1, 2.0, 0.01};
    const GarchParams p(0.1, 0.2, 0.7);
    const double forward = qmle_loglik(p, ReturnSeries{y});
    std::reverse(y.begin(), y.end());
    CHECK(std::abs(qmle_loglik(p, ReturnSeries{y}) - forward) > 1e-3);
}

TEST_CASE("gamma of a published estimate pair", "[estimation]") {
    QmleFit f;
    f.params = GarchParams(1e-6, 0.007391279, 0.992564947);
    CHECK(f.gamma() == Approx(-4.3774e-05).margin(5e-10));
    CHECK(f.gamma() == f.params.alpha() + (f.params.beta() - 1.0));
}

TEST_CASE("fit recovers simulated parameters", "[estimation][slow]") {
    const GarchParams truth(0.1, 0.05, 0.90);
    const auto series = simulated(truth, 5000, 2718);
    const auto result = fit(series);
    CHECK(result.converged);
    CHECK(std::abs(result.params.alpha() + result.params.beta() - 0.95) <= 0.02);
    CHECK(result.loglik >= qmle_loglik(truth, series));
    CHECK(result.loglik == qmle_loglik(result.params, series));
    CHECK(result.gamma() == result.params.alpha() + (result.params.beta() - 1.0));
    CHECK(result.initial_variance_convention == kInitialVarianceConvention);

    SECTION("local optimality in the transformed coordinates") {
        const double u = std::log(result.params.omega());
        const double v = std::log(result.params.alpha());
        const double w = std::log(result.params.beta());
        for (int coord = 0; coord < 3; ++coord) {
            for (double h : {-1e-3, 1e-3}) {
                const GarchParams q(std::exp(u + (coord == 0 ? h : 0.0)), std::exp(v + (coord == 1 ? h : 0.0)),
                                    std::exp(w + (coord == 2 ? h : 0.0)));
                CHECK(result.loglik >= qmle_loglik(q, series) - 1e-6);
            }
        }
    }
    SECTION("scale equivariance of the argmax") {
        const double c = 7.0;
        ReturnSeries scaled = series;
        for (double& y : scaled.values) y *= c;
        const auto other = fit(scaled);
        CHECK(std::abs(other.params.omega() - c * c * result.params.omega()) <= 1e-3 * c * c * result.params.omega());
        CHECK(std::abs(other.params.alpha() - result.params.alpha()) <= 1e-3);
        CHECK(std::abs(other.params.beta() - result.params.beta()) <= 1e-3);
    }
    SECTION("single window equal to N reproduces fit") {
        const auto table = expanding_window_fit(series, {series.size()});
        REQUIRE(table.size() == 1);
        CHECK(table[0].fit.params == result.params);
        CHECK(table[0].fit.loglik == result.loglik);
    }
}

TEST_CASE("fit validation", "[estimation]") {
    CHECK_THROWS_AS(fit(ReturnSeries{std::vector<double>(49, 1.0)}), std::invalid_argument);
    CHECK_THROWS_AS(fit(ReturnSeries{std::vector<double>(60, 0.5)}), std::invalid_argument);
    std::vector<double> bad(60, 0.1);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(fit(ReturnSeries{bad}), std::invalid_argument);
    CHECK(default_starts(ReturnSeries{{1.0, -1.0, 1.0, -1.0}}).size() == 3);
}

TEST_CASE("expanding windows on IGARCH data stay near gamma = 0", "[estimation][slow]") {
    const GarchParams p(0.01, 0.05, 0.95);
    const auto path = simulate(p, InnovationSpec::standard_normal(), 7999, 0.01, 99);
    const ReturnSeries series{path.y};
    const std::vector<std::size_t> windows{500, 1000, 2000, 4000, 8000};
    const auto table = expanding_window_fit(series, windows);
    REQUIRE(table.size() == windows.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(table[i].n == windows[i]);
        CHECK(std::abs(table[i].fit.gamma()) <= 0.05);
    }
    CHECK_THROWS_AS(expanding_window_fit(series, {1000, 500}), std::invalid_argument);
    CHECK_THROWS_AS(expanding_window_fit(series, {9000}), std::invalid_argument);
}

TEST_CASE("persistence error shrinks with the sample size", "[estimation][slow]") {
    const GarchParams truth(0.1, 0.05, 0.90);
    const std::vector<std::size_t> sizes{1000, 2000, 4000, 8000, 16000};
    std::vector<std::vector<double>> err(sizes.size());
    for (std::uint64_t rep = 0; rep < 40; ++rep) {
        const auto series = simulated(truth, sizes.back(), 5000 + rep);
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            const auto f = fit(series.prefix(sizes[i]));
            err[i].push_back(std::abs(f.params.alpha() + f.params.beta() - 0.95));
        }
    }
    std::vector<double> medians;
    for (auto& e : err) {
        std::nth_element(e.begin(), e.begin() + 20, e.end());
        medians.push_back(e[20]);
    }
    int inversions = 0;
    for (std::size_t i = 1; i < medians.size(); ++i) {
        if (medians[i] > medians[i - 1]) {
            ++inversions;
            CHECK(medians[i] <= 1.2 * medians[i - 1]);
        }
    }
    CHECK(inversions <= 1);
    CHECK(medians.back() < medians.front());
}

TEST_CASE("load_returns", "[estimation]") {
    LoadOptions prices;
    prices.prices = true;
    const auto up = load_returns(write_temp("up.csv", "100\n101\n"), prices);
    REQUIRE(up.size() == 1);
    CHECK(up.values[0] == Approx(std::log(1.01)));
    CHECK(up.values[0] == Approx(0.00995).margin(1e-5));
    CHECK(up.origin == SeriesOrigin::LogDifferencedPrices);

    const auto flat = load_returns(write_temp("flat.csv", "100\n100\n"), prices);
    CHECK(flat.values == std::vector<double>{0.0});

    LoadOptions cols;
    cols.column = 1;
    cols.has_header = true;
    const auto raw = load_returns(write_temp("raw.csv", "date,r\n1,0.5\n2,-0.25\n"), cols);
    CHECK(raw.values == std::vector<double>{0.5, -0.25});

    try {
        load_returns(write_temp("bad.csv", "1\n2\n3\n4\n5\n6\nabc\n8\n"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 7);
        CHECK(std::string(e.what()).find("line 7") != std::string::npos);
    }
    CHECK_THROWS_AS(load_returns(write_temp("neg.csv", "100\n-1\n"), prices), ParseError);
    CHECK_THROWS_AS(load_returns("/nonexistent/nigarch/file.csv"), IoError);
}
