#include <catch2/catch_amalgamated.hpp>

#include "nigarch/errors.hpp"
#include "nigarch/montecarlo.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <set>

using namespace nigarch;
using Catch::Approx;

namespace {

ExperimentConfig small_config(TheoremId theorem, unsigned threads = 1) {
    const auto law = InnovationSpec::standard_normal();
    GammaSign sign = required_sign(theorem);
    return ExperimentConfig{
        .theorem = theorem,
        .scheme = Scheme(sign, 0.75, 0.7, 1.0, law),
        .n = 2000,
        .grid = TimeGrid({0.5, 1.0}),
        .replications = 200,
        .master_seed = 42,
        .sigma0_sq = std::nullopt,
        .threads = threads,
        .force = false,
    };
}

}  // namespace

TEST_CASE("seed_stream is injective on the replication index", "[montecarlo]") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t r = 0; r < 100000; ++r) seen.insert(seed_stream(7, r));
    CHECK(seen.size() == 100000);
    CHECK(seed_stream(7, 3) != seed_stream(8, 3));
    CHECK(seed_stream(0, 0) == seed_stream(0, 0));
}

TEST_CASE("seed_stream avalanches", "[montecarlo][property]") {
    std::mt19937_64 gen(1);
    double flips_r = 0.0, flips_m = 0.0;
    const int trials = 10000;
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t master = gen();
        const std::uint64_t r = gen();
        const std::uint64_t bit = 1ULL << (gen() % 64);
        const std::uint64_t base = seed_stream(master, r);
        flips_r += std::popcount(base ^ seed_stream(master, r ^ bit));
        flips_m += std::popcount(base ^ seed_stream(master ^ bit, r));
    }
    CHECK(flips_r / trials >= 20.0);
    CHECK(flips_m / trials >= 20.0);
    CHECK(flips_r / trials == Approx(32.0).margin(0.5));
}

TEST_CASE("empirical covariance examples", "[montecarlo]") {
    Eigen::MatrixXd same(4, 2);
    same << 1, 1, 2, 2, 4, 4, -3, -3;
    const auto c1 = empirical_covariance(same);
    CHECK(c1(0, 0) == Approx(c1(0, 1)));
    CHECK(c1(1, 1) == Approx(c1(1, 0)));

    Eigen::MatrixXd opposite(3, 2);
    opposite << 1, -1, 2, -2, 6, -6;
    const auto c2 = empirical_covariance(opposite);
    CHECK(c2(0, 1) == Approx(-c2(0, 0)));
    CHECK(c2(0, 0) == Approx(7.0));

    std::mt19937_64 gen(9);
    std::normal_distribution<double> z;
    const Eigen::Index R = 100000;
    Eigen::MatrixXd iid(R, 3);
    for (Eigen::Index i = 0; i < R; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) iid(i, j) = z(gen);
    }
    const auto c3 = empirical_covariance(iid);
    CHECK((c3 - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 3.0 * std::sqrt(2.0 / R));
    CHECK(c3 == c3.transpose());
    CHECK_THROWS_AS(empirical_covariance(Eigen::MatrixXd(1, 2)), std::invalid_argument);
}

TEST_CASE("marginal target CDFs", "[montecarlo]") {
    const auto law = InnovationSpec::scaled_uniform();
    CHECK(marginal_target_cdf(TheoremId::T21, law, 0.5)(1.0) == Approx(0.8413447460685429));
    CHECK(marginal_target_cdf(TheoremId::T23, law, 1.0)(std::sqrt(1.0 / 3.0)) == Approx(0.8413447460685429));
    CHECK(marginal_target_cdf(TheoremId::T25, law, 0.25)(0.5) == Approx(0.8413447460685429));
    CHECK(marginal_target_cdf(TheoremId::T24, law, 0.25)(0.0) == Approx(0.5));
    CHECK(marginal_target_cdf(TheoremId::T24, law, 0.25)(2.0) == 1.0);
}

TEST_CASE("run_experiment: shape, determinism and thread independence", "[montecarlo]") {
    for (auto theorem : {TheoremId::T21, TheoremId::T23, TheoremId::T26}) {
        const auto a = run_experiment(small_config(theorem));
        const auto b = run_experiment(small_config(theorem));
        const auto c = run_experiment(small_config(theorem, 4));
        REQUIRE(a.samples.rows() == 200);
        REQUIRE(a.samples.cols() == 2);
        CHECK(a.samples.allFinite());
        CHECK(a.samples == b.samples);
        CHECK(a.samples == c.samples);
        CHECK(report_to_json(a, true).dump() == report_to_json(c, true).dump());
        CHECK(a.ks.size() == 2);
        for (const auto& k : a.ks) {
            CHECK(k.p_value >= 0.0);
            CHECK(k.p_value <= 1.0);
        }
        CHECK(a.empirical_covariance == a.empirical_covariance.transpose());
        CHECK(a.sigma0_sq == a.params.omega());
        for (const auto& t : a.tests) CHECK((t.rule == "p_value>" || t.rule == "statistic<="));
    }
    auto shifted = small_config(TheoremId::T21);
    shifted.master_seed = 43;
    CHECK(run_experiment(shifted).samples != run_experiment(small_config(TheoremId::T21)).samples);
}

TEST_CASE("run_experiment: replication r depends only on its own stream", "[montecarlo]") {
    auto cfg = small_config(TheoremId::T22);
    const auto report = run_experiment(cfg);
    const std::size_t r = 137;
    const auto path = simulate(report.params, cfg.scheme.innovation(), cfg.n, report.sigma0_sq,
                               seed_stream(cfg.master_seed, r));
    const auto stat = theorem_statistic(cfg.theorem, path, report.params, cfg.n, cfg.grid, 2.0);
    CHECK(report.samples(r, 0) == stat[0]);
    CHECK(report.samples(r, 1) == stat[1]);
}

TEST_CASE("run_experiment: test battery per theorem", "[montecarlo]") {
    const auto t21 = run_experiment(small_config(TheoremId::T21));
    std::set<std::string> names;
    for (const auto& t : t21.tests) names.insert(t.name);
    CHECK(names.contains("ks[t=0.5]"));
    CHECK(names.contains("abs_mean[t=1]"));
    CHECK(names.contains("abs_variance_minus_one[t=0.5]"));
    CHECK(names.contains("max_abs_cross_correlation"));

    const auto t23 = run_experiment(small_config(TheoremId::T23));
    bool has_cov = false;
    for (const auto& t : t23.tests) {
        if (t.name == "covariance_max_abs_error") {
            has_cov = true;
            CHECK(t.threshold == Approx(0.15 / 3.0));
        }
    }
    CHECK(has_cov);

    auto few = small_config(TheoremId::T23);
    few.replications = 50;
    const auto small = run_experiment(few);
    for (const auto& t : small.tests) CHECK_FALSE(t.p_value.has_value());
}

TEST_CASE("run_experiment: preconditions", "[montecarlo]") {
    auto mismatch = small_config(TheoremId::T23);
    mismatch.scheme = Scheme(GammaSign::Negative, 0.75, 0.7, 1.0, InnovationSpec::standard_normal());
    CHECK_THROWS_AS(run_experiment(mismatch), PreconditionError);

    auto overflow = small_config(TheoremId::T25);
    overflow.scheme = Scheme(GammaSign::Positive, 0.55, 0.52, 1.0, InnovationSpec::standard_normal());
    overflow.n = 10000000;
    CHECK_THROWS_AS(run_experiment(overflow), OverflowRiskError);

    auto coarse = small_config(TheoremId::T21);
    coarse.grid = TimeGrid({1e-5, 1.0});
    CHECK_THROWS_AS(run_experiment(coarse), std::invalid_argument);

    auto one = small_config(TheoremId::T21);
    one.replications = 1;
    CHECK_THROWS_AS(run_experiment(one), std::invalid_argument);
}

TEST_CASE("report JSON round trip", "[montecarlo]") {
    const auto report = run_experiment(small_config(TheoremId::T25));
    for (bool with_samples : {false, true}) {
        const auto j = report_to_json(report, with_samples);
        const auto back = report_from_json(nlohmann::ordered_json::parse(j.dump()));
        CHECK(report_to_json(back, with_samples).dump() == j.dump());
        CHECK(back.params == report.params);
        CHECK(back.empirical_covariance == report.empirical_covariance);
        if (with_samples) CHECK(back.samples == report.samples);
    }
    const auto j = report_to_json(report);
    CHECK(j.at("tests").at(0).at("threshold_source") == "calibration");
    CHECK(j.at("assumptions").at("rows").size() == 9);
    CHECK_FALSE(j.contains("samples"));
}
