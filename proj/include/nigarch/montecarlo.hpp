#pragma once

#include "nigarch/asymptotics.hpp"
#include "nigarch/ks.hpp"
#include "nigarch/schemes.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nigarch {

// Finite-n pass thresholds (calibration choices, flagged in reports).
inline constexpr double kKsMinPValue = 0.01;
inline constexpr double kCovarianceRelTol = 0.15;    // of the largest target entry
inline constexpr double kIndependenceMaxCorr = 0.1;
inline constexpr double kStandardNormalMeanTol = 0.1;
inline constexpr double kStandardNormalVarTol = 0.2;
inline constexpr std::size_t kMinReplicationsForPValues = 100;

struct ExperimentConfig {
    TheoremId theorem;
    Scheme scheme;
    std::size_t n;
    TimeGrid grid;
    std::size_t replications = 2000;
    std::uint64_t master_seed = 0;
    /// Defaults to default_sigma0_sq() of the scheme's model at n.
    std::optional<double> sigma0_sq;
    /// Worker count; 0 means one per hardware thread. Never affects results.
    unsigned threads = 1;
    /// Run despite the n gamma > 600 overflow flag.
    bool force = false;
};

struct TestOutcome {
    std::string name;
    double statistic = 0.0;
    std::optional<double> p_value;
    double threshold = 0.0;
    /// "p_value>" or "statistic<=".
    std::string rule;
    bool pass = false;
};

struct MonteCarloReport {
    explicit MonteCarloReport(ExperimentConfig c) : config(std::move(c)) {}

    ExperimentConfig config;
    double sigma0_sq = 0.0;
    GarchParams params{1.0, 0.0, 0.0};
    AssumptionReport assumptions;
    Eigen::MatrixXd samples;              // R x N
    std::vector<KsResult> ks;             // per column
    Eigen::MatrixXd empirical_covariance;
    Eigen::MatrixXd target_covariance;
    double max_abs_covariance_error = 0.0;
    std::vector<TestOutcome> tests;

    bool all_pass() const noexcept;
};

/// Assumption check failed for a requested experiment.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// 64-bit mixer (splitmix64 finalizer): mix(master ^ mix(r)). Bijective in r
/// for a fixed master. Frozen; changing it changes every report.
std::uint64_t seed_stream(std::uint64_t master_seed, std::uint64_t replication);

/// Unbiased sample covariance of the columns (divisor R - 1).
Eigen::MatrixXd empirical_covariance(const Eigen::MatrixXd& samples);

/// Marginal CDF of the theorem's limit at grid point t.
std::function<double(double)> marginal_target_cdf(TheoremId theorem, const InnovationSpec& law, double t);

/// R independent replications of the theorem statistic plus the KS and
/// covariance battery. Replication r uses seed_stream(master_seed, r) and
/// writes row r, so the report does not depend on `threads`.
///
/// Throws PreconditionError when a required assumption fails or the sign
/// does not match, OverflowRiskError on the overflow flag (unless force),
/// and ExplosionError carrying the replication index if a path blows up.
MonteCarloReport run_experiment(const ExperimentConfig& config);

/// Deterministic JSON with a fixed key order. Samples are optional.
nlohmann::ordered_json report_to_json(const MonteCarloReport& report, bool include_samples = false);
MonteCarloReport report_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json assumption_report_to_json(const AssumptionReport& rep);

}  // namespace nigarch
