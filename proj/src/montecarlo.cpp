#include "nigarch/montecarlo.hpp"

#include "nigarch/errors.hpp"
#include "nigarch/garch.hpp"
#include "nigarch/io.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

namespace nigarch {
namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string grid_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

double normal_cdf(double x, double sd) { return 0.5 * std::erfc(-x / (sd * std::numbers::sqrt2)); }

nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
    auto rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::ordered_json& j, Eigen::Index cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return m;
}

bool independence_claim(TheoremId id) {
    return id != TheoremId::T23 && id != TheoremId::T25;
}

}  // namespace

bool MonteCarloReport::all_pass() const noexcept {
    return std::all_of(tests.begin(), tests.end(), [](const TestOutcome& t) { return t.pass; });
}

std::uint64_t seed_stream(std::uint64_t master_seed, std::uint64_t replication) {
    return mix64(master_seed ^ mix64(replication));
}

Eigen::MatrixXd empirical_covariance(const Eigen::MatrixXd& samples) {
    if (samples.rows() < 2) throw std::invalid_argument("empirical_covariance needs R >= 2");
    const Eigen::RowVectorXd mean = samples.colwise().mean();
    const Eigen::MatrixXd centered = samples.rowwise() - mean;
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(samples.rows() - 1);
    // exact symmetry
    return (cov + cov.transpose()) / 2.0;
}

std::function<double(double)> marginal_target_cdf(TheoremId theorem, const InnovationSpec& law, double t) {
    switch (theorem) {
        case TheoremId::T21:
            return [](double x) { return normal_cdf(x, 1.0); };
        case TheoremId::T23: {
            const double sd = std::sqrt(t * t * t / 3.0);
            return [sd](double x) { return normal_cdf(x, sd); };
        }
        case TheoremId::T25: {
            const double sd = std::sqrt(t);
            return [sd](double x) { return normal_cdf(x, sd); };
        }
        case TheoremId::T22:
        case TheoremId::T24:
        case TheoremId::T26:
            return [law](double x) { return law.cdf(x); };
    }
    return {};
}

MonteCarloReport run_experiment(const ExperimentConfig& config) {
    if (config.replications < 2) throw std::invalid_argument("run_experiment needs at least 2 replications");
    MonteCarloReport report(config);
    report.assumptions = validate_assumptions(config.scheme, config.n, config.theorem);
    if (!report.assumptions.ok()) {
        std::string msg = "experiment preconditions not met:";
        for (const auto& f : report.assumptions.failures()) msg += " " + f + ";";
        throw PreconditionError(msg);
    }
    if (report.assumptions.overflow_risk && !config.force) {
        throw OverflowRiskError("overflow risk: n gamma > " + grid_label(kOverflowRiskThreshold) +
                                " for n=" + std::to_string(config.n));
    }
    // Also catches floor(n t_1) = 0 before any work is done.
    const auto indices = config.grid.indices(config.n);
    (void)indices;

    report.params = scheme_params(config.scheme, config.n);
    report.sigma0_sq = config.sigma0_sq.value_or(default_sigma0_sq(report.params));
    const InnovationSpec& law = config.scheme.innovation();
    const double xi_var = xi_variance(law);

    const auto R = static_cast<Eigen::Index>(config.replications);
    const auto N = static_cast<Eigen::Index>(config.grid.size());
    report.samples.resize(R, N);

    unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.replications));
    std::vector<std::exception_ptr> errors(config.replications);

    auto work = [&](unsigned worker) {
        for (std::size_t r = worker; r < config.replications; r += workers) {
            try {
                const Path path = simulate(report.params, law, config.n, report.sigma0_sq,
                                           seed_stream(config.master_seed, r));
                const auto stat =
                    theorem_statistic(config.theorem, path, report.params, config.n, config.grid, xi_var);
                for (Eigen::Index m = 0; m < N; ++m) {
                    report.samples(static_cast<Eigen::Index>(r), m) = stat[static_cast<std::size_t>(m)];
                }
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    for (std::size_t r = 0; r < errors.size(); ++r) {
        if (!errors[r]) continue;
        try {
            std::rethrow_exception(errors[r]);
        } catch (const ExplosionError& e) {
            throw ExplosionError("replication " + std::to_string(r) + ": " + e.what(), r);
        }
    }
    if (!report.samples.allFinite()) {
        throw std::runtime_error("non-finite theorem statistic in Monte Carlo samples");
    }

    // Aggregation, single-threaded after the join.
    const TargetLaw target = target_covariance(config.theorem, config.grid);
    report.target_covariance = target.covariance;
    report.empirical_covariance = empirical_covariance(report.samples);
    report.max_abs_covariance_error =
        (report.empirical_covariance - report.target_covariance).cwiseAbs().maxCoeff();

    const bool report_p = config.replications >= kMinReplicationsForPValues;
    for (Eigen::Index m = 0; m < N; ++m) {
        const double t = config.grid[static_cast<std::size_t>(m)];
        const Eigen::VectorXd col = report.samples.col(m);
        const KsResult ks = ks_test(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())),
                                    marginal_target_cdf(config.theorem, law, t));
        report.ks.push_back(ks);
        if (report_p) {
            report.tests.push_back({"ks[t=" + grid_label(t) + "]", ks.statistic, ks.p_value, kKsMinPValue,
                                    "p_value>", ks.p_value > kKsMinPValue});
        }
    }

    if (config.theorem == TheoremId::T21) {
        const Eigen::RowVectorXd mean = report.samples.colwise().mean();
        for (Eigen::Index m = 0; m < N; ++m) {
            const std::string label = grid_label(config.grid[static_cast<std::size_t>(m)]);
            const double abs_mean = std::abs(mean(m));
            const double var_gap = std::abs(report.empirical_covariance(m, m) - 1.0);
            report.tests.push_back({"abs_mean[t=" + label + "]", abs_mean, std::nullopt,
                                    kStandardNormalMeanTol, "statistic<=", abs_mean <= kStandardNormalMeanTol});
            report.tests.push_back({"abs_variance_minus_one[t=" + label + "]", var_gap, std::nullopt,
                                    kStandardNormalVarTol, "statistic<=", var_gap <= kStandardNormalVarTol});
        }
    }

    if (independence_claim(config.theorem)) {
        if (N >= 2) {
            const Eigen::VectorXd sd = report.empirical_covariance.diagonal().cwiseSqrt();
            double max_corr = 0.0;
            for (Eigen::Index i = 0; i < N; ++i) {
                for (Eigen::Index j = i + 1; j < N; ++j) {
                    max_corr = std::max(max_corr, std::abs(report.empirical_covariance(i, j) / (sd(i) * sd(j))));
                }
            }
            report.tests.push_back({"max_abs_cross_correlation", max_corr, std::nullopt, kIndependenceMaxCorr,
                                    "statistic<=", max_corr <= kIndependenceMaxCorr});
        }
    } else {
        const double tol = kCovarianceRelTol * report.target_covariance.cwiseAbs().maxCoeff();
        report.tests.push_back({"covariance_max_abs_error", report.max_abs_covariance_error, std::nullopt, tol,
                                "statistic<=", report.max_abs_covariance_error <= tol});
    }
    return report;
}

nlohmann::ordered_json assumption_report_to_json(const AssumptionReport& rep) {
    nlohmann::ordered_json j;
    j["theorem"] = to_string(rep.theorem);
    j["n"] = rep.n;
    j["regime_mismatch"] = rep.regime_mismatch;
    j["overflow_risk"] = rep.overflow_risk;
    j["beta_feasible"] = rep.beta_feasible;
    j["ok"] = rep.ok();
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : rep.rows) {
        nlohmann::ordered_json r;
        r["id"] = row.id;
        r["statement"] = row.statement;
        r["requirement"] = to_string(row.requirement);
        r["verdict"] = to_string(row.verdict);
        r["witness"] = row.witness;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

nlohmann::ordered_json report_to_json(const MonteCarloReport& report, bool include_samples) {
    const auto& c = report.config;
    nlohmann::ordered_json j;
    nlohmann::ordered_json cfg;
    cfg["theorem"] = to_string(c.theorem);
    cfg["sign"] = to_string(c.scheme.sign());
    cfg["q"] = c.scheme.q();
    cfg["a"] = c.scheme.a();
    cfg["omega"] = c.scheme.omega();
    cfg["innovation"] = c.scheme.innovation().name();
    cfg["delta"] = c.scheme.delta();
    cfg["n"] = c.n;
    cfg["grid"] = c.grid.values();
    cfg["replications"] = c.replications;
    cfg["master_seed"] = c.master_seed;
    cfg["sigma0_sq"] = report.sigma0_sq;
    j["config"] = std::move(cfg);

    nlohmann::ordered_json params;
    params["omega"] = report.params.omega();
    params["alpha"] = report.params.alpha();
    params["beta"] = report.params.beta();
    params["gamma"] = report.params.gamma();
    j["params"] = std::move(params);

    j["assumptions"] = assumption_report_to_json(report.assumptions);

    auto tests = nlohmann::ordered_json::array();
    for (const auto& t : report.tests) {
        nlohmann::ordered_json o;
        o["name"] = t.name;
        o["statistic"] = t.statistic;
        o["p_value"] = t.p_value ? nlohmann::ordered_json(*t.p_value) : nlohmann::ordered_json(nullptr);
        o["threshold"] = t.threshold;
        o["rule"] = t.rule;
        o["threshold_source"] = "calibration";
        o["pass"] = t.pass;
        tests.push_back(std::move(o));
    }
    j["tests"] = std::move(tests);

    auto ks = nlohmann::ordered_json::array();
    for (const auto& k : report.ks) ks.push_back({{"D", k.statistic}, {"p_value", k.p_value}});
    j["ks"] = std::move(ks);
    j["empirical_covariance"] = matrix_to_json(report.empirical_covariance);
    j["target_covariance"] = matrix_to_json(report.target_covariance);
    j["max_abs_covariance_error"] = report.max_abs_covariance_error;
    j["all_pass"] = report.all_pass();
    if (include_samples) j["samples"] = matrix_to_json(report.samples);
    return j;
}

MonteCarloReport report_from_json(const nlohmann::ordered_json& j) {
    const auto& cfg = j.at("config");
    Scheme scheme(parse_gamma_sign(cfg.at("sign").get<std::string>()), cfg.at("q").get<double>(),
                  cfg.at("a").get<double>(), cfg.at("omega").get<double>(),
                  InnovationSpec::parse(cfg.at("innovation").get<std::string>()), cfg.at("delta").get<double>());
    ExperimentConfig config{parse_theorem(cfg.at("theorem").get<std::string>()),
                            scheme,
                            cfg.at("n").get<std::size_t>(),
                            TimeGrid(cfg.at("grid").get<std::vector<double>>()),
                            cfg.at("replications").get<std::size_t>(),
                            cfg.at("master_seed").get<std::uint64_t>(),
                            cfg.at("sigma0_sq").get<double>()};

    MonteCarloReport report(config);
    report.sigma0_sq = cfg.at("sigma0_sq").get<double>();
    const auto& p = j.at("params");
    report.params = GarchParams(p.at("omega").get<double>(), p.at("alpha").get<double>(), p.at("beta").get<double>());

    report.assumptions = assumption_report_from_json(j.at("assumptions"));

    for (const auto& t : j.at("tests")) {
        TestOutcome o;
        o.name = t.at("name").get<std::string>();
        o.statistic = t.at("statistic").get<double>();
        if (!t.at("p_value").is_null()) o.p_value = t.at("p_value").get<double>();
        o.threshold = t.at("threshold").get<double>();
        o.rule = t.at("rule").get<std::string>();
        o.pass = t.at("pass").get<bool>();
        report.tests.push_back(std::move(o));
    }
    for (const auto& k : j.at("ks")) report.ks.push_back({k.at("D").get<double>(), k.at("p_value").get<double>()});

    const auto N = static_cast<Eigen::Index>(config.grid.size());
    report.empirical_covariance = matrix_from_json(j.at("empirical_covariance"), N);
    report.target_covariance = matrix_from_json(j.at("target_covariance"), N);
    report.max_abs_covariance_error = j.at("max_abs_covariance_error").get<double>();
    report.samples = j.contains("samples") ? matrix_from_json(j.at("samples"), N) : Eigen::MatrixXd(0, N);
    return report;
}

}  // namespace nigarch
