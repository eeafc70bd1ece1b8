// nigarch: simulate near-integrated GARCH(1,1) paths, check the limit
// theorems by Monte Carlo, and fit GARCH(1,1) by Gaussian QMLE.
//
// Exit codes: 0 pass, 1 statistical failure, 2 usage/validation,
// 3 overflow, 4 I/O or parse error.

#include "nigarch/asymptotics.hpp"
#include "nigarch/errors.hpp"
#include "nigarch/estimation.hpp"
#include "nigarch/garch.hpp"
#include "nigarch/io.hpp"
#include "nigarch/montecarlo.hpp"
#include "nigarch/schemes.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode : int { kPass = 0, kStatFail = 1, kUsage = 2, kOverflow = 3, kIo = 4 };

struct Globals {
    std::uint64_t seed = 1;
    std::string json_path;
    std::string csv_path;
    bool quiet = false;
    unsigned threads = 0;  // 0: NIGARCH_THREADS or 1
};

unsigned resolve_threads(unsigned flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("NIGARCH_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw std::invalid_argument(std::string("NIGARCH_THREADS must be a positive integer, got '") + env + "'");
    }
    return 1;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != cell.size()) throw std::invalid_argument("bad list entry '" + cell + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<std::size_t> parse_windows(const std::string& text) {
    std::vector<std::size_t> out;
    for (double v : parse_list(text)) {
        if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
            throw std::invalid_argument("windows must be positive integers");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw nigarch::IoError("cannot open '" + path + "' for writing");
    return out;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
    double omega = 1.0;
    double alpha = 0.05;
    double beta = 0.9;
    std::size_t n = 1000;
    std::optional<double> sigma0_sq;
    std::string innovation = "normal";
    std::string out;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a) {
    const nigarch::GarchParams params(a.omega, a.alpha, a.beta);
    const auto law = nigarch::InnovationSpec::parse(a.innovation);
    const double s0 = a.sigma0_sq.value_or(nigarch::default_sigma0_sq(params));
    const auto path = nigarch::simulate(params, law, a.n, s0, g.seed);

    const std::string target = !a.out.empty() ? a.out : g.csv_path;
    if (target.empty()) {
        nigarch::write_path_csv(std::cout, path);
    } else {
        auto out = open_output(target);
        nigarch::write_path_csv(out, path);
    }
    if (!g.json_path.empty()) {
        nlohmann::ordered_json j;
        j["params"] = {{"omega", params.omega()}, {"alpha", params.alpha()}, {"beta", params.beta()},
                       {"gamma", params.gamma()}};
        j["innovation"] = law.name();
        j["n"] = a.n;
        j["sigma0_sq"] = s0;
        j["seed"] = g.seed;
        j["sigma_sq"] = path.sigma_sq;
        j["y"] = path.y;
        j["eps"] = path.eps;
        write_json(g.json_path, j);
    }
    return kPass;
}

// ---- verify ---------------------------------------------------------------

struct SchemeArgs {
    std::string sign;
    double q = 0.75;
    double a = 0.7;
    double omega = 1.0;
    std::string innovation = "normal";
    std::optional<double> delta;
};

nigarch::Scheme make_scheme(const SchemeArgs& s, nigarch::GammaSign sign) {
    return nigarch::Scheme(sign, s.q, s.a, s.omega, nigarch::InnovationSpec::parse(s.innovation), s.delta);
}

struct VerifyArgs {
    std::string theorem;
    SchemeArgs scheme;
    std::size_t n = 20000;
    std::size_t reps = 2000;
    std::string grid = "0.5,1.0";
    std::optional<double> sigma0_sq;
    bool force = false;
    bool include_samples = false;
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
    const auto theorem = nigarch::parse_theorem(a.theorem);
    const auto sign = a.scheme.sign.empty() ? nigarch::required_sign(theorem) : nigarch::parse_gamma_sign(a.scheme.sign);
    nigarch::ExperimentConfig config{.theorem = theorem,
                                     .scheme = make_scheme(a.scheme, sign),
                                     .n = a.n,
                                     .grid = nigarch::TimeGrid(parse_list(a.grid)),
                                     .replications = a.reps,
                                     .master_seed = g.seed,
                                     .sigma0_sq = a.sigma0_sq,
                                     .threads = resolve_threads(g.threads),
                                     .force = a.force};

    const auto report = nigarch::run_experiment(config);
    if (!g.json_path.empty()) write_json(g.json_path, nigarch::report_to_json(report, a.include_samples));
    if (!g.csv_path.empty()) {
        auto out = open_output(g.csv_path);
        out << "n,statistic,value\n";
        for (Eigen::Index r = 0; r < report.samples.rows(); ++r) {
            for (Eigen::Index m = 0; m < report.samples.cols(); ++m) {
                out << a.n << ',' << a.theorem << "[t=" << nigarch::format_number(config.grid[static_cast<std::size_t>(m)])
                    << "]," << nigarch::format_number(report.samples(r, m)) << '\n';
            }
        }
    }
    if (!g.quiet) {
        std::cout << "theorem " << a.theorem << "  n=" << a.n << "  R=" << a.reps << "  "
                  << report.params.to_string() << '\n';
        for (const auto& t : report.tests) {
            std::cout << (t.pass ? "PASS " : "FAIL ") << std::left << std::setw(36) << t.name
                      << " statistic=" << nigarch::format_number(t.statistic);
            if (t.p_value) std::cout << " p=" << nigarch::format_number(*t.p_value);
            std::cout << " threshold=" << nigarch::format_number(t.threshold) << " (" << t.rule << ")\n";
        }
    }
    return report.all_pass() ? kPass : kStatFail;
}

// ---- scheme-check ---------------------------------------------------------

struct SchemeCheckArgs {
    SchemeArgs scheme;
    std::size_t n = 20000;
    std::string theorem;
};

int cmd_scheme_check(const Globals& g, const SchemeCheckArgs& a) {
    const auto theorem = nigarch::parse_theorem(a.theorem);
    const auto sign = a.scheme.sign.empty() ? nigarch::required_sign(theorem) : nigarch::parse_gamma_sign(a.scheme.sign);
    const auto scheme = make_scheme(a.scheme, sign);
    const auto rep = nigarch::validate_assumptions(scheme, a.n, theorem);
    if (!g.json_path.empty()) write_json(g.json_path, nigarch::assumption_report_to_json(rep));
    if (!g.quiet) {
        std::cout << "assumption,requirement,verdict,witness\n";
        for (const auto& row : rep.rows) {
            std::cout << row.id << ',' << nigarch::to_string(row.requirement) << ','
                      << nigarch::to_string(row.verdict) << ',' << nigarch::format_number(row.witness) << '\n';
        }
        std::cout << "regime_mismatch=" << rep.regime_mismatch << " overflow_risk=" << rep.overflow_risk
                  << " beta_feasible=" << rep.beta_feasible << '\n';
    }
    return rep.ok() ? kPass : kStatFail;
}

// ---- lemma41 --------------------------------------------------------------

struct LemmaArgs {
    double gamma = -1e-3;
    double nu = 0.0;
    std::size_t k = 1000000;
};

int cmd_lemma41(const Globals& g, const LemmaArgs& a) {
    const double exact = nigarch::weighted_geometric_sum(a.nu, a.gamma, a.k);
    const double asym = nigarch::gamma_asymptote(a.nu, a.gamma);
    const double ratio = exact / asym;
    if (!g.json_path.empty()) {
        nlohmann::ordered_json j;
        j["gamma"] = a.gamma;
        j["nu"] = a.nu;
        j["k"] = a.k;
        j["exact"] = exact;
        j["asymptote"] = asym;
        j["ratio"] = ratio;
        write_json(g.json_path, j);
    }
    if (!g.quiet) {
        std::cout << "exact=" << nigarch::format_number(exact) << '\n'
                  << "asymptote=" << nigarch::format_number(asym) << '\n'
                  << "ratio=" << nigarch::format_number(ratio) << '\n';
    }
    return kPass;
}

// ---- fit / table1 ---------------------------------------------------------

struct InputArgs {
    std::string input;
    std::size_t column = 0;
    bool header = false;
    bool prices = false;
    char delimiter = ',';
};

nigarch::ReturnSeries load(const InputArgs& a) {
    nigarch::LoadOptions opt;
    opt.column = a.column;
    opt.has_header = a.header;
    opt.prices = a.prices;
    opt.delimiter = a.delimiter;
    return nigarch::load_returns(a.input, opt);
}

int cmd_fit(const Globals& g, const InputArgs& a) {
    const auto series = load(a);
    const auto fit = nigarch::fit(series);
    if (!g.json_path.empty()) write_json(g.json_path, nigarch::fit_to_json(fit, series.size()));
    if (!g.csv_path.empty()) {
        auto out = open_output(g.csv_path);
        nigarch::write_fit_table_csv(out, {{series.size(), fit, !fit.converged}});
    }
    if (!fit.converged) std::cerr << "warning: optimizer did not converge\n";
    if (!g.quiet) {
        std::cout << "n=" << series.size() << '\n'
                  << "omega=" << nigarch::format_number(fit.params.omega()) << '\n'
                  << "alpha=" << nigarch::format_number(fit.params.alpha()) << '\n'
                  << "beta=" << nigarch::format_number(fit.params.beta()) << '\n'
                  << "gamma=" << nigarch::format_number(fit.gamma()) << '\n'
                  << "loglik=" << nigarch::format_number(fit.loglik) << '\n'
                  << "converged=" << (fit.converged ? "true" : "false") << '\n';
    }
    return kPass;
}

int cmd_table1(const Globals& g, const InputArgs& a, const std::string& windows) {
    const auto series = load(a);
    const auto rows = nigarch::expanding_window_fit(series, parse_windows(windows));
    for (const auto& r : rows) {
        if (r.warning) std::cerr << "warning: window n=" << r.n << " did not converge\n";
    }
    if (!g.json_path.empty()) write_json(g.json_path, nigarch::fit_table_to_json(rows));
    if (!g.csv_path.empty()) {
        auto out = open_output(g.csv_path);
        nigarch::write_fit_table_csv(out, rows);
    }
    if (!g.quiet) nigarch::write_fit_table_csv(std::cout, rows);
    return kPass;
}

void add_scheme_flags(CLI::App* cmd, SchemeArgs& s) {
    cmd->add_option("--sign", s.sign, "sign of gamma: negative, zero, positive (default: from theorem)");
    cmd->add_option("--q", s.q, "gamma exponent, |gamma| = n^-q")->capture_default_str();
    cmd->add_option("--a", s.a, "alpha exponent, alpha = n^-a")->capture_default_str();
    cmd->add_option("--omega", s.omega, "omega")->capture_default_str();
    cmd->add_option("--innovation", s.innovation, "normal | uniform | student:<nu>")->capture_default_str();
    cmd->add_option("--delta", s.delta, "delta in E|eps|^{4+delta} < inf");
}

void add_input_flags(CLI::App* cmd, InputArgs& a) {
    cmd->add_option("--input", a.input, "delimited text file")->required();
    cmd->add_option("--column", a.column, "0-based column index")->capture_default_str();
    cmd->add_flag("--header", a.header, "first row is a header");
    cmd->add_flag("--prices", a.prices, "column holds prices; use log differences");
    cmd->add_option("--delimiter", a.delimiter, "field delimiter")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Near-integrated GARCH(1,1): simulation, limit-theorem checks, QMLE"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    auto* json_opt = app.add_option("--json", g.json_path, "write JSON output here");
    auto* csv_opt = app.add_option("--csv", g.csv_path, "write CSV output here");
    json_opt->excludes(csv_opt);
    app.add_flag("--quiet", g.quiet, "suppress stdout summary");
    app.add_option("--threads", g.threads, "worker cap (default: NIGARCH_THREADS or 1)");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "simulate one GARCH(1,1) path to CSV");
    simulate->add_option("--omega", sim.omega)->capture_default_str();
    simulate->add_option("--alpha", sim.alpha)->capture_default_str();
    simulate->add_option("--beta", sim.beta)->capture_default_str();
    simulate->add_option("--n", sim.n)->capture_default_str();
    simulate->add_option("--sigma0-sq", sim.sigma0_sq, "initial variance (default omega)");
    simulate->add_option("--innovation", sim.innovation)->capture_default_str();
    simulate->add_option("--out", sim.out, "CSV path (default stdout)");

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Monte Carlo check of one limit theorem");
    verify->add_option("--theorem", ver.theorem, "t21..t26")->required();
    add_scheme_flags(verify, ver.scheme);
    verify->add_option("--n", ver.n)->capture_default_str();
    verify->add_option("--reps", ver.reps)->capture_default_str();
    verify->add_option("--t", ver.grid, "comma-separated grid in (0, 1]")->capture_default_str();
    verify->add_option("--sigma0-sq", ver.sigma0_sq, "initial variance (default omega)");
    verify->add_flag("--force", ver.force, "run despite the overflow-risk flag");
    verify->add_flag("--include-samples", ver.include_samples, "embed the R x N samples in the JSON report");

    SchemeCheckArgs chk;
    auto* scheme_check = app.add_subcommand("scheme-check", "evaluate the theorem assumptions for a scheme");
    scheme_check->add_option("--theorem", chk.theorem, "t21..t26")->required();
    add_scheme_flags(scheme_check, chk.scheme);
    scheme_check->add_option("--n", chk.n)->capture_default_str();

    LemmaArgs lem;
    auto* lemma = app.add_subcommand("lemma41", "weighted geometric sum against its Gamma-function asymptote");
    lemma->add_option("--gamma", lem.gamma)->capture_default_str();
    lemma->add_option("--nu", lem.nu)->capture_default_str();
    lemma->add_option("--k", lem.k)->capture_default_str();

    InputArgs fit_in;
    auto* fit = app.add_subcommand("fit", "Gaussian QMLE fit of GARCH(1,1)");
    add_input_flags(fit, fit_in);

    InputArgs tab_in;
    std::string windows = "200,300,400,500,1000,1500,2000,2500";
    auto* table1 = app.add_subcommand("table1", "expanding-window fits: n,alpha,beta,gamma");
    add_input_flags(table1, tab_in);
    table1->add_option("--windows", windows, "comma-separated prefix lengths")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*simulate) return cmd_simulate(g, sim);
        if (*verify) return cmd_verify(g, ver);
        if (*scheme_check) return cmd_scheme_check(g, chk);
        if (*lemma) return cmd_lemma41(g, lem);
        if (*fit) return cmd_fit(g, fit_in);
        if (*table1) return cmd_table1(g, tab_in, windows);
    } catch (const nigarch::ExplosionError& e) {
        std::cerr << "error: " << e.what() << " (k=" << e.index() << ")\n";
        return kOverflow;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kOverflow;
    } catch (const nigarch::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const nigarch::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
