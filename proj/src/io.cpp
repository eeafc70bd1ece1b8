#include "nigarch/io.hpp"

#include "nigarch/errors.hpp"
#include "nigarch/montecarlo.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace nigarch {
namespace {

double parse_cell(const std::string& cell, std::size_t lineno) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ParseError("line " + std::to_string(lineno) + ": bad number '" + cell + "'", lineno);
    }
    return v;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_path_csv(std::ostream& out, const Path& path) {
    out << "k,sigma_sq,y,eps\n";
    for (std::size_t k = 0; k < path.sigma_sq.size(); ++k) {
        out << k << ',' << format_number(path.sigma_sq[k]) << ',';
        if (k < path.y.size()) out << format_number(path.y[k]) << ',' << format_number(path.eps[k]);
        else out << ',';
        out << '\n';
    }
}

Path read_path_csv(std::istream& in) {
    Path path;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) {
            if (line != "k,sigma_sq,y,eps") throw ParseError("path csv: unexpected header", 1);
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (cells.size() != 4) throw ParseError("path csv: expected 4 cells at line " + std::to_string(lineno), lineno);
        path.sigma_sq.push_back(parse_cell(cells[1], lineno));
        if (!cells[2].empty()) {
            path.y.push_back(parse_cell(cells[2], lineno));
            path.eps.push_back(parse_cell(cells[3], lineno));
        }
    }
    return path;
}

void write_fit_table_csv(std::ostream& out, const std::vector<WindowFit>& rows) {
    out << "n,alpha,beta,gamma\n";
    for (const auto& r : rows) {
        out << r.n << ',' << format_number(r.fit.params.alpha()) << ',' << format_number(r.fit.params.beta()) << ','
            << format_number(r.fit.gamma()) << '\n';
    }
}

nlohmann::ordered_json fit_to_json(const QmleFit& fit, std::size_t n) {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["omega"] = fit.params.omega();
    j["alpha"] = fit.params.alpha();
    j["beta"] = fit.params.beta();
    j["gamma"] = fit.gamma();
    j["loglik"] = fit.loglik;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    j["initial_variance_convention"] = fit.initial_variance_convention;
    return j;
}

QmleFit fit_from_json(const nlohmann::ordered_json& j) {
    QmleFit fit;
    fit.params = GarchParams(j.at("omega").get<double>(), j.at("alpha").get<double>(), j.at("beta").get<double>());
    fit.loglik = j.at("loglik").get<double>();
    fit.converged = j.at("converged").get<bool>();
    fit.iterations = j.at("iterations").get<std::size_t>();
    fit.initial_variance_convention = j.at("initial_variance_convention").get<std::string>();
    return fit;
}

nlohmann::ordered_json fit_table_to_json(const std::vector<WindowFit>& rows) {
    nlohmann::ordered_json j;
    j["columns"] = {"n", "alpha", "beta", "gamma"};
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        auto o = fit_to_json(r.fit, r.n);
        o["warning"] = r.warning;
        arr.push_back(std::move(o));
    }
    j["rows"] = std::move(arr);
    return j;
}

std::vector<WindowFit> fit_table_from_json(const nlohmann::ordered_json& j) {
    std::vector<WindowFit> rows;
    for (const auto& o : j.at("rows")) {
        WindowFit r;
        r.n = o.at("n").get<std::size_t>();
        r.fit = fit_from_json(o);
        r.warning = o.at("warning").get<bool>();
        rows.push_back(std::move(r));
    }
    return rows;
}

AssumptionReport assumption_report_from_json(const nlohmann::ordered_json& j) {
    AssumptionReport rep;
    rep.theorem = parse_theorem(j.at("theorem").get<std::string>());
    rep.n = j.at("n").get<std::size_t>();
    rep.regime_mismatch = j.at("regime_mismatch").get<bool>();
    rep.overflow_risk = j.at("overflow_risk").get<bool>();
    rep.beta_feasible = j.at("beta_feasible").get<bool>();
    for (const auto& r : j.at("rows")) {
        const auto req = r.at("requirement").get<std::string>();
        rep.rows.push_back({r.at("id").get<std::string>(), r.at("statement").get<std::string>(),
                            req == "required"  ? Requirement::Required
                            : req == "implied" ? Requirement::Implied
                                               : Requirement::NotRequired,
                            r.at("verdict").get<std::string>() == "holds" ? Verdict::Holds : Verdict::Fails,
                            r.at("witness").get<double>()});
    }
    return rep;
}

}  // namespace nigarch
