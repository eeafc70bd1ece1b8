#include "nigarch/schemes.hpp"

#include "nigarch/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nigarch {
namespace {

double parse_double(std::string_view key, const std::string& text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("scheme config: bad number for '" + std::string(key) +
                                    "': '" + text + "'");
    }
    return v;
}

bool in_open_unit_half(double x) { return x > 0.5 && x < 1.0; }

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

GammaSign parse_gamma_sign(std::string_view text) {
    if (text == "negative" || text == "neg" || text == "-") return GammaSign::Negative;
    if (text == "zero" || text == "0") return GammaSign::Zero;
    if (text == "positive" || text == "pos" || text == "+") return GammaSign::Positive;
    throw std::invalid_argument("unknown sign '" + std::string(text) +
                                "' (expected negative, zero or positive)");
}

std::string to_string(GammaSign sign) {
    switch (sign) {
        case GammaSign::Negative: return "negative";
        case GammaSign::Zero: return "zero";
        case GammaSign::Positive: return "positive";
    }
    return "?";
}

double sign_value(GammaSign sign) {
    switch (sign) {
        case GammaSign::Negative: return -1.0;
        case GammaSign::Zero: return 0.0;
        case GammaSign::Positive: return 1.0;
    }
    return 0.0;
}

TheoremId parse_theorem(std::string_view text) {
    static constexpr std::array<std::string_view, 6> names{"t21", "t22", "t23", "t24", "t25", "t26"};
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (text == names[i]) return static_cast<TheoremId>(i);
    }
    throw std::invalid_argument("unknown theorem '" + std::string(text) + "' (expected t21..t26)");
}

std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::T21: return "t21";
        case TheoremId::T22: return "t22";
        case TheoremId::T23: return "t23";
        case TheoremId::T24: return "t24";
        case TheoremId::T25: return "t25";
        case TheoremId::T26: return "t26";
    }
    return "?";
}

GammaSign required_sign(TheoremId id) {
    switch (id) {
        case TheoremId::T21:
        case TheoremId::T22: return GammaSign::Negative;
        case TheoremId::T23:
        case TheoremId::T24: return GammaSign::Zero;
        case TheoremId::T25:
        case TheoremId::T26: return GammaSign::Positive;
    }
    return GammaSign::Zero;
}

Scheme::Scheme(GammaSign sign, double q, double a, double omega, InnovationSpec innovation,
               std::optional<double> delta)
    : sign_(sign),
      q_(q),
      a_(a),
      omega_(omega),
      innovation_(innovation),
      delta_(delta.value_or(innovation.default_delta())) {
    if (!in_open_unit_half(a_)) {
        throw std::invalid_argument("scheme: a must lie in (1/2, 1), got " + format_double(a_));
    }
    if (sign_ != GammaSign::Zero && !in_open_unit_half(q_)) {
        throw std::invalid_argument("scheme: q must lie in (1/2, 1), got " + format_double(q_));
    }
    if (sign_ == GammaSign::Negative && !(1.5 * q_ > a_)) {
        throw std::invalid_argument("scheme: negative gamma needs 3q/2 > a so |gamma|^{3/2}/alpha -> 0");
    }
    if (sign_ == GammaSign::Positive && !(q_ >= a_)) {
        throw std::invalid_argument("scheme: positive gamma needs q >= a so gamma/alpha = O(1)");
    }
    if (!std::isfinite(omega_) || !(omega_ > 0.0)) {
        throw std::invalid_argument("scheme: omega must be positive");
    }
    if (!innovation_.has_moment_above_four(delta_)) {
        throw std::invalid_argument("scheme: innovation law " + innovation_.name() +
                                    " lacks E|eps|^{4+delta} < inf for delta=" +
                                    format_double(delta_));
    }
}

std::string Scheme::to_config() const {
    std::ostringstream os;
    os << "sign=" << to_string(sign_) << '\n'
       << "q=" << format_double(q_) << '\n'
       << "a=" << format_double(a_) << '\n'
       << "omega=" << format_double(omega_) << '\n'
       << "law=" << (innovation_.law() == InnovationLaw::ScaledStudentT ? "student"
                                                                          : innovation_.name())
       << '\n'
       << "nu=" << format_double(innovation_.nu()) << '\n'
       << "delta=" << format_double(delta_) << '\n';
    return os.str();
}

Scheme Scheme::from_map(const std::map<std::string, std::string>& kv) {
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument("scheme config: missing key '" + key + "'");
        return it->second;
    };
    const GammaSign sign = parse_gamma_sign(get("sign"));
    const double q = kv.contains("q") ? parse_double("q", kv.at("q")) : 0.75;
    const double a = parse_double("a", get("a"));
    const double omega = kv.contains("omega") ? parse_double("omega", kv.at("omega")) : 1.0;
    const std::string law = kv.contains("law") ? kv.at("law") : "normal";
    InnovationSpec innovation = law == "student"
                                    ? InnovationSpec::scaled_student_t(parse_double("nu", get("nu")))
                                    : InnovationSpec::parse(law);
    std::optional<double> delta;
    if (kv.contains("delta")) delta = parse_double("delta", kv.at("delta"));
    return Scheme(sign, q, a, omega, innovation, delta);
}

Scheme Scheme::from_config(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("scheme config: expected key=value at line " + std::to_string(lineno),
                             lineno);
        }
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return from_map(kv);
}

GarchParams scheme_params(const Scheme& scheme, std::size_t n) {
    if (n < 2) throw std::invalid_argument("scheme_params needs n >= 2");
    const double nd = static_cast<double>(n);
    const double alpha = std::pow(nd, -scheme.a());
    const double gamma =
        scheme.sign() == GammaSign::Zero ? 0.0 : sign_value(scheme.sign()) * std::pow(nd, -scheme.q());
    const double beta = (1.0 - alpha) + gamma;
    if (beta < 0.0) {
        throw InfeasibleSchemeError("scheme infeasible at n=" + std::to_string(n) +
                                    ": beta = 1 + gamma - alpha < 0");
    }
    return GarchParams(scheme.omega(), alpha, beta);
}

std::string to_string(Requirement r) {
    switch (r) {
        case Requirement::Required: return "required";
        case Requirement::Implied: return "implied";
        case Requirement::NotRequired: return "not-required";
    }
    return "?";
}

std::string to_string(Verdict v) { return v == Verdict::Holds ? "holds" : "fails"; }

double loglog(double x) { return x < 4.0 ? 1.0 : std::log(std::log(x)); }

bool AssumptionReport::ok() const noexcept {
    if (regime_mismatch || !beta_feasible) return false;
    for (const auto& row : rows) {
        if (row.requirement == Requirement::Required && row.verdict == Verdict::Fails) return false;
    }
    return true;
}

std::vector<std::string> AssumptionReport::failures() const {
    std::vector<std::string> out;
    if (regime_mismatch) out.push_back("scheme sign does not match theorem " + to_string(theorem));
    if (!beta_feasible) out.push_back("beta = 1 + gamma - alpha < 0 at n=" + std::to_string(n));
    for (const auto& row : rows) {
        if (row.requirement == Requirement::Required && row.verdict == Verdict::Fails) {
            out.push_back("(" + row.id + ") " + row.statement + " fails");
        }
    }
    return out;
}

AssumptionReport validate_assumptions(const Scheme& scheme, std::size_t n, TheoremId theorem) {
    AssumptionReport rep;
    rep.theorem = theorem;
    rep.n = n;
    rep.regime_mismatch = scheme.sign() != required_sign(theorem);

    const double nd = static_cast<double>(n);
    const double a = scheme.a();
    const double q = scheme.q();
    const bool zero = scheme.sign() == GammaSign::Zero;
    const double alpha = std::pow(nd, -a);
    const double abs_gamma = zero ? 0.0 : std::pow(nd, -q);
    const double gamma = sign_value(scheme.sign()) * abs_gamma;
    rep.beta_feasible = (1.0 - alpha) + gamma >= 0.0;
    rep.overflow_risk = nd * gamma > kOverflowRiskThreshold;

    const InnovationSpec& law = scheme.innovation();
    const double delta = scheme.delta();
    auto verdict = [](bool holds) { return holds ? Verdict::Holds : Verdict::Fails; };

    rep.rows = {
        {"2.9", "E eps^4 < inf", Requirement::NotRequired, verdict(std::isfinite(law.fourth_moment())),
         law.fourth_moment()},
        {"2.10", "n^{1/2} alpha -> 0", Requirement::NotRequired, verdict(a > 0.5), std::sqrt(nd) * alpha},
        {"2.11", "n alpha -> inf", Requirement::NotRequired, verdict(a < 1.0), nd * alpha},
        {"2.12", "n^{1/2} gamma -> 0", Requirement::NotRequired, verdict(zero || q > 0.5),
         std::sqrt(nd) * abs_gamma},
        {"2.18", "n |gamma| -> inf", Requirement::NotRequired, verdict(!zero && q < 1.0), nd * abs_gamma},
        {"2.19", "alpha n^{1/2} log log n -> 0", Requirement::NotRequired, verdict(a > 0.5),
         alpha * std::sqrt(nd) * loglog(nd)},
        {"2.20", "|gamma|^{3/2} / alpha -> 0", Requirement::NotRequired, verdict(zero || 1.5 * q > a),
         std::pow(abs_gamma, 1.5) / alpha},
        {"2.21", "E|eps|^{4+delta} < inf", Requirement::NotRequired,
         verdict(law.has_moment_above_four(delta)), law.absolute_moment(4.0 + delta)},
        {"2.22", "gamma / alpha = O(1)", Requirement::NotRequired, verdict(zero || q >= a), gamma / alpha},
    };

    auto mark = [&](std::string_view id, Requirement r) {
        for (auto& row : rep.rows) {
            if (row.id == id) row.requirement = r;
        }
    };
    switch (theorem) {
        case TheoremId::T21:
        case TheoremId::T22:
            for (auto id : {"2.11", "2.12", "2.18", "2.19", "2.20", "2.21"}) mark(id, Requirement::Required);
            break;
        case TheoremId::T23:
        case TheoremId::T24:
            for (auto id : {"2.10", "2.11", "2.21"}) mark(id, Requirement::Required);
            break;
        case TheoremId::T25:
        case TheoremId::T26:
            for (auto id : {"2.9", "2.11", "2.18", "2.19", "2.22"}) mark(id, Requirement::Required);
            mark("2.12", Requirement::Implied);
            break;
    }
    return rep;
}

}  // namespace nigarch
