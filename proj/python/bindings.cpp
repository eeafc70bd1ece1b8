#include "nigarch/asymptotics.hpp"
#include "nigarch/errors.hpp"
#include "nigarch/estimation.hpp"
#include "nigarch/garch.hpp"
#include "nigarch/io.hpp"
#include "nigarch/montecarlo.hpp"
#include "nigarch/schemes.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace nigarch;

namespace {

py::object to_python(const nlohmann::ordered_json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::ordered_json from_python(const py::object& o) {
    return nlohmann::ordered_json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::array_t<double> as_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict path_to_dict(const Path& p) {
    py::dict d;
    d["sigma_sq"] = as_array(p.sigma_sq);
    d["y"] = as_array(p.y);
    d["eps"] = as_array(p.eps);
    return d;
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    return std::vector<double>(a.data(), a.data() + a.size());
}

}  // namespace

PYBIND11_MODULE(_nigarch, m) {
    m.doc() = "Near-integrated GARCH(1,1) simulation, limit-theorem checks and QMLE";

    py::register_exception<ExplosionError>(m, "ExplosionError", PyExc_OverflowError);
    py::register_exception<OverflowRiskError>(m, "OverflowRiskError", PyExc_OverflowError);
    py::register_exception<SignMismatchError>(m, "SignMismatchError", PyExc_ValueError);
    py::register_exception<InfeasibleSchemeError>(m, "InfeasibleSchemeError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<GarchParams>(m, "GarchParams")
        .def(py::init<double, double, double>(), py::arg("omega"), py::arg("alpha"), py::arg("beta"))
        .def_property_readonly("omega", &GarchParams::omega)
        .def_property_readonly("alpha", &GarchParams::alpha)
        .def_property_readonly("beta", &GarchParams::beta)
        .def_property_readonly("gamma", &GarchParams::gamma)
        .def("__eq__", [](const GarchParams& a, const GarchParams& b) { return a == b; })
        .def("__repr__", &GarchParams::to_string);

    py::class_<InnovationSpec>(m, "InnovationSpec")
        .def_static("parse", &InnovationSpec::parse)
        .def_static("standard_normal", &InnovationSpec::standard_normal)
        .def_static("scaled_uniform", &InnovationSpec::scaled_uniform)
        .def_static("scaled_student_t", &InnovationSpec::scaled_student_t, py::arg("nu"))
        .def_property_readonly("name", &InnovationSpec::name)
        .def_property_readonly("fourth_moment", &InnovationSpec::fourth_moment)
        .def_property_readonly("xi_variance", &InnovationSpec::xi_variance)
        .def("cdf", &InnovationSpec::cdf)
        .def("__repr__", [](const InnovationSpec& s) { return "InnovationSpec('" + s.name() + "')"; });

    // garch_core
    m.def(
        "simulate",
        [](const GarchParams& p, const std::string& innovation, std::size_t n, std::optional<double> sigma0_sq,
           std::uint64_t seed) {
            return path_to_dict(
                simulate(p, InnovationSpec::parse(innovation), n, sigma0_sq.value_or(default_sigma0_sq(p)), seed));
        },
        py::arg("params"), py::arg("innovation") = "normal", py::arg("n") = 1000, py::arg("sigma0_sq") = py::none(),
        py::arg("seed") = 1);
    m.def(
        "simulate_with_innovations",
        [](const GarchParams& p, const py::array_t<double, py::array::c_style | py::array::forcecast>& eps,
           double sigma0_sq) { return path_to_dict(simulate_with_innovations(p, to_vector(eps), sigma0_sq)); },
        py::arg("params"), py::arg("eps"), py::arg("sigma0_sq"));
    m.def(
        "volterra_sigma_sq",
        [](const GarchParams& p, double s0, const py::array_t<double, py::array::c_style | py::array::forcecast>& eps,
           std::size_t k) { return volterra_sigma_sq(p, s0, to_vector(eps), k); },
        py::arg("params"), py::arg("sigma0_sq"), py::arg("eps"), py::arg("k"));
    m.def(
        "volterra_sigma_sq_path",
        [](const GarchParams& p, double s0, const py::array_t<double, py::array::c_style | py::array::forcecast>& eps) {
            return as_array(volterra_sigma_sq_path(p, s0, to_vector(eps)));
        },
        py::arg("params"), py::arg("sigma0_sq"), py::arg("eps"));
    m.def(
        "additive_sigma_sq",
        [](const GarchParams& p, double s0, const py::array_t<double, py::array::c_style | py::array::forcecast>& eps,
           std::size_t k) {
            const auto d = additive_sigma_sq(p, s0, to_vector(eps), k);
            py::dict out;
            out["k"] = d.k;
            out["main_value"] = d.main_value;
            out["exact_value"] = d.exact_value;
            out["relative_error"] = d.relative_error;
            out["predicted_order"] = d.predicted_order;
            return out;
        },
        py::arg("params"), py::arg("sigma0_sq"), py::arg("eps"), py::arg("k"));
    m.def(
        "lyapunov_estimate",
        [](const GarchParams& p, const std::string& innovation, std::size_t draws, std::uint64_t seed) {
            const auto e = lyapunov_estimate(p, InnovationSpec::parse(innovation), draws, seed);
            const char* verdict = e.verdict == LyapunovVerdict::Negative   ? "negative"
                                  : e.verdict == LyapunovVerdict::Positive ? "positive"
                                                                           : "inconclusive";
            return py::make_tuple(e.mean, e.std_error, verdict);
        },
        py::arg("params"), py::arg("innovation") = "normal", py::arg("draws") = 1000000, py::arg("seed") = 1);

    // schemes
    m.def(
        "scheme_params",
        [](const std::string& sign, double q, double a, double omega, std::size_t n) {
            return scheme_params(Scheme(parse_gamma_sign(sign), q, a, omega, InnovationSpec::standard_normal()), n);
        },
        py::arg("sign"), py::arg("q"), py::arg("a"), py::arg("omega"), py::arg("n"));
    m.def(
        "validate_assumptions",
        [](const std::string& theorem, const std::string& sign, double q, double a, double omega,
           const std::string& innovation, std::size_t n) {
            const Scheme s(parse_gamma_sign(sign), q, a, omega, InnovationSpec::parse(innovation));
            return to_python(assumption_report_to_json(validate_assumptions(s, n, parse_theorem(theorem))));
        },
        py::arg("theorem"), py::arg("sign"), py::arg("q") = 0.75, py::arg("a") = 0.7, py::arg("omega") = 1.0,
        py::arg("innovation") = "normal", py::arg("n") = 20000);

    // asymptotics
    m.def("geometric_sum", &geometric_sum, py::arg("gamma"), py::arg("k"));
    m.def("weighted_geometric_sum", &weighted_geometric_sum, py::arg("nu"), py::arg("gamma"), py::arg("k"));
    m.def("gamma_asymptote", &gamma_asymptote, py::arg("nu"), py::arg("gamma"));
    m.def(
        "target_covariance",
        [](const std::string& theorem, const std::vector<double>& grid) {
            return target_covariance(parse_theorem(theorem), TimeGrid(grid)).covariance;
        },
        py::arg("theorem"), py::arg("grid"));
    m.def("oscillation_rate",
          [](const std::string& sign, std::size_t n, double q, double omega) {
              return oscillation_rate(parse_gamma_sign(sign), n, q, omega);
          },
          py::arg("sign"), py::arg("n"), py::arg("q"), py::arg("omega"));

    // montecarlo
    m.def(
        "ks_test",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
           const std::function<double(double)>& cdf) {
            const auto r = ks_test(to_vector(x), cdf);
            return py::make_tuple(r.statistic, r.p_value);
        },
        py::arg("samples"), py::arg("cdf"));
    m.def("kolmogorov_cdf", &kolmogorov_cdf, py::arg("x"));
    m.def("seed_stream", &seed_stream, py::arg("master_seed"), py::arg("replication"));
    m.def(
        "run_experiment",
        [](const std::string& theorem, const std::optional<std::string>& sign, double q, double a, double omega,
           const std::string& innovation, std::size_t n, const std::vector<double>& grid, std::size_t reps,
           std::uint64_t seed, std::optional<double> sigma0_sq, unsigned threads, bool force) {
            const auto id = parse_theorem(theorem);
            const auto s = sign ? parse_gamma_sign(*sign) : required_sign(id);
            ExperimentConfig cfg{.theorem = id,
                                 .scheme = Scheme(s, q, a, omega, InnovationSpec::parse(innovation)),
                                 .n = n,
                                 .grid = TimeGrid(grid),
                                 .replications = reps,
                                 .master_seed = seed,
                                 .sigma0_sq = sigma0_sq,
                                 .threads = threads,
                                 .force = force};
            MonteCarloReport report = [&] {
                py::gil_scoped_release release;
                return run_experiment(cfg);
            }();
            py::dict out = to_python(report_to_json(report));
            out["samples"] = report.samples;
            return out;
        },
        py::arg("theorem"), py::arg("sign") = py::none(), py::arg("q") = 0.75, py::arg("a") = 0.7,
        py::arg("omega") = 1.0, py::arg("innovation") = "normal", py::arg("n") = 20000,
        py::arg("grid") = std::vector<double>{0.5, 1.0}, py::arg("reps") = 2000, py::arg("seed") = 0,
        py::arg("sigma0_sq") = py::none(), py::arg("threads") = 1, py::arg("force") = false);
    m.def(
        "report_roundtrip", [](const py::object& report) {
            py::dict d = py::reinterpret_borrow<py::dict>(report);
            py::dict copy;
            for (auto item : d) {
                if (item.first.cast<std::string>() != "samples") copy[item.first] = item.second;
            }
            return to_python(report_to_json(report_from_json(from_python(copy))));
        },
        py::arg("report"), "Parse a report dict with the C++ reader and serialize it again.");

    // estimation
    m.def(
        "qmle_loglik",
        [](const GarchParams& p, const py::array_t<double, py::array::c_style | py::array::forcecast>& y) {
            return qmle_loglik(p, ReturnSeries{to_vector(y)});
        },
        py::arg("params"), py::arg("returns"));
    m.def(
        "fit",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& y, std::optional<GarchParams> init) {
            const ReturnSeries series{to_vector(y)};
            return to_python(fit_to_json(fit(series, init), series.size()));
        },
        py::arg("returns"), py::arg("init") = py::none());
    m.def(
        "expanding_window_fit",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
           const std::vector<std::size_t>& windows) {
            return to_python(fit_table_to_json(expanding_window_fit(ReturnSeries{to_vector(y)}, windows)));
        },
        py::arg("returns"), py::arg("windows"));
    m.def(
        "load_returns",
        [](const std::filesystem::path& path, std::size_t column, bool has_header, bool prices, char delimiter) {
            LoadOptions opt{column, has_header, prices, delimiter};
            return as_array(load_returns(path, opt).values);
        },
        py::arg("path"), py::arg("column") = 0, py::arg("has_header") = false, py::arg("prices") = false,
        py::arg("delimiter") = ',');
}
