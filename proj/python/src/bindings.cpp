#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "json.hpp"
#include "nnlaw/density.hpp"
#include "nnlaw/errors.hpp"
#include "nnlaw/experiment.hpp"
#include "nnlaw/hypothesis.hpp"
#include "nnlaw/limits.hpp"
#include "nnlaw/mst.hpp"
#include "nnlaw/nn_core.hpp"
#include "nnlaw/stats.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

nnlaw::PointSet to_points(const Array& a) {
    if (a.ndim() == 1) return nnlaw::PointSet(1, std::vector<double>(a.data(), a.data() + a.size()));
    if (a.ndim() != 2) throw nnlaw::InvalidPointSet("points must be a 1-D or 2-D array");
    return nnlaw::PointSet(static_cast<std::size_t>(a.shape(1)), std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const nnlaw::PointSet& xs) {
    Array out({static_cast<py::ssize_t>(xs.size()), static_cast<py::ssize_t>(xs.dim())});
    std::copy(xs.coords().begin(), xs.coords().end(), out.mutable_data());
    return out;
}

Array to_array(const std::vector<double>& v) {
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

struct Model {
    std::shared_ptr<nnlaw::DensityModel> impl;
};

std::string run_experiment(const std::string& kind, const std::string& config_text, double parameter) {
    const auto config = nnlaw::EstimatorConfig::from_json(json::parse(config_text));
    if (kind == "converge") return nnlaw::to_json(nnlaw::run_convergence(config)).dump();
    if (kind == "diverge") return nnlaw::to_json(nnlaw::run_divergence(config)).dump();
    if (kind == "entropy") return nnlaw::to_json(nnlaw::run_entropy(config, parameter)).dump();
    if (kind == "probe") return nnlaw::to_json(nnlaw::run_moment_probe(config, parameter)).dump();
    throw nnlaw::ConfigError("unknown experiment '" + kind + "'");
}

std::string records_csv(const std::string& kind, const std::string& config_text, double parameter) {
    const auto config = nnlaw::EstimatorConfig::from_json(json::parse(config_text));
    nnlaw::ExperimentResult r;
    if (kind == "converge") r = nnlaw::run_convergence(config);
    else if (kind == "diverge") r = nnlaw::run_divergence(config);
    else if (kind == "entropy") r = nnlaw::run_entropy(config, parameter).estimates;
    else if (kind == "probe") r = nnlaw::run_moment_probe(config, parameter);
    else throw nnlaw::ConfigError("unknown experiment '" + kind + "'");
    std::ostringstream out;
    nnlaw::write_records_csv(out, r);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "nearest-neighbour power sums, their limits and MST functionals";

    auto base = py::register_exception<nnlaw::Error>(m, "NnlawError", PyExc_RuntimeError);
    py::register_exception<nnlaw::InvalidPointSet>(m, "InvalidPointSet", base.ptr());
    py::register_exception<nnlaw::DegenerateStatistic>(m, "DegenerateStatistic", base.ptr());
    py::register_exception<nnlaw::InvalidGammaArgument>(m, "InvalidGammaArgument", base.ptr());
    py::register_exception<nnlaw::QuadratureBudgetExceeded>(m, "QuadratureBudgetExceeded", base.ptr());
    py::register_exception<nnlaw::InvalidRho>(m, "InvalidRho", base.ptr());
    py::register_exception<nnlaw::ConditionRefused>(m, "ConditionRefused", base.ptr());
    py::register_exception<nnlaw::InvalidModel>(m, "InvalidModel", base.ptr());
    py::register_exception<nnlaw::ConfigError>(m, "ConfigError", base.ptr());

    m.def("unit_ball_volume", &nnlaw::unit_ball_volume, py::arg("d"));
    m.def(
        "gamma_constant", [](int d, int j, double alpha) { return nnlaw::gamma_constant({d, j, alpha}); }, py::arg("d"), py::arg("j"),
        py::arg("alpha"));
    m.def("poisson_nn_tail", &nnlaw::poisson_nn_tail, py::arg("tau"), py::arg("d"), py::arg("j"), py::arg("t"));
    m.def("poisson_nn_moment", &nnlaw::poisson_nn_moment, py::arg("tau"), py::arg("d"), py::arg("j"), py::arg("alpha"));
    m.def(
        "entropy_from_integral",
        [](double rho, double i_rho) {
            const auto e = nnlaw::entropy_from_integral(rho, i_rho);
            return py::dict(py::arg("rho") = e.rho, py::arg("i_rho") = e.i_rho, py::arg("tsallis") = e.tsallis,
                            py::arg("renyi") = e.renyi);
        },
        py::arg("rho"), py::arg("i_rho"));

    m.def(
        "nn_distances",
        [](const Array& points, std::size_t j, bool bruteforce) {
            const auto xs = to_points(points);
            py::gil_scoped_release release;
            auto d = bruteforce ? nnlaw::nn_distances_bruteforce(xs, j) : nnlaw::nn_distances(xs, j);
            py::gil_scoped_acquire acquire;
            return to_array(d);
        },
        py::arg("points"), py::arg("j") = 1, py::arg("bruteforce") = false);
    m.def(
        "statistic_power", [](const Array& points, std::size_t j, double alpha) { return nnlaw::statistic_power(to_points(points), j, alpha); },
        py::arg("points"), py::arg("j"), py::arg("alpha"));
    m.def(
        "statistic_phi",
        [](const Array& points, std::size_t j, const std::function<double(double)>& phi) {
            return nnlaw::statistic_phi(to_points(points), j, phi);
        },
        py::arg("points"), py::arg("j"), py::arg("phi"));
    m.def(
        "estimate", [](const Array& points, std::size_t j, double alpha) { return nnlaw::to_json(nnlaw::estimate_statistic(to_points(points), j, alpha)).dump(); },
        py::arg("points"), py::arg("j"), py::arg("alpha"));

    py::class_<Model>(m, "Model")
        .def_property_readonly("dim", [](const Model& s) { return s.impl->dim(); })
        .def_property_readonly("name", [](const Model& s) { return s.impl->name(); })
        .def(
            "pdf", [](const Model& s, const std::vector<double>& x) { return s.impl->pdf(x); }, py::arg("x"))
        .def(
            "sample", [](const Model& s, std::size_t n, std::uint64_t seed) { return to_array(nnlaw::sample_n(*s.impl, n, seed)); },
            py::arg("n"), py::arg("seed"))
        .def("i_rho", [](const Model& s, double rho) { return nnlaw::analytic_i_rho(*s.impl, rho); }, py::arg("rho"))
        .def("moment", [](const Model& s, double r) { return nnlaw::analytic_moment(*s.impl, r); }, py::arg("r"))
        .def("critical_moment", [](const Model& s) { return s.impl->critical_moment(); })
        .def("annulus_mass", [](const Model& s, int k) { return s.impl->annulus_mass(k); }, py::arg("k"))
        .def("to_json", [](const Model& s) { return s.impl->to_json().dump(); });
    m.def(
        "make_model", [](const std::string& spec) { return Model{nnlaw::make_model(json::parse(spec))}; }, py::arg("spec"));

    m.def(
        "limit_functional",
        [](const std::function<double(double)>& phi, const Model& model, int j, double tolerance) {
            const auto q = nnlaw::limit_functional(phi, *model.impl, j, tolerance);
            return py::make_tuple(q.value, q.error);
        },
        py::arg("phi"), py::arg("model"), py::arg("j") = 1, py::arg("tolerance") = 1e-6);
    m.def(
        "condition_report",
        [](const Model& model, double alpha, int q) {
            const json j = nnlaw::consistency_implication(*model.impl, alpha, q);
            return j.dump();
        },
        py::arg("model"), py::arg("alpha"), py::arg("q") = 1);

    m.def(
        "build_mst",
        [](const Array& points) {
            std::vector<std::tuple<std::size_t, std::size_t, double>> out;
            for (const auto& e : nnlaw::build_mst(to_points(points))) out.emplace_back(e.u, e.v, e.length);
            return out;
        },
        py::arg("points"));
    m.def(
        "l_phi", [](const Array& points, const std::function<double(double)>& phi) { return nnlaw::l_phi(to_points(points), phi); },
        py::arg("points"), py::arg("phi"));
    m.def(
        "l_power_nn", [](const Array& points, double b, std::size_t j) { return nnlaw::l_power_nn(to_points(points), b, j); },
        py::arg("points"), py::arg("b"), py::arg("j") = 1);

    m.def(
        "mann_kendall",
        [](const std::vector<double>& series) {
            const auto t = nnlaw::mann_kendall(series);
            return py::dict(py::arg("s") = t.s, py::arg("variance") = t.variance, py::arg("z") = t.z, py::arg("p_value") = t.p_value);
        },
        py::arg("series"));

    m.def("run_experiment", &run_experiment, py::arg("kind"), py::arg("config"), py::arg("parameter") = 0.0,
          py::call_guard<py::gil_scoped_release>());
    m.def("records_csv", &records_csv, py::arg("kind"), py::arg("config"), py::arg("parameter") = 0.0,
          py::call_guard<py::gil_scoped_release>());
}
