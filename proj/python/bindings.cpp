#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iregress/ccrm.hpp"
#include "iregress/csv.hpp"
#include "iregress/diagnostics.hpp"
#include "iregress/fit.hpp"
#include "iregress/moments.hpp"
#include "iregress/report.hpp"
#include "iregress/simulation.hpp"

namespace py = pybind11;
using namespace iregress;

namespace {

IntervalDataset dataset_from_bounds(
    const std::vector<std::vector<std::pair<double, double>>>& predictors,
    const std::vector<std::pair<double, double>>& response, std::vector<std::string> names) {
    std::vector<std::vector<Interval>> xs;
    xs.reserve(predictors.size());
    for (const auto& col : predictors) {
        std::vector<Interval> c;
        c.reserve(col.size());
        for (auto [lo, hi] : col) c.push_back(make_from_bounds(lo, hi));
        xs.push_back(std::move(c));
    }
    std::vector<Interval> ys;
    ys.reserve(response.size());
    for (auto [lo, hi] : response) ys.push_back(make_from_bounds(lo, hi));
    return IntervalDataset::make(std::move(xs), std::move(ys), std::move(names));
}

IntervalDataset py_generate_sample(const SimulationConfig& config, std::uint64_t replication) {
    RngStream rng(config.seed, replication);
    return generate_sample(config, rng);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Least squares regression for interval-valued data in (K_C, delta).";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "IregressError", PyExc_ValueError);

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double>(), py::arg("center"), py::arg("radius"))
        .def_readonly("center", &Interval::center)
        .def_readonly("radius", &Interval::radius)
        .def_property_readonly("lower", &Interval::lower)
        .def_property_readonly("upper", &Interval::upper)
        .def("__eq__", [](const Interval& a, const Interval& b) { return a == b; })
        .def("__repr__", [](const Interval& v) {
            return "Interval(center=" + std::to_string(v.center) +
                   ", radius=" + std::to_string(v.radius) + ")";
        });

    m.def("make_from_bounds", &make_from_bounds, py::arg("lower"), py::arg("upper"));
    m.def("minkowski_add", &minkowski_add);
    m.def("scalar_mul", &scalar_mul, py::arg("k"), py::arg("a"));
    m.def("delta_distance", &delta_distance);
    m.def("delta_norm", &delta_norm);
    m.def("hukuhara_diff", [](const Interval& a, const Interval& b) -> std::optional<Interval> {
        return hukuhara_diff(a, b);
    });

    py::class_<IntervalDataset>(m, "Dataset")
        .def_property_readonly("n_obs", &IntervalDataset::n_obs)
        .def_property_readonly("n_predictors", &IntervalDataset::n_predictors)
        .def("predictor", &IntervalDataset::predictor, py::arg("j"))
        .def("response", &IntervalDataset::response);
    m.def("dataset_from_bounds", &dataset_from_bounds, py::arg("predictors"),
          py::arg("response"), py::arg("names") = std::vector<std::string>{});
    m.def("load_dataset", [](const std::string& path, const std::string& layout,
                             const std::string& response, std::vector<std::string> predictors) {
        ColumnSpec spec;
        spec.layout = parse_layout(layout);
        spec.response = response;
        spec.predictors = std::move(predictors);
        return load_dataset(path, spec);
    }, py::arg("path"), py::arg("layout") = "bounds", py::arg("response") = "y",
       py::arg("predictors") = std::vector<std::string>{});

    py::class_<Branch>(m, "Branch").def("__repr__", &Branch::to_string);
    py::class_<FitResult>(m, "FitResult")
        .def_readonly("a", &FitResult::a)
        .def_readonly("b", &FitResult::b)
        .def_readonly("mu", &FitResult::mu)
        .def_readonly("sigma2_lambda", &FitResult::sigma2_lambda)
        .def_readonly("sigma2_eta", &FitResult::sigma2_eta)
        .def_readonly("objective", &FitResult::objective)
        .def_property_readonly("branch",
                               [](const FitResult& f) { return f.branch.to_string(); });
    py::class_<FitOutcome>(m, "FitOutcome")
        .def_property_readonly("ok", &FitOutcome::ok)
        .def_property_readonly("result",
                               [](const FitOutcome& o) -> std::optional<FitResult> {
                                   return o.result;
                               })
        .def_property_readonly("reason", [](const FitOutcome& o) -> std::optional<std::string> {
            if (o.no_solution) return o.no_solution->reason;
            return std::nullopt;
        });

    m.def("fit_univariate", &fit_univariate);
    m.def("fit_multivariate", &fit_multivariate);
    m.def("objective_value", [](const IntervalDataset& d, const std::vector<double>& a, double b,
                                double mu) { return objective_value(d, a, b, mu); });

    py::class_<Prediction>(m, "Prediction")
        .def_readonly("center", &Prediction::center)
        .def_readonly("radius", &Prediction::radius)
        .def_readonly("radius_raw", &Prediction::radius_raw)
        .def_readonly("clamped", &Prediction::clamped)
        .def_readonly("negative_radius", &Prediction::negative_radius)
        .def("as_interval", &Prediction::as_interval);
    m.def("predict", [](const FitResult& fit, const std::vector<Interval>& x, bool clamp) {
        return predict(fit, x, clamp);
    }, py::arg("fit"), py::arg("x"), py::arg("clamp") = true);

    py::class_<CcrmFit>(m, "CcrmFit")
        .def_readonly("beta_c", &CcrmFit::beta_c)
        .def_readonly("beta_r", &CcrmFit::beta_r);
    m.def("fit_ccrm", &fit_ccrm);

    py::class_<Diagnostics>(m, "Diagnostics")
        .def_readonly("sst", &Diagnostics::sst)
        .def_readonly("sse", &Diagnostics::sse)
        .def_readonly("ssr", &Diagnostics::ssr)
        .def_readonly("r2", &Diagnostics::r2)
        .def_readonly("sigma2_lambda", &Diagnostics::sigma2_lambda)
        .def_readonly("sigma2_eta", &Diagnostics::sigma2_eta)
        .def_readonly("neg_radius_bound_mean", &Diagnostics::neg_radius_bound_mean)
        .def_readonly("neg_radius_count", &Diagnostics::neg_radius_count);
    m.def("compute_diagnostics", &compute_diagnostics);
    m.def("pairwise_cov", [](const std::vector<double>& x, const std::vector<double>& y) {
        return pairwise_cov(x, y);
    });

    py::class_<SimulationConfig>(m, "SimulationConfig")
        .def(py::init<>())
        .def_readwrite("label", &SimulationConfig::label)
        .def_readwrite("a", &SimulationConfig::a)
        .def_readwrite("b", &SimulationConfig::b)
        .def_readwrite("mu", &SimulationConfig::mu)
        .def_readwrite("sigma_lambda", &SimulationConfig::sigma_lambda)
        .def_readwrite("sigma_eta", &SimulationConfig::sigma_eta)
        .def_readwrite("n", &SimulationConfig::n)
        .def_readwrite("seed", &SimulationConfig::seed)
        .def_readwrite("replications", &SimulationConfig::replications);
    m.def("model_preset", &model_preset, py::arg("which"));
    m.def("generate_sample", &py_generate_sample, py::arg("config"),
          py::arg("replication") = 0);
    m.def("estimate_wrong_branch_probability", &estimate_wrong_branch_probability,
          py::arg("config"), py::arg("replications"));

    m.def("run_parameter_study_json",
          [](const std::vector<SimulationConfig>& configs, std::size_t replications) {
              return parameter_study_to_json(run_parameter_study(configs, replications));
          });
    m.def("run_comparison_study_json",
          [](const std::vector<SimulationConfig>& configs, std::size_t replications,
             double split) {
              return comparison_study_to_json(run_comparison_study(configs, replications, split));
          },
          py::arg("configs"), py::arg("replications"), py::arg("split") = 0.8);
}
