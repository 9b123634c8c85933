#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "relifit/compare.hpp"
#include "relifit/data_io.hpp"
#include "relifit/error.hpp"
#include "relifit/fit.hpp"
#include "relifit/gof.hpp"
#include "relifit/likelihood.hpp"
#include "relifit/model.hpp"
#include "relifit/modulation.hpp"
#include "relifit/psogsa.hpp"
#include "relifit/report.hpp"
#include "relifit/simulate.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace relifit;

namespace {

ModelKind kind_arg(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) {
    const auto token = obj.cast<std::string>();
    const auto kind = parse_model_kind(token);
    if (!kind) throw py::value_error("unknown model '" + token + "'");
    return *kind;
  }
  return obj.cast<ModelKind>();
}

FitOptions make_options(double p, double r, std::optional<double> gamma, std::optional<double> mu,
                        std::optional<std::tuple<double, double, double>> profile_gamma,
                        std::uint64_t seed, std::size_t swarm, std::size_t iters) {
  FitOptions options;
  options.p = p;
  options.r = r;
  if (static_cast<int>(gamma.has_value()) + static_cast<int>(mu.has_value()) +
          static_cast<int>(profile_gamma.has_value()) >
      1) {
    throw py::value_error("give at most one of gamma, mu, profile_gamma");
  }
  if (gamma) {
    options.gamma = FixedGamma{Modulation::from_gamma(*gamma)};
  } else if (mu) {
    options.gamma = FixedGamma{Modulation::from_mu(*mu)};
  } else if (profile_gamma) {
    const auto [lo, hi, step] = *profile_gamma;
    options.gamma = ProfileGamma{lo, hi, step};
  }
  options.swarm.seed = seed;
  options.swarm.pop_size = swarm;
  options.swarm.max_iters = iters;
  return options;
}

py::dict result_dict(const MinimizeResult& res) {
  py::dict d;
  d["best_x"] = res.best_x;
  d["best_f"] = res.best_f;
  d["trace"] = res.trace;
  d["evaluations"] = res.evaluations;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
        relifit core: failure-rate software reliability models, maximum
        likelihood fitting with a hybrid PSO/GSA optimizer, and goodness-of-fit
        comparison.
    )pbdoc";

  py::register_exception<FeasibilityError>(m, "FeasibilityError", PyExc_ValueError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::enum_<ModelKind>(m, "ModelKind")
      .value("JM", ModelKind::JM)
      .value("SW", ModelKind::SW)
      .value("GOI", ModelKind::GOI)
      .value("Mahapatra", ModelKind::Mahapatra)
      .value("MSW", ModelKind::MSW)
      .value("Proposed", ModelKind::Proposed);

  m.def("gamma_from_mu", &gamma_from_mu, py::arg("mu"), "Modulation factor mu + (1 - mu) / mu.");
  m.def("mu_from_gamma", &mu_from_gamma, py::arg("gamma"),
        "Inverse of gamma_from_mu on the (0, 1] branch.");

  py::class_<DebugProbs>(m, "DebugProbs")
      .def(py::init<double, double>(), py::arg("p"), py::arg("r"))
      .def_property_readonly("p", &DebugProbs::p)
      .def_property_readonly("r", &DebugProbs::r)
      .def_property_readonly("q", &DebugProbs::q);

  py::class_<Modulation>(m, "Modulation")
      .def_static("from_mu", &Modulation::from_mu)
      .def_static("from_gamma", &Modulation::from_gamma)
      .def_property_readonly("mu", &Modulation::mu)
      .def_property_readonly("gamma", &Modulation::gamma);

  py::class_<ModelSpec>(m, "ModelSpec")
      .def(py::init([](const py::object& kind, double phi, double n_initial,
                       std::optional<DebugProbs> debug, std::optional<Modulation> modulation,
                       std::optional<std::vector<double>> gamma_override) {
             ModelSpec spec{kind_arg(kind), phi, n_initial, debug, modulation, gamma_override};
             spec.validate();
             return spec;
           }),
           py::arg("kind"), py::arg("phi"), py::arg("n_initial"), py::arg("debug") = py::none(),
           py::arg("modulation") = py::none(), py::arg("gamma_override") = py::none())
      .def_readonly("kind", &ModelSpec::kind)
      .def_readonly("phi", &ModelSpec::phi)
      .def_readonly("n_initial", &ModelSpec::n_initial)
      .def_readonly("debug", &ModelSpec::debug)
      .def_readonly("modulation", &ModelSpec::modulation)
      .def_readonly("gamma_override", &ModelSpec::gamma_override);

  py::class_<IntervalContext>(m, "IntervalContext")
      .def(py::init([](std::size_t index, std::uint64_t cum_prev, double elapsed) {
             IntervalContext ctx{index, cum_prev, elapsed};
             ctx.validate();
             return ctx;
           }),
           py::arg("index"), py::arg("cum_prev") = 0, py::arg("elapsed") = 0.0)
      .def_readonly("index", &IntervalContext::index)
      .def_readonly("cum_prev", &IntervalContext::cum_prev)
      .def_readonly("elapsed", &IntervalContext::elapsed);

  m.def("hazard", &hazard, py::arg("spec"), py::arg("ctx"));
  m.def("reliability", &reliability, py::arg("spec"), py::arg("ctx"));
  m.def("cdf", &cdf, py::arg("spec"), py::arg("ctx"));
  m.def("density", &density, py::arg("spec"), py::arg("ctx"));

  py::class_<FailureSeries>(m, "FailureSeries")
      .def(py::init([](std::string release_id, const std::vector<double>& t,
                       std::optional<std::vector<std::uint32_t>> failures) {
             std::vector<IntervalRecord> records;
             if (failures && failures->size() != t.size()) {
               throw py::value_error("t and failures must have equal length");
             }
             for (std::size_t i = 0; i < t.size(); ++i) {
               records.push_back({t[i], failures ? (*failures)[i] : 1u});
             }
             return FailureSeries(std::move(release_id), std::move(records));
           }),
           py::arg("release_id"), py::arg("t"), py::arg("failures") = py::none())
      .def_property_readonly("release_id", &FailureSeries::release_id)
      .def_property_readonly("t",
                             [](const FailureSeries& s) {
                               std::vector<double> t;
                               for (const auto& r : s.records()) t.push_back(r.t);
                               return t;
                             })
      .def_property_readonly("failures",
                             [](const FailureSeries& s) {
                               std::vector<std::uint32_t> k;
                               for (const auto& r : s.records()) k.push_back(r.failures);
                               return k;
                             })
      .def_property_readonly("cum",
                             [](const FailureSeries& s) {
                               std::vector<std::uint64_t> c;
                               for (std::size_t i = 1; i <= s.size(); ++i) c.push_back(s.cum(i));
                               return c;
                             })
      .def_property_readonly("total_failures", &FailureSeries::total_failures)
      .def("__len__", &FailureSeries::size);

  m.def("jm_equivalent_gamma_sequence", &jm_equivalent_gamma_sequence, py::arg("series"),
        py::arg("debug"));
  m.def("log_likelihood", &log_likelihood, py::arg("spec"), py::arg("series"),
        "Log-likelihood, or None when the spec is infeasible for the series.");
  m.def("log_likelihood_closed_form", &log_likelihood_closed_form, py::arg("spec"),
        py::arg("series"));
  m.def(
      "llf_gradient",
      [](const ModelSpec& spec, const FailureSeries& series) {
        const auto g = llf_gradient(spec, series);
        py::dict d;
        d["phi"] = g.d_phi;
        d["N"] = g.d_n;
        d["gamma"] = g.d_gamma ? py::cast(*g.d_gamma) : py::none();
        return d;
      },
      py::arg("spec"), py::arg("series"));
  m.def(
      "stationarity_residuals",
      [](const ModelSpec& spec, const FailureSeries& series) {
        const auto r = stationarity_residuals(spec, series);
        return std::make_pair(r.r_phi, r.r_n);
      },
      py::arg("spec"), py::arg("series"));

  m.def("predicted_intervals", &predicted_intervals, py::arg("spec"), py::arg("series"));
  m.def("sse", &sse, py::arg("spec"), py::arg("series"));
  m.def("mse", &mse, py::arg("spec"), py::arg("series"), py::arg("k_params"));

  py::class_<SwarmConfig>(m, "SwarmConfig")
      .def(py::init<>())
      .def_readwrite("pop_size", &SwarmConfig::pop_size)
      .def_readwrite("max_iters", &SwarmConfig::max_iters)
      .def_readwrite("c1", &SwarmConfig::c1)
      .def_readwrite("c2", &SwarmConfig::c2)
      .def_readwrite("w_start", &SwarmConfig::w_start)
      .def_readwrite("w_end", &SwarmConfig::w_end)
      .def_readwrite("g0", &SwarmConfig::g0)
      .def_readwrite("alpha", &SwarmConfig::alpha)
      .def_readwrite("eps", &SwarmConfig::eps)
      .def_readwrite("seed", &SwarmConfig::seed)
      .def_readwrite("vmax_frac", &SwarmConfig::vmax_frac);

  m.def("mass_distribution",
        [](const std::vector<double>& fitness) { return mass_distribution(fitness); },
        py::arg("fitness"));
  m.def(
      "minimize",
      [](const std::function<double(std::vector<double>)>& f,
         const std::vector<std::tuple<double, double, std::string>>& bounds,
         const SwarmConfig& cfg) {
        std::vector<ParamBound> pb;
        for (const auto& [lo, hi, scale] : bounds) {
          if (scale != "linear" && scale != "log") {
            throw py::value_error("scale must be 'linear' or 'log'");
          }
          pb.push_back({lo, hi, scale == "log" ? Scale::Log : Scale::Linear});
        }
        const auto res = minimize(
            [&f](std::span<const double> x) { return f(std::vector<double>(x.begin(), x.end())); },
            pb, cfg);
        return result_dict(res);
      },
      py::arg("f"), py::arg("bounds"), py::arg("config") = SwarmConfig{},
      "Minimize f over [(lo, hi, 'linear'|'log'), ...] with PSO-GSA.");

  m.def(
      "fit",
      [](const FailureSeries& series, const py::object& model, double p, double r,
         std::optional<double> gamma, std::optional<double> mu,
         std::optional<std::tuple<double, double, double>> profile_gamma, std::uint64_t seed,
         std::size_t swarm, std::size_t iters) {
        const auto options = make_options(p, r, gamma, mu, profile_gamma, seed, swarm, iters);
        FitResult res;
        {
          py::gil_scoped_release release;
          res = fit_model(series, kind_arg(model), options);
        }
        return fit_result_to_json(res);
      },
      py::arg("series"), py::arg("model"), py::arg("p") = 0.95, py::arg("r") = 0.03,
      py::arg("gamma") = py::none(), py::arg("mu") = py::none(),
      py::arg("profile_gamma") = py::none(), py::arg("seed") = 0, py::arg("swarm") = 30,
      py::arg("iters") = 1000, "Fit one model; returns the FitResult JSON document.");

  m.def(
      "compare",
      [](const std::vector<FailureSeries>& releases, const std::vector<std::string>& models,
         const std::string& format, double p, double r, std::uint64_t seed, std::size_t swarm,
         std::size_t iters) {
        std::vector<ModelKind> kinds;
        for (const auto& token : models) kinds.push_back(kind_arg(py::str(token)));
        const auto fmt = parse_report_format(format);
        if (!fmt) throw py::value_error("format must be md, csv or json");
        const auto options = make_options(p, r, std::nullopt, std::nullopt, std::nullopt, seed,
                                          swarm, iters);
        std::string text;
        {
          py::gil_scoped_release release;
          text = render_compare(compare(releases, kinds, options), *fmt);
        }
        return text;
      },
      py::arg("releases"), py::arg("models"), py::arg("format") = "json", py::arg("p") = 0.95,
      py::arg("r") = 0.03, py::arg("seed") = 0, py::arg("swarm") = 30, py::arg("iters") = 1000);

  m.def(
      "simulate_series",
      [](const ModelSpec& spec, std::size_t n_failures, std::uint64_t seed,
         const std::string& release_id) {
        return simulate_series(spec, n_failures, seed, release_id);
      },
      py::arg("spec"), py::arg("n_failures"), py::arg("seed"), py::arg("release_id") = "sim");

  m.def(
      "load_failure_csv",
      [](const std::string& path) { return load_failure_csv(path).releases; }, py::arg("path"));
  m.def(
      "failure_csv",
      [](const std::vector<FailureSeries>& releases, std::optional<std::string> unit) {
        std::ostringstream os;
        write_failure_csv(os, FailureDataset{std::move(unit), releases});
        return os.str();
      },
      py::arg("releases"), py::arg("unit") = py::none(),
      "Canonical failure-interval CSV text for the releases.");

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
