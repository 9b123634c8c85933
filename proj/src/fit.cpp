#include "relifit/fit.hpp"

#include <algorithm>
#include <cmath>

#include "relifit/error.hpp"
#include "relifit/gof.hpp"

namespace relifit {

namespace {

constexpr std::size_t kTraceTail = 5;

struct Search {
  Objective objective;
  MinimizeResult result;
};

ParamBound bound_for(Param p, const FailureSeries& series, const FitOptions& options) {
  if (auto it = options.bounds.find(p); it != options.bounds.end()) return it->second;
  return default_bound(p, series);
}

Search run_search(const ModelSpec& tmpl, std::vector<Param> free, const FailureSeries& series,
                  const FitOptions& options) {
  std::vector<ParamBound> bounds;
  bounds.reserve(free.size());
  for (Param p : free) bounds.push_back(bound_for(p, series, options));
  Objective objective(tmpl, series, std::move(free), std::move(bounds));
  auto result = minimize(
      [&objective](std::span<const double> x) { return penalized_objective(objective, x); },
      objective.bounds(), options.swarm);
  return {std::move(objective), std::move(result)};
}

void record_optimum(FitResult& fit, const Search& search, const FitOptions& options) {
  const auto& res = search.result;
  fit.optimizer.seed = options.swarm.seed;
  fit.optimizer.iters = options.swarm.max_iters;
  fit.optimizer.pop = options.swarm.pop_size;
  fit.optimizer.evaluations += res.evaluations;
  const std::size_t tail = std::min(kTraceTail, res.trace.size());
  fit.optimizer.trace_tail.assign(res.trace.end() - static_cast<std::ptrdiff_t>(tail),
                                  res.trace.end());

  if (!(res.best_f < kPenaltyBase)) {
    fit.feasible = false;
    fit.error = "no feasible parameter point found in the search box";
    return;
  }
  const ModelSpec spec = search.objective.materialize(res.best_x);
  const FailureSeries& series = search.objective.series();
  fit.feasible = true;
  fit.error.clear();
  fit.phi = spec.phi;
  fit.n_real = spec.n_initial;
  fit.n_rounded = std::llround(spec.n_initial);
  if (spec.kind == ModelKind::Proposed) {
    fit.gamma = spec.modulation->gamma();
    fit.mu = spec.modulation->mu();
  }
  fit.llf = -res.best_f;

  ModelSpec rounded = spec;
  rounded.n_initial = static_cast<double>(fit.n_rounded);
  fit.llf_rounded = fit.n_rounded > 0 ? log_likelihood(rounded, series) : std::nullopt;

  fit.sse = sse(spec, series);
  if (series.size() > fit.k_params) fit.mse = mse_from_sse(fit.sse, series.size(), fit.k_params);
  fit.stationarity.reset();
  if (has_constant_hazard(spec.kind)) fit.stationarity = stationarity_residuals(spec, series);
}

}  // namespace

std::vector<double> ProfileGamma::grid() const {
  if (!(lo >= 1.0) || !(hi >= lo) || !(step > 0.0) || !std::isfinite(hi)) {
    throw DomainError("gamma profile needs 1 <= lo <= hi and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 100000) throw DomainError("gamma profile grid is too fine");
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t k = 0; k < count; ++k) values.push_back(lo + static_cast<double>(k) * step);
  return values;
}

std::size_t estimated_parameter_count(ModelKind kind, const GammaMode& mode) {
  if (kind != ModelKind::Proposed) return 2;
  return std::holds_alternative<FixedGamma>(mode) ? 2 : 3;
}

ModelSpec FitResult::spec() const {
  ModelSpec s{kind, phi, n_real, std::nullopt, std::nullopt, std::nullopt};
  if (p && r) s.debug = DebugProbs(*p, *r);
  if (gamma) s.modulation = Modulation::from_gamma(*gamma);
  return s;
}

FitResult fit_model(const FailureSeries& series, ModelKind kind, const FitOptions& options) {
  if (series.empty()) throw DomainError("cannot fit an empty series");
  options.swarm.validate();
  const DebugProbs debug(options.p, options.r);

  FitResult fit;
  fit.release_id = series.release_id();
  fit.kind = kind;
  fit.observations = series.size();
  fit.total_failures = series.total_failures();
  fit.k_params = estimated_parameter_count(kind, options.gamma);

  ModelSpec tmpl{kind, 1.0, static_cast<double>(series.total_failures()), std::nullopt,
                 std::nullopt, std::nullopt};
  if (uses_debug_probs(kind)) {
    tmpl.debug = debug;
    fit.p = debug.p();
    fit.r = debug.r();
  }

  if (kind != ModelKind::Proposed) {
    record_optimum(fit, run_search(tmpl, {Param::Phi, Param::N}, series, options), options);
    return fit;
  }

  if (const auto* fixed = std::get_if<FixedGamma>(&options.gamma)) {
    fit.gamma_mode = "fixed";
    tmpl.modulation = fixed->modulation;
    record_optimum(fit, run_search(tmpl, {Param::Phi, Param::N}, series, options), options);
    // Keep the caller's mu exactly rather than the value re-derived from gamma.
    if (fit.feasible) fit.mu = fixed->modulation.mu();
  } else if (std::holds_alternative<EstimateGamma>(options.gamma)) {
    fit.gamma_mode = "estimated";
    tmpl.modulation = Modulation::from_gamma(1.0);
    record_optimum(fit, run_search(tmpl, {Param::Phi, Param::N, Param::Gamma}, series, options),
                   options);
  } else {
    fit.gamma_mode = "profile";
    const auto& profile = std::get<ProfileGamma>(options.gamma);
    std::optional<Search> best;
    std::size_t evaluations = 0;
    for (double g : profile.grid()) {
      tmpl.modulation = Modulation::from_gamma(g);
      auto search = run_search(tmpl, {Param::Phi, Param::N}, series, options);
      evaluations += search.result.evaluations;
      const bool ok = search.result.best_f < kPenaltyBase;
      fit.profile.push_back({g, ok ? std::optional<double>(-search.result.best_f) : std::nullopt});
      if (ok && (!best || search.result.best_f < best->result.best_f)) best = std::move(search);
    }
    if (best) {
      record_optimum(fit, *best, options);
    } else {
      fit.feasible = false;
      fit.error = "no feasible parameter point found at any profiled gamma";
    }
    fit.optimizer.seed = options.swarm.seed;
    fit.optimizer.iters = options.swarm.max_iters;
    fit.optimizer.pop = options.swarm.pop_size;
    fit.optimizer.evaluations = evaluations;
  }
  return fit;
}

}  // namespace relifit
