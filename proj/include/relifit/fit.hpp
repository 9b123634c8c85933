#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "relifit/likelihood.hpp"
#include "relifit/model.hpp"
#include "relifit/psogsa.hpp"
#include "relifit/series.hpp"

namespace relifit {

/// gamma pinned to a known value (given directly or through mu).
struct FixedGamma {
  Modulation modulation;
};
/// gamma searched jointly with phi and N.
struct EstimateGamma {};
/// phi and N fitted at every gamma on lo:step:hi; the best LLF wins.
struct ProfileGamma {
  double lo;
  double hi;
  double step;

  std::vector<double> grid() const;
};

using GammaMode = std::variant<FixedGamma, EstimateGamma, ProfileGamma>;

struct FitOptions {
  double p = 0.95;
  double r = 0.03;
  GammaMode gamma = EstimateGamma{};
  SwarmConfig swarm;
  /// Replaces the default search box for the named parameters.
  std::map<Param, ParamBound> bounds;
};

struct ProfilePoint {
  double gamma;
  std::optional<double> llf;
};

struct OptimizerMeta {
  std::uint64_t seed = 0;
  std::size_t iters = 0;
  std::size_t pop = 0;
  std::size_t evaluations = 0;
  std::vector<double> trace_tail;  // last few gbest values, objective scale
};

/// Outcome of fitting one model to one release. When `feasible` is false the
/// optimizer never found a point where every interval is feasible; `error`
/// says why and the numeric fields are meaningless.
struct FitResult {
  std::string release_id;
  ModelKind kind = ModelKind::JM;
  bool feasible = false;
  std::string error;

  double phi = 0.0;
  double n_real = 0.0;
  long long n_rounded = 0;
  std::optional<double> gamma;
  std::optional<double> mu;
  std::string gamma_mode;  // "fixed", "estimated", "profile" for Proposed
  std::optional<double> p;
  std::optional<double> r;

  std::size_t observations = 0;
  std::uint64_t total_failures = 0;
  std::size_t k_params = 0;

  double llf = 0.0;
  std::optional<double> llf_rounded;  // LLF at N = n_rounded, if feasible
  double sse = 0.0;
  std::optional<double> mse;
  std::optional<StationarityResiduals> stationarity;
  std::vector<ProfilePoint> profile;
  OptimizerMeta optimizer;

  /// Spec at the continuous optimum.
  ModelSpec spec() const;
};

/// Number of freely estimated parameters for the kind under these options.
std::size_t estimated_parameter_count(ModelKind kind, const GammaMode& mode);

/// Fits `kind` to the series by minimizing the penalized negative LLF with
/// PSO-GSA. Throws DomainError for invalid options or an empty series; an
/// unsuccessful search is reported through FitResult::feasible instead.
FitResult fit_model(const FailureSeries& series, ModelKind kind, const FitOptions& options);

}  // namespace relifit
