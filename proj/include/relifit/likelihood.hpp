#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "relifit/bounds.hpp"
#include "relifit/model.hpp"
#include "relifit/series.hpp"

namespace relifit {

/// Sum of ln f(t_i) over the series. nullopt when any interval is infeasible.
std::optional<double> log_likelihood(const ModelSpec& spec, const FailureSeries& series);

/// Closed form n ln(phi) + sum ln B_i - phi sum B_i t_i for constant-hazard
/// kinds, where B_i is the remaining-fault term. Independent second route for
/// log_likelihood. Throws UnsupportedKindError for SW/MSW.
std::optional<double> log_likelihood_closed_form(const ModelSpec& spec,
                                                 const FailureSeries& series);

struct LlfGradient {
  double d_phi;
  double d_n;
  /// Present for the Proposed kind with a scalar gamma.
  std::optional<double> d_gamma;
};

/// Analytic partials of the log-likelihood. Constant-hazard kinds only; the
/// spec must be strictly feasible (FeasibilityError otherwise).
LlfGradient llf_gradient(const ModelSpec& spec, const FailureSeries& series);

struct StationarityResiduals {
  double r_phi;  // n / phi - sum B_i t_i
  double r_n;    // sum 1 / B_i - phi sum t_i
};

/// First-order optimality residuals; both vanish at an interior MLE. These
/// are the same expressions as the phi and N partials of llf_gradient.
StationarityResiduals stationarity_residuals(const ModelSpec& spec, const FailureSeries& series);

/// Largest bracket violation max_i(-B_i), clipped at 0. Zero iff feasible
/// (up to B_i == 0, which is also infeasible).
double worst_violation(const ModelSpec& spec, const FailureSeries& series);

enum class Param { Phi, N, Gamma };
std::string_view to_string(Param p);

inline constexpr double kPenaltyBase = 1e9;
inline constexpr double kPenaltyScale = 1e6;

/// Negative log-likelihood over a subset of free parameters. The template
/// supplies the kind, pinned values and debugging probabilities; free
/// parameters are overwritten from the search vector in `free_params` order.
class Objective {
 public:
  Objective(ModelSpec spec_template, FailureSeries series, std::vector<Param> free_params,
            std::vector<ParamBound> bounds);

  const ModelSpec& spec_template() const { return template_; }
  const FailureSeries& series() const { return series_; }
  std::span<const Param> free_params() const { return free_; }
  std::span<const ParamBound> bounds() const { return bounds_; }
  std::size_t dim() const { return free_.size(); }

  /// Spec with the free parameters taken from x (natural scale).
  ModelSpec materialize(std::span<const double> x) const;

 private:
  ModelSpec template_;
  FailureSeries series_;
  std::vector<Param> free_;
  std::vector<ParamBound> bounds_;
};

/// -LLF when feasible, else kPenaltyBase + kPenaltyScale * worst violation.
double penalized_objective(const Objective& obj, std::span<const double> x);

/// Default search box for fitting `kind` to `series`:
/// phi in [1e-8, 1e-1] (log), N in [total, 10 total + 10], gamma in [1, 50].
ParamBound default_bound(Param p, const FailureSeries& series);

}  // namespace relifit
