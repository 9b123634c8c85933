#include "relifit/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relifit/error.hpp"

namespace relifit {

namespace {

void require_constant_hazard(const ModelSpec& spec, const char* what) {
  if (!has_constant_hazard(spec.kind)) {
    throw UnsupportedKindError(std::string(what) + " is defined for constant-hazard models only, not " +
                               std::string(to_token(spec.kind)));
  }
}

// d B_i / d gamma for the Proposed bracket, with the i = 1 term fixed at 0.
double gamma_sensitivity(const ModelSpec& spec, const FailureSeries& series, std::size_t i) {
  if (i == 1) return 0.0;
  return static_cast<double>(series.cum_prev(i)) / static_cast<double>(i - 1) * spec.debug->net();
}

LlfGradient gradient_terms(const ModelSpec& spec, const FailureSeries& series) {
  spec.validate();
  require_constant_hazard(spec, "LLF gradient");
  const double n = static_cast<double>(series.size());
  double sum_bt = 0.0;
  double sum_inv_b = 0.0;
  double sum_t = 0.0;
  double sum_c_over_b = 0.0;
  double sum_ct = 0.0;
  const bool with_gamma = spec.kind == ModelKind::Proposed && !spec.gamma_override;
  for (std::size_t i = 1; i <= series.size(); ++i) {
    const auto ctx = observed_context(series, i);
    const double b = remaining_fault_term(spec, ctx);
    if (!(b > 0.0)) {
      throw FeasibilityError("gradient requires a strictly feasible spec (interval " +
                             std::to_string(i) + ")");
    }
    const double t = series.t(i);
    sum_bt += b * t;
    sum_inv_b += 1.0 / b;
    sum_t += t;
    if (with_gamma) {
      const double c = gamma_sensitivity(spec, series, i);
      sum_c_over_b += c / b;
      sum_ct += c * t;
    }
  }
  LlfGradient g{n / spec.phi - sum_bt, sum_inv_b - spec.phi * sum_t, std::nullopt};
  if (with_gamma) g.d_gamma = -sum_c_over_b + spec.phi * sum_ct;
  return g;
}

}  // namespace

std::optional<double> log_likelihood(const ModelSpec& spec, const FailureSeries& series) {
  spec.validate();
  double llf = 0.0;
  for (std::size_t i = 1; i <= series.size(); ++i) {
    const auto ctx = observed_context(series, i);
    if (!(remaining_fault_term(spec, ctx) > 0.0)) return std::nullopt;
    llf += log_density(spec, ctx);
  }
  return llf;
}

std::optional<double> log_likelihood_closed_form(const ModelSpec& spec,
                                                 const FailureSeries& series) {
  spec.validate();
  require_constant_hazard(spec, "closed-form LLF");
  double sum_log_b = 0.0;
  double sum_bt = 0.0;
  for (std::size_t i = 1; i <= series.size(); ++i) {
    const double b = remaining_fault_term(spec, observed_context(series, i));
    if (!(b > 0.0)) return std::nullopt;
    sum_log_b += std::log(b);
    sum_bt += b * series.t(i);
  }
  const double n = static_cast<double>(series.size());
  return n * std::log(spec.phi) + sum_log_b - spec.phi * sum_bt;
}

LlfGradient llf_gradient(const ModelSpec& spec, const FailureSeries& series) {
  return gradient_terms(spec, series);
}

StationarityResiduals stationarity_residuals(const ModelSpec& spec, const FailureSeries& series) {
  const auto g = gradient_terms(spec, series);
  return {g.d_phi, g.d_n};
}

double worst_violation(const ModelSpec& spec, const FailureSeries& series) {
  double worst = 0.0;
  for (std::size_t i = 1; i <= series.size(); ++i) {
    worst = std::max(worst, -remaining_fault_term(spec, observed_context(series, i)));
  }
  return worst;
}

std::string_view to_string(Param p) {
  switch (p) {
    case Param::Phi:
      return "phi";
    case Param::N:
      return "N";
    case Param::Gamma:
      return "gamma";
  }
  return "?";
}

Objective::Objective(ModelSpec spec_template, FailureSeries series, std::vector<Param> free_params,
                     std::vector<ParamBound> bounds)
    : template_(std::move(spec_template)),
      series_(std::move(series)),
      free_(std::move(free_params)),
      bounds_(std::move(bounds)) {
  if (free_.size() != bounds_.size()) throw DomainError("one bound per free parameter required");
  for (std::size_t d = 0; d < free_.size(); ++d) {
    const auto& b = bounds_[d];
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi)) {
      throw DomainError("bounds for " + std::string(to_string(free_[d])) +
                        " must be finite with lo < hi");
    }
    if (b.scale == Scale::Log && !(b.lo > 0.0)) {
      throw DomainError("log-scale bounds need lo > 0");
    }
    if (free_[d] == Param::Gamma) {
      if (template_.kind != ModelKind::Proposed) {
        throw DomainError("gamma is free only for the proposed model");
      }
      if (b.lo < 1.0) throw DomainError("gamma bounds must lie in [1, inf)");
    }
    if (std::count(free_.begin(), free_.end(), free_[d]) != 1) {
      throw DomainError("free parameter listed twice");
    }
  }
  if (series_.empty()) throw DomainError("objective needs a nonempty series");
}

ModelSpec Objective::materialize(std::span<const double> x) const {
  ModelSpec spec = template_;
  for (std::size_t d = 0; d < free_.size(); ++d) {
    switch (free_[d]) {
      case Param::Phi:
        spec.phi = x[d];
        break;
      case Param::N:
        spec.n_initial = x[d];
        break;
      case Param::Gamma:
        spec.modulation = Modulation::from_gamma(x[d]);
        break;
    }
  }
  return spec;
}

double penalized_objective(const Objective& obj, std::span<const double> x) {
  const ModelSpec spec = obj.materialize(x);
  if (const auto llf = log_likelihood(spec, obj.series())) return -*llf;
  return kPenaltyBase + kPenaltyScale * worst_violation(spec, obj.series());
}

ParamBound default_bound(Param p, const FailureSeries& series) {
  const double total = static_cast<double>(series.total_failures());
  switch (p) {
    case Param::Phi:
      return {1e-8, 1e-1, Scale::Log};
    case Param::N:
      return {total, 10.0 * total + 10.0, Scale::Linear};
    case Param::Gamma:
      return {1.0, 50.0, Scale::Linear};
  }
  return {};
}

}  // namespace relifit
