#include "relifit/model.hpp"

#include <cmath>
#include <string>

#include "relifit/error.hpp"

namespace relifit {

namespace {

struct KindInfo {
  ModelKind kind;
  std::string_view token;
  std::string_view display;
};

constexpr std::array<KindInfo, 6> kKindInfo = {{
    {ModelKind::JM, "jm", "JM Model"},
    {ModelKind::SW, "sw", "SW Model"},
    {ModelKind::GOI, "goi", "GOI Model"},
    {ModelKind::Mahapatra, "mahapatra", "GS Mahapatra Model"},
    {ModelKind::MSW, "msw", "MSW Model"},
    {ModelKind::Proposed, "proposed", "Proposed Model"},
}};

const KindInfo& info(ModelKind kind) { return kKindInfo[static_cast<std::size_t>(kind)]; }

}  // namespace

std::string_view to_token(ModelKind kind) { return info(kind).token; }

std::string_view display_name(ModelKind kind) { return info(kind).display; }

std::optional<ModelKind> parse_model_kind(std::string_view token) {
  for (const auto& k : kKindInfo) {
    if (k.token == token) return k.kind;
  }
  return std::nullopt;
}

bool has_constant_hazard(ModelKind kind) {
  return kind != ModelKind::SW && kind != ModelKind::MSW;
}

bool uses_debug_probs(ModelKind kind) {
  return kind == ModelKind::GOI || kind == ModelKind::Mahapatra || kind == ModelKind::Proposed;
}

DebugProbs::DebugProbs(double p, double r) : p_(p), r_(r) {
  if (!(p >= 0.0 && p <= 1.0) || !(r >= 0.0 && r <= 1.0)) {
    throw DomainError("debugging probabilities must lie in [0, 1]");
  }
  if (p + r > 1.0) {
    throw DomainError("p + r must not exceed 1 (q = 1 - p - r >= 0)");
  }
  if (!(p > r)) {
    throw DomainError("fault removal probability must exceed introduction probability (p > r), got p=" +
                      std::to_string(p) + ", r=" + std::to_string(r));
  }
}

ModelSpec ModelSpec::jm(double phi, double n_initial) {
  return ModelSpec{ModelKind::JM, phi, n_initial, std::nullopt, std::nullopt, std::nullopt};
}

ModelSpec ModelSpec::sw(double phi, double n_initial) {
  return ModelSpec{ModelKind::SW, phi, n_initial, std::nullopt, std::nullopt, std::nullopt};
}

ModelSpec ModelSpec::goi(double phi, double n_initial, DebugProbs debug) {
  return ModelSpec{ModelKind::GOI, phi, n_initial, debug, std::nullopt, std::nullopt};
}

ModelSpec ModelSpec::mahapatra(double phi, double n_initial, DebugProbs debug) {
  return ModelSpec{ModelKind::Mahapatra, phi, n_initial, debug, std::nullopt, std::nullopt};
}

ModelSpec ModelSpec::msw(double phi, double n_initial) {
  return ModelSpec{ModelKind::MSW, phi, n_initial, std::nullopt, std::nullopt, std::nullopt};
}

ModelSpec ModelSpec::proposed(double phi, double n_initial, DebugProbs debug,
                              Modulation modulation) {
  return ModelSpec{ModelKind::Proposed, phi, n_initial, debug, modulation, std::nullopt};
}

void ModelSpec::validate() const {
  if (!(phi > 0.0) || !std::isfinite(phi)) throw DomainError("phi must be positive");
  if (!(n_initial > 0.0) || !std::isfinite(n_initial)) {
    throw DomainError("initial fault count N must be positive");
  }
  if (uses_debug_probs(kind) && !debug) {
    throw DomainError(std::string(to_token(kind)) + " requires debugging probabilities");
  }
  if (kind == ModelKind::Proposed && !modulation && !gamma_override) {
    throw DomainError("proposed model requires a modulation factor");
  }
  if (gamma_override && kind != ModelKind::Proposed) {
    throw DomainError("gamma override applies to the proposed model only");
  }
}

void IntervalContext::validate() const {
  if (index < 1) throw DomainError("interval index is 1-based");
  if (index == 1 && cum_prev != 0) throw DomainError("n_0 must be 0 at the first interval");
  if (!(elapsed >= 0.0)) throw DomainError("elapsed time must be non-negative");
}

IntervalContext observed_context(const FailureSeries& series, std::size_t i) {
  return IntervalContext{i, series.cum_prev(i), series.t(i)};
}

double effective_gamma(const ModelSpec& spec, std::size_t index) {
  if (spec.gamma_override) {
    const auto& seq = *spec.gamma_override;
    if (index > seq.size()) {
      throw DomainError("gamma override has no entry for interval " + std::to_string(index));
    }
    return seq[index - 1];
  }
  if (!spec.modulation) throw DomainError("no modulation factor set");
  return spec.modulation->gamma();
}

double remaining_fault_term(const ModelSpec& spec, const IntervalContext& ctx) {
  const double prior = static_cast<double>(ctx.index - 1);
  const double n_prev = static_cast<double>(ctx.cum_prev);
  switch (spec.kind) {
    case ModelKind::JM:
    case ModelKind::SW:
      return spec.n_initial - prior;
    case ModelKind::GOI:
      return spec.n_initial - spec.debug->p() * prior;
    case ModelKind::Mahapatra:
      return spec.n_initial - spec.debug->net() * prior;
    case ModelKind::MSW:
      return spec.n_initial - n_prev;
    case ModelKind::Proposed: {
      // 0/0 at i = 1: no corrections have happened yet.
      if (ctx.index == 1) return spec.n_initial;
      const double gamma = effective_gamma(spec, ctx.index);
      return spec.n_initial - (n_prev * gamma / prior) * spec.debug->net();
    }
  }
  return 0.0;
}

double hazard_coefficient(const ModelSpec& spec, const IntervalContext& ctx) {
  ctx.validate();
  const double remaining = remaining_fault_term(spec, ctx);
  if (!(remaining > 0.0)) {
    throw FeasibilityError(std::string(to_token(spec.kind)) + " model exhausted at interval " +
                           std::to_string(ctx.index) + " (remaining-fault term " +
                           std::to_string(remaining) + ")");
  }
  return spec.phi * remaining;
}

double hazard(const ModelSpec& spec, const IntervalContext& ctx) {
  const double c = hazard_coefficient(spec, ctx);
  return has_constant_hazard(spec.kind) ? c : c * ctx.elapsed;
}

double cumulative_hazard(const ModelSpec& spec, const IntervalContext& ctx) {
  const double c = hazard_coefficient(spec, ctx);
  const double t = ctx.elapsed;
  return has_constant_hazard(spec.kind) ? c * t : 0.5 * c * t * t;
}

double reliability(const ModelSpec& spec, const IntervalContext& ctx) {
  return std::exp(-cumulative_hazard(spec, ctx));
}

double cdf(const ModelSpec& spec, const IntervalContext& ctx) {
  return 1.0 - reliability(spec, ctx);
}

double density(const ModelSpec& spec, const IntervalContext& ctx) {
  return hazard(spec, ctx) * reliability(spec, ctx);
}

double log_density(const ModelSpec& spec, const IntervalContext& ctx) {
  return std::log(hazard(spec, ctx)) - cumulative_hazard(spec, ctx);
}

std::vector<double> jm_equivalent_gamma_sequence(const FailureSeries& series,
                                                 const DebugProbs& debug) {
  (void)debug;  // validated on construction; the sequence itself is (p, r)-free
  if (series.size() < 2) throw DomainError("gamma sequence needs at least two intervals");
  std::vector<double> gammas(series.size());
  gammas[0] = 1.0;
  for (std::size_t i = 2; i <= series.size(); ++i) {
    const auto n_prev = series.cum_prev(i);
    if (n_prev == 0) {
      throw DomainError("cumulative count n_" + std::to_string(i - 1) + " is zero");
    }
    const double prior = static_cast<double>(i - 1);
    gammas[i - 1] = prior * prior / static_cast<double>(n_prev);
  }
  return gammas;
}

}  // namespace relifit
