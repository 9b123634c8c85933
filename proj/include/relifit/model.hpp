#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relifit/modulation.hpp"
#include "relifit/series.hpp"

namespace relifit {

/// The six failure-intensity models. Order follows the usual summary table.
enum class ModelKind { JM, SW, GOI, Mahapatra, MSW, Proposed };

inline constexpr std::array<ModelKind, 6> kAllModelKinds = {
    ModelKind::JM, ModelKind::SW, ModelKind::GOI, ModelKind::Mahapatra, ModelKind::MSW,
    ModelKind::Proposed};

/// Short CLI token: jm, sw, goi, mahapatra, msw, proposed.
std::string_view to_token(ModelKind kind);
/// Row label used in comparison tables ("GS Mahapatra Model", ...).
std::string_view display_name(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view token);

/// JM, GOI, Mahapatra and Proposed have a hazard constant within an
/// interval; SW and MSW grow linearly with elapsed time.
bool has_constant_hazard(ModelKind kind);
bool uses_debug_probs(ModelKind kind);

/// Imperfect-debugging probabilities. q = 1 - p - r is always derived.
class DebugProbs {
 public:
  /// Throws DomainError unless 0 <= r < p <= 1 and p + r <= 1.
  DebugProbs(double p, double r);

  double p() const { return p_; }
  double r() const { return r_; }
  double q() const { return 1.0 - p_ - r_; }
  /// Net correction probability p - r.
  double net() const { return p_ - r_; }

 private:
  double p_;
  double r_;
};

/// Default debugging probabilities: 95% removal, 3% introduction.
inline DebugProbs default_debug_probs() { return DebugProbs(0.95, 0.03); }

struct ModelSpec {
  ModelKind kind = ModelKind::JM;
  double phi = 0.0;
  double n_initial = 0.0;
  std::optional<DebugProbs> debug;
  std::optional<Modulation> modulation;
  /// Per-interval gamma_i (index i-1 holds interval i). Proposed only.
  std::optional<std::vector<double>> gamma_override;

  static ModelSpec jm(double phi, double n_initial);
  static ModelSpec sw(double phi, double n_initial);
  static ModelSpec goi(double phi, double n_initial, DebugProbs debug);
  static ModelSpec mahapatra(double phi, double n_initial, DebugProbs debug);
  static ModelSpec msw(double phi, double n_initial);
  static ModelSpec proposed(double phi, double n_initial, DebugProbs debug, Modulation modulation);

  /// Throws DomainError when a parameter is out of range or a field the kind
  /// needs is missing.
  void validate() const;
};

struct IntervalContext {
  std::size_t index = 1;        // 1-based interval ordinal i
  std::uint64_t cum_prev = 0;   // n_{i-1}
  double elapsed = 0.0;         // time since the interval began

  void validate() const;
};

/// Context for interval i of a series evaluated at its observed length.
IntervalContext observed_context(const FailureSeries& series, std::size_t i);

/// gamma used at interval `index`: the override entry if present, else the
/// spec's modulation factor.
double effective_gamma(const ModelSpec& spec, std::size_t index);

/// Bracketed remaining-fault term of the intensity (N minus the corrected
/// faults). Never throws on exhaustion; callers test the sign.
double remaining_fault_term(const ModelSpec& spec, const IntervalContext& ctx);

/// phi times the remaining-fault term. For SW/MSW the hazard is this times
/// elapsed time. Throws FeasibilityError when the term is <= 0.
double hazard_coefficient(const ModelSpec& spec, const IntervalContext& ctx);

double hazard(const ModelSpec& spec, const IntervalContext& ctx);
/// Integrated hazard from interval start to ctx.elapsed.
double cumulative_hazard(const ModelSpec& spec, const IntervalContext& ctx);
double reliability(const ModelSpec& spec, const IntervalContext& ctx);
double cdf(const ModelSpec& spec, const IntervalContext& ctx);
double density(const ModelSpec& spec, const IntervalContext& ctx);
/// ln density computed without forming the density, so it stays finite where
/// the density itself underflows.
double log_density(const ModelSpec& spec, const IntervalContext& ctx);

/// gamma_i = (i-1)^2 / n_{i-1} for i >= 2, gamma_1 = 1. Substituted into the
/// Proposed intensity this reproduces the Mahapatra intensity for any (p, r),
/// and the JM intensity at p = 1, r = 0.
std::vector<double> jm_equivalent_gamma_sequence(const FailureSeries& series,
                                                 const DebugProbs& debug);

}  // namespace relifit
