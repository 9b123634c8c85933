#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "relifit/model.hpp"
#include "relifit/series.hpp"

namespace relifit {

/// Inverse-CDF draw of an interval length given u in (0, 1]:
/// -ln(u) / lambda for constant hazards, sqrt(-2 ln(u) / c) for SW/MSW.
/// ctx.elapsed is ignored.
double sample_interval(const ModelSpec& spec, const IntervalContext& ctx, double u);

/// Draws `n_failures` intervals with one failure each. Deterministic in the
/// seed. Throws FeasibilityError if the model is exhausted before the last
/// interval.
FailureSeries simulate_series(const ModelSpec& spec, std::size_t n_failures, std::uint64_t seed,
                              std::string release_id = "sim");

}  // namespace relifit
