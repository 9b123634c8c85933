#pragma once

#include <cstddef>
#include <vector>

#include "relifit/model.hpp"
#include "relifit/series.hpp"

namespace relifit {

/// Expected interval lengths under the model: 1/lambda_i for constant
/// hazards, sqrt(pi / (2 c_i)) (Rayleigh mean) for SW/MSW.
std::vector<double> predicted_intervals(const ModelSpec& spec, const FailureSeries& series);

/// Sum of squared residuals between observed and expected interval lengths.
double sse(const ModelSpec& spec, const FailureSeries& series);

/// SSE / (intervals - k_params). Throws DomainError when intervals <= k_params.
double mse(const ModelSpec& spec, const FailureSeries& series, std::size_t k_params);

/// Same arithmetic on precomputed values.
double mse_from_sse(double sse_value, std::size_t observations, std::size_t k_params);

}  // namespace relifit
