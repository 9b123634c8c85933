#include "relifit/gof.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "relifit/error.hpp"

namespace relifit {

std::vector<double> predicted_intervals(const ModelSpec& spec, const FailureSeries& series) {
  spec.validate();
  std::vector<double> expected;
  expected.reserve(series.size());
  for (std::size_t i = 1; i <= series.size(); ++i) {
    const double c = hazard_coefficient(spec, IntervalContext{i, series.cum_prev(i), 0.0});
    expected.push_back(has_constant_hazard(spec.kind) ? 1.0 / c
                                                      : std::sqrt(std::numbers::pi / (2.0 * c)));
  }
  return expected;
}

double sse(const ModelSpec& spec, const FailureSeries& series) {
  if (series.empty()) throw DomainError("SSE of an empty series");
  const auto expected = predicted_intervals(spec, series);
  double total = 0.0;
  for (std::size_t i = 1; i <= series.size(); ++i) {
    const double residual = series.t(i) - expected[i - 1];
    total += residual * residual;
  }
  return total;
}

double mse_from_sse(double sse_value, std::size_t observations, std::size_t k_params) {
  if (observations <= k_params) {
    throw DomainError("MSE needs more observations (" + std::to_string(observations) +
                      ") than estimated parameters (" + std::to_string(k_params) + ")");
  }
  return sse_value / static_cast<double>(observations - k_params);
}

double mse(const ModelSpec& spec, const FailureSeries& series, std::size_t k_params) {
  return mse_from_sse(sse(spec, series), series.size(), k_params);
}

}  // namespace relifit
