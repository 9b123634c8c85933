#include "relifit/simulate.hpp"

#include <cmath>
#include <vector>

#include "relifit/error.hpp"
#include "relifit/rng.hpp"

namespace relifit {

double sample_interval(const ModelSpec& spec, const IntervalContext& ctx, double u) {
  if (!(u > 0.0 && u <= 1.0)) throw DomainError("inverse-CDF input must lie in (0, 1]");
  IntervalContext at_start = ctx;
  at_start.elapsed = 0.0;
  const double c = hazard_coefficient(spec, at_start);
  const double exposure = -std::log(u);
  return has_constant_hazard(spec.kind) ? exposure / c : std::sqrt(2.0 * exposure / c);
}

FailureSeries simulate_series(const ModelSpec& spec, std::size_t n_failures, std::uint64_t seed,
                              std::string release_id) {
  spec.validate();
  if (n_failures == 0) throw DomainError("simulate at least one failure");
  Rng rng(seed);
  std::vector<IntervalRecord> records;
  records.reserve(n_failures);
  for (std::size_t i = 1; i <= n_failures; ++i) {
    const IntervalContext ctx{i, i - 1, 0.0};
    double t = sample_interval(spec, ctx, rng.uniform_pos());
    // u = 1 gives t = 0, which no series may hold; redraw.
    while (!(t > 0.0)) t = sample_interval(spec, ctx, rng.uniform_pos());
    records.push_back({t, 1});
  }
  return FailureSeries(std::move(release_id), std::move(records));
}

}  // namespace relifit
