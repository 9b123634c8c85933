#include "relifit/series.hpp"

#include <cmath>

#include "relifit/error.hpp"

namespace relifit {

FailureSeries::FailureSeries(std::string release_id, std::vector<IntervalRecord> records)
    : release_id_(std::move(release_id)), records_(std::move(records)) {
  cum_.reserve(records_.size());
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& rec = records_[i];
    if (!(rec.t > 0.0) || !std::isfinite(rec.t)) {
      throw DomainError("interval " + std::to_string(i + 1) + " of release '" + release_id_ +
                        "' has non-positive length");
    }
    if (rec.failures < 1) {
      throw DomainError("interval " + std::to_string(i + 1) + " of release '" + release_id_ +
                        "' has no failures");
    }
    running += rec.failures;
    cum_.push_back(running);
  }
}

FailureSeries FailureSeries::single_failures(std::string release_id, std::span<const double> t) {
  std::vector<IntervalRecord> records;
  records.reserve(t.size());
  for (double ti : t) records.push_back({ti, 1});
  return FailureSeries(std::move(release_id), std::move(records));
}

double FailureSeries::total_time() const {
  double sum = 0.0;
  for (const auto& rec : records_) sum += rec.t;
  return sum;
}

}  // namespace relifit
