#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace relifit {

/// One observed interval: its length and how many failures closed it.
struct IntervalRecord {
  double t;
  std::uint32_t failures;
};

/// Ordered inter-failure observations of one release. Cumulative counts are
/// derived on construction; every constructor validates t > 0 and k >= 1.
class FailureSeries {
 public:
  FailureSeries() = default;
  FailureSeries(std::string release_id, std::vector<IntervalRecord> records);

  /// Convenience for the common case of one failure per interval.
  static FailureSeries single_failures(std::string release_id, std::span<const double> t);

  const std::string& release_id() const { return release_id_; }
  std::span<const IntervalRecord> records() const { return records_; }

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // Accessors take the 1-based interval ordinal used throughout the models.
  double t(std::size_t i) const { return records_[i - 1].t; }
  std::uint32_t failures(std::size_t i) const { return records_[i - 1].failures; }
  std::uint64_t cum(std::size_t i) const { return cum_[i - 1]; }
  std::uint64_t cum_prev(std::size_t i) const { return i == 1 ? 0 : cum_[i - 2]; }

  std::uint64_t total_failures() const { return cum_.empty() ? 0 : cum_.back(); }
  double total_time() const;

 private:
  std::string release_id_;
  std::vector<IntervalRecord> records_;
  std::vector<std::uint64_t> cum_;
};

}  // namespace relifit
