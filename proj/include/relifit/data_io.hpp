#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "relifit/series.hpp"

namespace relifit {

/// Releases read from (or written to) a failure-interval CSV:
///
///   # unit: hours
///   release,interval_index,t,failures
///   3.2,1,12.5,1
///
/// The unit comment is optional and must precede the header.
struct FailureDataset {
  std::optional<std::string> unit;
  std::vector<FailureSeries> releases;

  const FailureSeries* find(std::string_view release_id) const;
};

/// Parses the failure-interval schema. One series per release in order of
/// first appearance, records sorted by interval_index. Throws SchemaError
/// with the offending line number.
FailureDataset read_failure_csv(std::istream& in);
FailureDataset load_failure_csv(const std::filesystem::path& path);

/// Canonical form: unit comment (if any), header, rows with indices 1..m and
/// shortest round-trip decimals. Loading canonical output and writing it
/// again is byte-identical.
void write_failure_csv(std::ostream& out, const FailureDataset& data);
void save_failure_csv(const std::filesystem::path& path, const FailureDataset& data);

using TimePoint = std::chrono::sys_time<std::chrono::milliseconds>;

/// Accepts YYYY-MM-DD, YYYY-MM-DDTHH:MM[:SS[.fff]] (space also allowed as the
/// separator) with an optional Z or +HH:MM / -HH:MM offset. Throws
/// DomainError on anything else.
TimePoint parse_iso8601(std::string_view text);
std::string format_iso8601(TimePoint tp);

struct BugRecord {
  std::string bug_id;
  TimePoint report_time;
  /// Remaining columns (summary, status, commit, commit_time), carried as-is.
  std::vector<std::pair<std::string, std::string>> extra;
};

enum class ReleaseKind { Major, Minor };

struct ReleaseWindow {
  std::string release_id;
  TimePoint start;
  TimePoint end;  // exclusive
  ReleaseKind kind = ReleaseKind::Minor;
};

std::vector<BugRecord> read_bug_reports(std::istream& in);
std::vector<BugRecord> load_bug_reports(const std::filesystem::path& path);

/// Windows must satisfy start < end and be ordered and non-overlapping.
std::vector<ReleaseWindow> read_release_windows(std::istream& in);
std::vector<ReleaseWindow> load_release_windows(const std::filesystem::path& path);

/// Each distinct report time after the first closes an interval; the first
/// report in a window anchors the time axis.
struct PerFailure {};
/// Fixed bins of `width_hours` from the window start; empty bins merge into
/// the next nonempty one.
struct FixedWidth {
  double width_hours;
};
using Grouping = std::variant<PerFailure, FixedWidth>;

/// Parses "per-failure" or "fixed:<hours>" (an optional trailing "h" is
/// accepted). Throws DomainError.
Grouping parse_grouping(std::string_view text);

struct IngestResult {
  FailureDataset dataset;  // unit "hours", one series per window
  std::size_t skipped = 0;  // reports outside every window
  /// Reports used only as the time origin of their window (per-failure).
  std::size_t anchors = 0;
  std::vector<std::string> warnings;
};

/// Turns bug reports into per-release failure series. Interval lengths are in
/// hours. Coincident timestamps merge into one interval with k > 1.
IngestResult ingest_bug_reports(std::span<const BugRecord> bugs,
                                std::span<const ReleaseWindow> windows, const Grouping& grouping);

}  // namespace relifit
