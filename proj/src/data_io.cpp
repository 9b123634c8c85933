#include "relifit/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "relifit/error.hpp"

namespace relifit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

struct CsvRecord {
  std::size_t line = 0;
  std::string raw;
  std::vector<std::string> fields;

  bool blank() const { return trim(raw).empty(); }
  bool comment() const { return !raw.empty() && trim(raw).starts_with('#'); }
};

// RFC 4180 reader: quoted fields may hold commas, doubled quotes and
// newlines. CRLF line endings are accepted.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  bool next(CsvRecord& rec) {
    rec.raw.clear();
    rec.fields.clear();
    rec.line = line_ + 1;
    if (in_.peek() == std::char_traits<char>::eof()) return false;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;
    char c = 0;
    while (in_.get(c)) {
      if (quoted) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get(c);
            field.push_back('"');
            rec.raw += "\"\"";
            continue;
          }
          quoted = false;
        } else {
          if (c == '\n') ++line_;
          field.push_back(c);
        }
        rec.raw.push_back(c);
        continue;
      }
      if (c == '\r' && in_.peek() == '\n') continue;
      if (c == '\n') {
        ++line_;
        break;
      }
      rec.raw.push_back(c);
      if (c == '"' && field.empty() && !field_was_quoted) {
        quoted = true;
        field_was_quoted = true;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
      } else {
        field.push_back(c);
      }
    }
    if (quoted) throw SchemaError("unterminated quoted field", rec.line);
    rec.fields.push_back(std::move(field));
    return true;
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty() || s.front() == '+') return std::nullopt;
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Reads past blank lines and (optionally) comments up to the header row.
// Returns the header fields; comments are handed to `on_comment`.
template <typename OnComment>
std::vector<std::string> read_header(CsvReader& reader, CsvRecord& rec, OnComment on_comment) {
  while (reader.next(rec)) {
    if (rec.blank()) continue;
    if (rec.comment()) {
      on_comment(trim(rec.raw));
      continue;
    }
    std::vector<std::string> header;
    for (const auto& f : rec.fields) header.push_back(lower(trim(f)));
    return header;
  }
  throw SchemaError("missing header row");
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

constexpr std::string_view kFailureHeader = "release,interval_index,t,failures";

}  // namespace

const FailureSeries* FailureDataset::find(std::string_view release_id) const {
  for (const auto& s : releases) {
    if (s.release_id() == release_id) return &s;
  }
  return nullptr;
}

FailureDataset read_failure_csv(std::istream& in) {
  CsvReader reader(in);
  CsvRecord rec;
  FailureDataset data;
  const auto header = read_header(reader, rec, [&](std::string_view comment) {
    comment.remove_prefix(1);
    comment = trim(comment);
    if (comment.starts_with("unit:")) {
      comment.remove_prefix(5);
      data.unit = std::string(trim(comment));
    }
  });
  const std::vector<std::string> expected = {"release", "interval_index", "t", "failures"};
  if (header != expected) {
    throw SchemaError("header must be '" + std::string(kFailureHeader) + "'", rec.line);
  }

  struct Row {
    std::uint64_t index;
    IntervalRecord record;
  };
  std::vector<std::string> order;
  std::map<std::string, std::vector<Row>> rows;
  std::map<std::string, std::set<std::uint64_t>> seen;
  while (reader.next(rec)) {
    if (rec.blank() || rec.comment()) continue;
    if (rec.fields.size() != 4) {
      throw SchemaError("expected 4 columns, found " + std::to_string(rec.fields.size()), rec.line);
    }
    const std::string release(trim(rec.fields[0]));
    if (release.empty()) throw SchemaError("empty release label", rec.line);
    const auto index = parse_number<std::uint64_t>(rec.fields[1]);
    if (!index || *index < 1) throw SchemaError("interval_index must be a positive integer", rec.line);
    const auto t = parse_number<double>(rec.fields[2]);
    if (!t || !std::isfinite(*t) || !(*t > 0.0)) {
      throw SchemaError("t must be a positive number", rec.line);
    }
    const auto k = parse_number<std::uint32_t>(rec.fields[3]);
    if (!k || *k < 1) throw SchemaError("failures must be a positive integer", rec.line);
    if (!seen[release].insert(*index).second) {
      throw SchemaError("duplicate interval " + std::to_string(*index) + " for release '" +
                            release + "'",
                        rec.line);
    }
    if (!rows.contains(release)) order.push_back(release);
    rows[release].push_back({*index, {*t, *k}});
  }

  for (const auto& release : order) {
    auto& r = rows[release];
    std::stable_sort(r.begin(), r.end(), [](const Row& a, const Row& b) { return a.index < b.index; });
    std::vector<IntervalRecord> records;
    records.reserve(r.size());
    for (const auto& row : r) records.push_back(row.record);
    data.releases.emplace_back(release, std::move(records));
  }
  return data;
}

FailureDataset load_failure_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_failure_csv(in);
}

void write_failure_csv(std::ostream& out, const FailureDataset& data) {
  if (data.unit) out << "# unit: " << *data.unit << '\n';
  out << kFailureHeader << '\n';
  for (const auto& series : data.releases) {
    for (std::size_t i = 1; i <= series.size(); ++i) {
      out << series.release_id() << ',' << i << ',' << format_double(series.t(i)) << ','
          << series.failures(i) << '\n';
    }
  }
}

void save_failure_csv(const std::filesystem::path& path, const FailureDataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_failure_csv(out, data);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

TimePoint parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  const std::string_view original = text;
  auto fail = [&]() -> TimePoint {
    throw DomainError("invalid ISO-8601 timestamp '" + std::string(original) + "'");
  };
  text = trim(text);
  auto take_int = [&](std::size_t digits) -> std::optional<int> {
    if (text.size() < digits) return std::nullopt;
    int value = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
      value = value * 10 + (text[i] - '0');
    }
    text.remove_prefix(digits);
    return value;
  };
  auto take_char = [&](char c) {
    if (text.empty() || text.front() != c) return false;
    text.remove_prefix(1);
    return true;
  };

  const auto y = take_int(4);
  if (!y || !take_char('-')) return fail();
  const auto mo = take_int(2);
  if (!mo || !take_char('-')) return fail();
  const auto d = take_int(2);
  if (!d) return fail();
  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)},
                           day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return fail();
  TimePoint tp = time_point_cast<milliseconds>(sys_days{ymd});
  if (text.empty()) return tp;

  if (!take_char('T') && !take_char(' ')) return fail();
  const auto hh = take_int(2);
  if (!hh || *hh > 23 || !take_char(':')) return fail();
  const auto mm = take_int(2);
  if (!mm || *mm > 59) return fail();
  int ss = 0;
  long long frac_ms = 0;
  if (take_char(':')) {
    const auto s = take_int(2);
    if (!s || *s > 60) return fail();
    ss = *s;
    if (take_char('.') || take_char(',')) {
      int digits = 0;
      long long scale = 100;
      while (!text.empty() && std::isdigit(static_cast<unsigned char>(text.front()))) {
        if (digits < 3) frac_ms += (text.front() - '0') * scale;
        scale /= 10;
        ++digits;
        text.remove_prefix(1);
      }
      if (digits == 0) return fail();
    }
  }
  tp += hours{*hh} + minutes{*mm} + seconds{ss} + milliseconds{frac_ms};

  if (text.empty() || take_char('Z')) {
    if (!text.empty()) return fail();
    return tp;
  }
  const bool negative = text.front() == '-';
  if (!take_char('+') && !take_char('-')) return fail();
  const auto oh = take_int(2);
  if (!oh || *oh > 23) return fail();
  take_char(':');
  const auto om = take_int(2);
  if (!om || *om > 59 || !text.empty()) return fail();
  const minutes offset = hours{*oh} + minutes{*om};
  return negative ? tp + offset : tp - offset;
}

std::string format_iso8601(TimePoint tp) {
  using namespace std::chrono;
  const auto day_start = floor<days>(tp);
  const year_month_day ymd{day_start};
  const hh_mm_ss hms{tp - day_start};
  char buf[48];
  const auto ms = hms.subseconds().count();
  if (ms == 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()), static_cast<int>(hms.hours().count()),
                  static_cast<int>(hms.minutes().count()), static_cast<int>(hms.seconds().count()),
                  static_cast<int>(ms));
  }
  return buf;
}

std::vector<BugRecord> read_bug_reports(std::istream& in) {
  CsvReader reader(in);
  CsvRecord rec;
  const auto header = read_header(reader, rec, [](std::string_view) {});
  const auto col = [&](std::string_view name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto id_col = col("bug_id");
  const auto time_col = col("report_time");
  if (!id_col || !time_col) {
    throw SchemaError("bug-report header needs bug_id and report_time columns", rec.line);
  }

  std::vector<BugRecord> bugs;
  while (reader.next(rec)) {
    if (rec.blank()) continue;
    if (rec.fields.size() != header.size()) {
      throw SchemaError("expected " + std::to_string(header.size()) + " columns, found " +
                            std::to_string(rec.fields.size()),
                        rec.line);
    }
    BugRecord bug;
    bug.bug_id = std::string(trim(rec.fields[*id_col]));
    if (bug.bug_id.empty()) throw SchemaError("empty bug_id", rec.line);
    try {
      bug.report_time = parse_iso8601(rec.fields[*time_col]);
    } catch (const DomainError& e) {
      throw SchemaError(e.what(), rec.line);
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c != *id_col && c != *time_col) bug.extra.emplace_back(header[c], rec.fields[c]);
    }
    bugs.push_back(std::move(bug));
  }
  return bugs;
}

std::vector<BugRecord> load_bug_reports(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_bug_reports(in);
}

std::vector<ReleaseWindow> read_release_windows(std::istream& in) {
  CsvReader reader(in);
  CsvRecord rec;
  const auto header = read_header(reader, rec, [](std::string_view) {});
  const std::vector<std::string> expected = {"release", "start", "end", "kind"};
  if (header != expected) throw SchemaError("header must be 'release,start,end,kind'", rec.line);

  std::vector<ReleaseWindow> windows;
  while (reader.next(rec)) {
    if (rec.blank() || rec.comment()) continue;
    if (rec.fields.size() != 4) throw SchemaError("expected 4 columns", rec.line);
    ReleaseWindow w;
    w.release_id = std::string(trim(rec.fields[0]));
    if (w.release_id.empty()) throw SchemaError("empty release label", rec.line);
    try {
      w.start = parse_iso8601(rec.fields[1]);
      w.end = parse_iso8601(rec.fields[2]);
    } catch (const DomainError& e) {
      throw SchemaError(e.what(), rec.line);
    }
    const auto kind = lower(trim(rec.fields[3]));
    if (kind == "major") {
      w.kind = ReleaseKind::Major;
    } else if (kind == "minor") {
      w.kind = ReleaseKind::Minor;
    } else {
      throw SchemaError("kind must be 'major' or 'minor'", rec.line);
    }
    if (!(w.start < w.end)) throw SchemaError("window start must precede its end", rec.line);
    if (!windows.empty() && w.start < windows.back().end) {
      throw SchemaError("windows must be ordered and non-overlapping", rec.line);
    }
    windows.push_back(std::move(w));
  }
  return windows;
}

std::vector<ReleaseWindow> load_release_windows(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_release_windows(in);
}

Grouping parse_grouping(std::string_view text) {
  text = trim(text);
  if (text == "per-failure") return PerFailure{};
  if (text.starts_with("fixed:")) {
    text.remove_prefix(6);
    if (text.ends_with('h')) text.remove_suffix(1);
    const auto width = parse_number<double>(text);
    if (width && std::isfinite(*width) && *width > 0.0) return FixedWidth{*width};
  }
  throw DomainError("grouping must be 'per-failure' or 'fixed:<hours>'");
}

IngestResult ingest_bug_reports(std::span<const BugRecord> bugs,
                                std::span<const ReleaseWindow> windows, const Grouping& grouping) {
  using namespace std::chrono;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    if (!(windows[w].start < windows[w].end) ||
        (w > 0 && windows[w].start < windows[w - 1].end)) {
      throw DomainError("release windows must be valid, ordered and non-overlapping");
    }
  }
  if (const auto* fixed = std::get_if<FixedWidth>(&grouping)) {
    if (!(fixed->width_hours > 0.0)) throw DomainError("bin width must be positive");
  }

  IngestResult out;
  out.dataset.unit = "hours";
  std::vector<std::vector<TimePoint>> per_window(windows.size());
  for (const auto& bug : bugs) {
    const auto it = std::upper_bound(
        windows.begin(), windows.end(), bug.report_time,
        [](const TimePoint& t, const ReleaseWindow& w) { return t < w.start; });
    if (it == windows.begin() || !(bug.report_time < std::prev(it)->end)) {
      ++out.skipped;
      continue;
    }
    per_window[static_cast<std::size_t>(std::prev(it) - windows.begin())].push_back(
        bug.report_time);
  }
  if (out.skipped > 0) {
    out.warnings.push_back(std::to_string(out.skipped) +
                           " bug report(s) outside every release window were skipped");
  }

  constexpr double kMsPerHour = 3600.0 * 1000.0;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    auto& times = per_window[w];
    std::sort(times.begin(), times.end());
    const auto& window = windows[w];
    if (times.size() < 2) {
      out.warnings.push_back("release '" + window.release_id + "' has fewer than 2 failures");
    }

    std::vector<IntervalRecord> records;
    if (std::holds_alternative<PerFailure>(grouping)) {
      std::size_t pos = 0;
      while (pos < times.size() && times[pos] == times.front()) ++pos;
      out.anchors += pos;
      // Fewer than two reports cannot form an interval.
      TimePoint prev = times.empty() ? TimePoint{} : times.front();
      while (pos < times.size()) {
        const TimePoint current = times[pos];
        std::uint32_t k = 0;
        while (pos < times.size() && times[pos] == current) {
          ++k;
          ++pos;
        }
        records.push_back(
            {static_cast<double>((current - prev).count()) / kMsPerHour, k});
        prev = current;
      }
    } else {
      const double width = std::get<FixedWidth>(grouping).width_hours;
      const double width_ms = width * kMsPerHour;
      std::map<long long, std::uint32_t> bins;
      for (const auto& t : times) {
        const auto offset = static_cast<double>((t - window.start).count());
        ++bins[static_cast<long long>(std::floor(offset / width_ms))];
      }
      long long prev_bin = -1;
      for (const auto& [bin, count] : bins) {
        records.push_back({static_cast<double>(bin - prev_bin) * width, count});
        prev_bin = bin;
      }
    }
    out.dataset.releases.emplace_back(window.release_id, std::move(records));
  }
  return out;
}

}  // namespace relifit
