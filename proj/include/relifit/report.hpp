#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relifit/compare.hpp"
#include "relifit/fit.hpp"

namespace relifit {

/// Version tag carried by every JSON document this library writes.
inline constexpr std::string_view kSchemaVersion = "relifit/1";

/// Pretty-printed FitResult document, newline-terminated. Output depends only
/// on the FitResult, so identical fits give byte-identical text.
std::string fit_result_to_json(const FitResult& fit);
/// Inverse of fit_result_to_json. Throws SchemaError on a malformed document
/// or an unknown schema version.
FitResult fit_result_from_json(std::string_view text);

/// "phi=... N=... LLF=... SSE=... MSE=..." for terminals.
std::string fit_summary_line(const FitResult& fit);

/// Table cell: "Φ=2.86E-05, N=5, n=11, γ=2.2666" in the comparison-table style.
std::string parameter_text(const FitResult& fit);

enum class ReportFormat { Json, Csv, Markdown };
std::optional<ReportFormat> parse_report_format(std::string_view token);

/// One block per release with columns
/// "Sr. No. | Model | Estimated Parameter values | SSE | MSE", followed by
/// the per-model win-rate summary.
std::string render_compare(const CompareReport& report, ReportFormat format);

struct MuPoint {
  std::string release_id;
  double mu;
  double gamma;
};

/// Orders labels like "2.10" after "2.9" by comparing dot-separated numeric
/// components; non-numeric components compare lexically.
bool release_label_less(std::string_view a, std::string_view b);

/// CSV "release,mu,gamma" sorted by release label.
std::string render_mu_csv(std::vector<MuPoint> points);

}  // namespace relifit
