#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relifit/fit.hpp"
#include "relifit/model.hpp"
#include "relifit/series.hpp"

namespace relifit {

struct ReleaseComparison {
  std::string release_id;
  /// One fit per requested model, in request order.
  std::vector<FitResult> fits;
  /// rank[k] is the 1-based rank of fits[k]; nullopt for failed fits.
  std::vector<std::optional<std::size_t>> rank;

  /// Model with rank 1, if any fit succeeded.
  std::optional<ModelKind> winner() const;
};

struct WinRate {
  ModelKind kind;
  std::size_t wins;
  std::size_t releases;

  double percent() const;
};

struct CompareReport {
  std::vector<ModelKind> models;
  std::vector<ReleaseComparison> releases;
  std::vector<WinRate> win_rates;  // same order as `models`
};

/// Ranks successful fits by SSE ascending, then MSE ascending (absent MSE
/// sorts last), then LLF descending; remaining ties keep request order.
std::vector<std::optional<std::size_t>> rank_fits(std::span<const FitResult> fits);

/// Fits every model to the series (concurrently) and ranks them. Per-model
/// failures, including invalid options for one kind, are recorded in the
/// corresponding FitResult rather than thrown.
ReleaseComparison compare_release(const FailureSeries& series, std::span<const ModelKind> models,
                                  const FitOptions& options);

/// Per-release comparisons plus, for each model, the share of releases in
/// which it ranked first.
CompareReport compare(std::span<const FailureSeries> releases, std::span<const ModelKind> models,
                      const FitOptions& options);

std::vector<WinRate> win_rates(std::span<const ReleaseComparison> releases,
                               std::span<const ModelKind> models);

}  // namespace relifit
