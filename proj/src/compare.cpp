#include "relifit/compare.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "relifit/error.hpp"

namespace relifit {

std::optional<ModelKind> ReleaseComparison::winner() const {
  for (std::size_t k = 0; k < fits.size(); ++k) {
    if (rank[k] && *rank[k] == 1) return fits[k].kind;
  }
  return std::nullopt;
}

double WinRate::percent() const {
  return releases == 0 ? 0.0 : 100.0 * static_cast<double>(wins) / static_cast<double>(releases);
}

std::vector<std::optional<std::size_t>> rank_fits(std::span<const FitResult> fits) {
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < fits.size(); ++k) {
    if (fits[k].feasible) order.push_back(k);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& fa = fits[a];
    const auto& fb = fits[b];
    if (fa.sse != fb.sse) return fa.sse < fb.sse;
    if (fa.mse.has_value() != fb.mse.has_value()) return fa.mse.has_value();
    if (fa.mse && *fa.mse != *fb.mse) return *fa.mse < *fb.mse;
    return fa.llf > fb.llf;
  });
  std::vector<std::optional<std::size_t>> rank(fits.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos + 1;
  return rank;
}

ReleaseComparison compare_release(const FailureSeries& series, std::span<const ModelKind> models,
                                  const FitOptions& options) {
  if (models.empty()) throw DomainError("compare needs at least one model");
  std::vector<std::future<FitResult>> pending;
  pending.reserve(models.size());
  for (ModelKind kind : models) {
    pending.push_back(std::async(std::launch::async, [&series, &options, kind] {
      try {
        return fit_model(series, kind, options);
      } catch (const std::exception& e) {
        FitResult failed;
        failed.release_id = series.release_id();
        failed.kind = kind;
        failed.feasible = false;
        failed.error = e.what();
        failed.observations = series.size();
        failed.total_failures = series.total_failures();
        return failed;
      }
    }));
  }
  ReleaseComparison out;
  out.release_id = series.release_id();
  for (auto& f : pending) out.fits.push_back(f.get());
  out.rank = rank_fits(out.fits);
  return out;
}

std::vector<WinRate> win_rates(std::span<const ReleaseComparison> releases,
                               std::span<const ModelKind> models) {
  std::vector<WinRate> rates;
  for (ModelKind kind : models) {
    const auto wins = static_cast<std::size_t>(
        std::count_if(releases.begin(), releases.end(),
                      [kind](const ReleaseComparison& rc) { return rc.winner() == kind; }));
    rates.push_back({kind, wins, releases.size()});
  }
  return rates;
}

CompareReport compare(std::span<const FailureSeries> releases, std::span<const ModelKind> models,
                      const FitOptions& options) {
  CompareReport report;
  report.models.assign(models.begin(), models.end());
  for (const auto& series : releases) {
    report.releases.push_back(compare_release(series, models, options));
  }
  report.win_rates = win_rates(report.releases, models);
  return report;
}

}  // namespace relifit
