#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "relifit/compare.hpp"
#include "relifit/error.hpp"
#include "relifit/fit.hpp"
#include "relifit/gof.hpp"
#include "relifit/simulate.hpp"

namespace relifit {
namespace {

TEST(Predicted, Means) {
  const auto one = FailureSeries::single_failures("r", std::vector<double>{1.0});
  EXPECT_DOUBLE_EQ(predicted_intervals(ModelSpec::jm(0.5, 1.0), one)[0], 2.0);
  // c_1 = phi N = 2
  EXPECT_NEAR(predicted_intervals(ModelSpec::sw(0.5, 4.0), one)[0], std::sqrt(std::numbers::pi / 4.0),
              1e-15);
  EXPECT_NEAR(predicted_intervals(ModelSpec::sw(0.5, 4.0), one)[0], 0.8862, 1e-4);
}

TEST(Sse, Examples) {
  // lambda_i = 0.1 * (10, 9, 8) -> means (1, 1/0.9, 1/0.8)
  const auto spec = ModelSpec::jm(0.1, 10.0);
  const std::vector<double> exact = {1.0, 1.0 / 0.9, 1.0 / 0.8};
  EXPECT_NEAR(sse(spec, FailureSeries::single_failures("r", exact)), 0.0, 1e-28);
  const std::vector<double> off = {2.0, 1.0 / 0.9 - 2.0 + 4.0, 1.0 / 0.8 + 3.0};
  EXPECT_NEAR(sse(spec, FailureSeries::single_failures("r", off)), 1.0 + 4.0 + 9.0, 1e-12);
}

TEST(Mse, Arithmetic) {
  EXPECT_DOUBLE_EQ(mse_from_sse(12.0, 10, 4), 2.0);
  EXPECT_THROW(mse_from_sse(12.0, 2, 2), DomainError);
  EXPECT_THROW(mse_from_sse(12.0, 2, 3), DomainError);
}

FitResult fake(ModelKind kind, double sse_value, std::optional<double> mse_value, double llf,
               bool feasible = true) {
  FitResult f;
  f.kind = kind;
  f.feasible = feasible;
  f.sse = sse_value;
  f.mse = mse_value;
  f.llf = llf;
  return f;
}

TEST(Rank, OrderAndTies) {
  const std::vector<FitResult> fits = {
      fake(ModelKind::JM, 3.0, 1.0, -5.0),
      fake(ModelKind::SW, 1.0, 0.5, -9.0),
      fake(ModelKind::GOI, 1.0, std::nullopt, -1.0),
      fake(ModelKind::MSW, 1.0, 0.5, -2.0),
      fake(ModelKind::Mahapatra, 0.1, 0.1, 0.0, false),
  };
  const auto rank = rank_fits(fits);
  EXPECT_EQ(rank[3], 1u);
  EXPECT_EQ(rank[1], 2u);
  EXPECT_EQ(rank[2], 3u);
  EXPECT_EQ(rank[0], 4u);
  EXPECT_FALSE(rank[4]);
}

TEST(WinRate, TenOfTwelve) {
  std::vector<ReleaseComparison> releases;
  for (int i = 0; i < 12; ++i) {
    ReleaseComparison rc;
    rc.release_id = std::to_string(i);
    rc.fits = {fake(ModelKind::Proposed, i < 10 ? 1.0 : 2.0, 1.0, 0.0),
               fake(ModelKind::JM, 1.5, 1.0, 0.0)};
    rc.rank = rank_fits(rc.fits);
    releases.push_back(rc);
  }
  const std::vector<ModelKind> models = {ModelKind::Proposed, ModelKind::JM};
  const auto wr = win_rates(releases, models);
  EXPECT_EQ(wr[0].wins, 10u);
  EXPECT_EQ(wr[0].releases, 12u);
  EXPECT_NEAR(wr[0].percent(), 83.33, 5e-3);
  EXPECT_EQ(wr[1].wins, 2u);
}

FitOptions quick_options(std::uint64_t seed) {
  FitOptions o;
  o.swarm.seed = seed;
  o.swarm.max_iters = 300;
  return o;
}

TEST(Compare, SingleModelRanksFirst) {
  const auto series = simulate_series(ModelSpec::jm(0.01, 30), 20, 4);
  const std::vector<ModelKind> models = {ModelKind::GOI};
  const auto rc = compare_release(series, models, quick_options(0));
  ASSERT_EQ(rc.fits.size(), 1u);
  EXPECT_EQ(rc.rank[0], 1u);
  EXPECT_EQ(rc.winner(), ModelKind::GOI);
}

TEST(Compare, JmBeatsSwOnJmData) {
  const std::vector<ModelKind> models = {ModelKind::JM, ModelKind::SW};
  int jm_wins = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto series = simulate_series(ModelSpec::jm(0.001, 50), 40, seed);
    if (compare_release(series, models, quick_options(seed)).winner() == ModelKind::JM) ++jm_wins;
  }
  EXPECT_GE(jm_wins, 16);
}

TEST(Compare, FailedFitIsRecorded) {
  // Two observations leave no degrees of freedom for MSE with k = 2.
  const auto series = FailureSeries::single_failures("r", std::vector<double>{1.0, 2.0});
  const std::vector<ModelKind> models = {ModelKind::JM};
  const auto rc = compare_release(series, models, quick_options(0));
  ASSERT_EQ(rc.fits.size(), 1u);
  EXPECT_TRUE(rc.fits[0].feasible);
  EXPECT_FALSE(rc.fits[0].mse);
}

TEST(Fit, ParameterCounts) {
  EXPECT_EQ(estimated_parameter_count(ModelKind::JM, EstimateGamma{}), 2u);
  EXPECT_EQ(estimated_parameter_count(ModelKind::Proposed, EstimateGamma{}), 3u);
  EXPECT_EQ(estimated_parameter_count(ModelKind::Proposed, ProfileGamma{1, 2, 0.5}), 3u);
  EXPECT_EQ(estimated_parameter_count(ModelKind::Proposed, FixedGamma{Modulation::from_mu(0.5)}), 2u);
}

TEST(Fit, FixedMuReportsGamma) {
  const auto series = simulate_series(ModelSpec::jm(0.01, 30), 20, 2);
  FitOptions o = quick_options(0);
  o.gamma = FixedGamma{Modulation::from_mu(0.5)};
  const auto res = fit_model(series, ModelKind::Proposed, o);
  ASSERT_TRUE(res.feasible);
  EXPECT_DOUBLE_EQ(*res.gamma, 1.5);
  EXPECT_DOUBLE_EQ(*res.mu, 0.5);
  EXPECT_EQ(res.gamma_mode, "fixed");
  EXPECT_EQ(res.k_params, 2u);
}

TEST(Fit, ProfileKeepsBestGridPoint) {
  const auto series = simulate_series(ModelSpec::jm(0.01, 30), 20, 2);
  FitOptions o = quick_options(0);
  o.gamma = ProfileGamma{1.0, 2.0, 0.25};
  const auto res = fit_model(series, ModelKind::Proposed, o);
  ASSERT_TRUE(res.feasible);
  ASSERT_EQ(res.profile.size(), 5u);
  double best = -INFINITY;
  for (const auto& pt : res.profile) {
    if (pt.llf) best = std::max(best, *pt.llf);
  }
  EXPECT_EQ(res.llf, best);
  EXPECT_EQ(res.gamma_mode, "profile");
}

TEST(Fit, EstimatedGammaWithinBounds) {
  const auto series = simulate_series(ModelSpec::jm(0.01, 30), 20, 2);
  const auto res = fit_model(series, ModelKind::Proposed, quick_options(1));
  ASSERT_TRUE(res.feasible);
  EXPECT_GE(*res.gamma, 1.0);
  EXPECT_LE(*res.gamma, 50.0);
  EXPECT_NEAR(*res.mu, mu_from_gamma(*res.gamma), 1e-15);
  EXPECT_EQ(res.k_params, 3u);
}

TEST(Fit, OptimumIsNoWorseThanGenerator) {
  const auto truth = ModelSpec::jm(0.001, 50);
  const auto series = simulate_series(truth, 40, 6);
  const auto res = fit_model(series, ModelKind::JM, quick_options(0));
  ASSERT_TRUE(res.feasible);
  EXPECT_GE(res.llf, *log_likelihood(truth, series));
  EXPECT_GE(res.n_real, 40.0);
}

TEST(Fit, RejectsBadOptions) {
  const auto series = FailureSeries::single_failures("r", std::vector<double>{1.0, 2.0, 3.0});
  FitOptions o;
  o.p = 0.03;
  o.r = 0.95;
  EXPECT_THROW(fit_model(series, ModelKind::GOI, o), DomainError);
  EXPECT_THROW(fit_model(FailureSeries(), ModelKind::JM, FitOptions{}), DomainError);
}

}  // namespace
}  // namespace relifit
