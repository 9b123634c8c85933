#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "relifit/error.hpp"
#include "relifit/likelihood.hpp"
#include "test_support.hpp"

namespace relifit {
namespace {

TEST(LogLikelihood, HandEvaluatedJm) {
  const std::vector<double> t = {1.0, 1.0};
  const auto series = FailureSeries::single_failures("r", t);
  const double expected = std::log(0.3) - 0.3 + std::log(0.2) - 0.2;
  EXPECT_NEAR(*log_likelihood(ModelSpec::jm(0.1, 3), series), expected, 1e-14);
  EXPECT_NEAR(expected, -3.3134, 1e-4);
}

TEST(LogLikelihood, UnitExponential) {
  const std::vector<double> t = {1.0};
  EXPECT_NEAR(*log_likelihood(ModelSpec::jm(1.0, 1.0), FailureSeries::single_failures("r", t)),
              -1.0, 1e-15);
}

TEST(LogLikelihood, InfeasibleIsNullopt) {
  const std::vector<double> t = {1.0, 1.0, 1.0};
  EXPECT_FALSE(log_likelihood(ModelSpec::jm(0.1, 2.0), FailureSeries::single_failures("r", t)));
}

TEST(LogLikelihood, ProposedTwoRoutes) {
  std::mt19937_64 gen(3);
  const auto series = testing_support::random_series(gen, 10, 3);
  const auto spec = ModelSpec::proposed(0.004, 60, DebugProbs(0.9, 0.04), Modulation::from_mu(0.4));
  EXPECT_NEAR(*log_likelihood(spec, series), *log_likelihood_closed_form(spec, series), 1e-10);
}

TEST(LogLikelihood, TwoRoutesAllConstantHazardKinds) {
  std::mt19937_64 gen(5);
  for (auto kind : {ModelKind::JM, ModelKind::GOI, ModelKind::Mahapatra, ModelKind::Proposed}) {
    for (int rep = 0; rep < 50; ++rep) {
      const auto series = testing_support::random_series(gen, 5 + rep % 20, 3);
      const auto spec = testing_support::random_feasible_spec(gen, kind, series);
      const double a = *log_likelihood(spec, series);
      const double b = *log_likelihood_closed_form(spec, series);
      EXPECT_NEAR(a, b, 1e-10 * std::max(1.0, std::abs(a))) << to_token(kind);
    }
  }
}

TEST(LogLikelihood, ClosedFormRejectsTimeVaryingKinds) {
  const std::vector<double> t = {1.0};
  const auto series = FailureSeries::single_failures("r", t);
  EXPECT_THROW(log_likelihood_closed_form(ModelSpec::sw(0.1, 3), series), UnsupportedKindError);
  EXPECT_THROW(llf_gradient(ModelSpec::msw(0.1, 3), series), UnsupportedKindError);
}

TEST(LogLikelihood, InvariantUnderRelabeling) {
  std::mt19937_64 gen(9);
  const auto a = testing_support::random_series(gen, 12, 3);
  const FailureSeries b("other", std::vector<IntervalRecord>(a.records().begin(), a.records().end()));
  const auto spec = ModelSpec::mahapatra(0.003, 80, default_debug_probs());
  EXPECT_EQ(*log_likelihood(spec, a), *log_likelihood(spec, b));
}

TEST(Gradient, HandEvaluatedJm) {
  const std::vector<double> t = {1.0, 1.0};
  const auto g = llf_gradient(ModelSpec::jm(0.1, 3), FailureSeries::single_failures("r", t));
  EXPECT_NEAR(g.d_phi, 15.0, 1e-12);
  EXPECT_FALSE(g.d_gamma);
}

TEST(Gradient, SingleObservationOptimum) {
  const std::vector<double> t = {4.0};
  const double n0 = 7.0;
  const auto spec = ModelSpec::jm(1.0 / (n0 * t[0]), n0);
  const auto r = stationarity_residuals(spec, FailureSeries::single_failures("r", t));
  EXPECT_NEAR(r.r_phi, 0.0, 1e-12);
}

TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937_64 gen(17);
  for (auto kind : {ModelKind::JM, ModelKind::GOI, ModelKind::Mahapatra, ModelKind::Proposed}) {
    for (int rep = 0; rep < 50; ++rep) {
      const auto series = testing_support::random_series(gen, 5 + rep % 25, 2);
      const auto spec = testing_support::random_feasible_spec(gen, kind, series);
      const auto g = llf_gradient(spec, series);
      const auto fd = testing_support::central_difference_gradient(spec, series);
      EXPECT_LT(testing_support::rel_err(g.d_phi, fd[0]), 1e-5) << to_token(kind);
      EXPECT_LT(testing_support::rel_err(g.d_n, fd[1]), 1e-5) << to_token(kind);
      if (kind == ModelKind::Proposed) {
        ASSERT_TRUE(g.d_gamma);
        EXPECT_LT(testing_support::rel_err(*g.d_gamma, fd[2]), 1e-5);
      }
    }
  }
}

TEST(Stationarity, SameExpressionsAsGradient) {
  std::mt19937_64 gen(21);
  const auto series = testing_support::random_series(gen, 15, 2);
  const auto spec = testing_support::random_feasible_spec(gen, ModelKind::GOI, series);
  const auto g = llf_gradient(spec, series);
  const auto r = stationarity_residuals(spec, series);
  EXPECT_EQ(r.r_phi, g.d_phi);
  EXPECT_EQ(r.r_n, g.d_n);
}

TEST(Stationarity, PerturbedOptimumHasNegativePhiResidual) {
  // For fixed N the phi optimum is n / sum(B t); scaling phi up makes r_phi < 0.
  std::mt19937_64 gen(23);
  const auto series = testing_support::random_series(gen, 20, 1);
  auto spec = ModelSpec::jm(1.0, 40.0);
  double sbt = 0.0;
  for (std::size_t i = 1; i <= series.size(); ++i) sbt += (40.0 - (i - 1.0)) * series.t(i);
  spec.phi = static_cast<double>(series.size()) / sbt;
  EXPECT_NEAR(stationarity_residuals(spec, series).r_phi, 0.0, 1e-9);
  spec.phi *= 1.5;
  EXPECT_LT(stationarity_residuals(spec, series).r_phi, 0.0);
}

TEST(Gradient, RequiresStrictFeasibility) {
  const std::vector<double> t = {1.0, 1.0};
  EXPECT_THROW(llf_gradient(ModelSpec::jm(0.1, 1.0), FailureSeries::single_failures("r", t)),
               FeasibilityError);
}

class PenaltyTest : public ::testing::Test {
 protected:
  FailureSeries series = FailureSeries::single_failures("r", std::vector<double>{1, 2, 3, 4, 5});
  Objective obj{ModelSpec::jm(0.1, 10), series, {Param::Phi, Param::N},
                {{1e-6, 1.0, Scale::Log}, {1.0, 20.0, Scale::Linear}}};
};

TEST_F(PenaltyTest, FeasibleIsNegativeLlf) {
  const std::vector<double> x = {0.05, 12.0};
  EXPECT_EQ(penalized_objective(obj, x), -*log_likelihood(ModelSpec::jm(0.05, 12.0), series));
}

TEST_F(PenaltyTest, InfeasibleHitsPenalty) {
  const std::vector<double> x = {0.05, 3.0};
  EXPECT_GE(penalized_objective(obj, x), kPenaltyBase);
}

TEST_F(PenaltyTest, MonotoneInViolation) {
  const std::vector<double> mild = {0.05, 3.5};
  const std::vector<double> severe = {0.05, 1.5};
  EXPECT_GT(penalized_objective(obj, severe), penalized_objective(obj, mild));
}

TEST_F(PenaltyTest, DominatesFeasibleValues) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> lphi(std::log(1e-6), 0.0), nn(1.0, 20.0);
  double worst_feasible = -INFINITY, best_infeasible = INFINITY;
  for (int k = 0; k < 5000; ++k) {
    const std::vector<double> x = {std::exp(lphi(gen)), nn(gen)};
    const double v = penalized_objective(obj, x);
    if (log_likelihood(obj.materialize(x), series)) {
      worst_feasible = std::max(worst_feasible, v);
    } else {
      best_infeasible = std::min(best_infeasible, v);
    }
  }
  EXPECT_LT(worst_feasible, best_infeasible);
}

TEST(Objective, ValidatesBounds) {
  const auto series = FailureSeries::single_failures("r", std::vector<double>{1, 2});
  EXPECT_THROW(Objective(ModelSpec::jm(0.1, 10), series, {Param::Gamma}, {{1.0, 2.0, Scale::Linear}}),
               DomainError);
  EXPECT_THROW(Objective(ModelSpec::jm(0.1, 10), series, {Param::Phi}, {{0.0, 1.0, Scale::Log}}),
               DomainError);
  EXPECT_THROW(Objective(ModelSpec::jm(0.1, 10), series, {Param::Phi, Param::N}, {{0.1, 1.0}}),
               DomainError);
}

TEST(DefaultBound, Box) {
  const auto series = FailureSeries("r", {{1.0, 2}, {1.0, 3}});
  const auto n = default_bound(Param::N, series);
  EXPECT_EQ(n.lo, 5.0);
  EXPECT_EQ(n.hi, 60.0);
  const auto phi = default_bound(Param::Phi, series);
  EXPECT_EQ(phi.scale, Scale::Log);
  EXPECT_EQ(default_bound(Param::Gamma, series).lo, 1.0);
}

}  // namespace
}  // namespace relifit
