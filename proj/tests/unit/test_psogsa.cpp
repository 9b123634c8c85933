#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "relifit/error.hpp"
#include "relifit/psogsa.hpp"
#include "relifit/rng.hpp"

namespace relifit {
namespace {

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

const std::vector<ParamBound> kBox = {{-5.0, 5.0}, {-5.0, 5.0}};

TEST(MassDistribution, HandComputed) {
  const std::vector<double> f = {1.0, 2.0, 3.0};
  const auto m = mass_distribution(f);
  EXPECT_NEAR(m[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(m[1], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(m[2], 0.0);
}

TEST(MassDistribution, Degenerate) {
  const std::vector<double> f = {5.0, 5.0, 5.0};
  for (double m : mass_distribution(f)) EXPECT_DOUBLE_EQ(m, 1.0 / 3.0);
}

TEST(Minimize, Sphere) {
  SwarmConfig cfg;
  cfg.seed = 3;
  const auto res = minimize(sphere, kBox, cfg);
  EXPECT_LT(res.best_f, 1e-4);
  EXPECT_EQ(res.trace.size(), cfg.max_iters);
  EXPECT_EQ(res.evaluations, cfg.max_iters * cfg.pop_size);
}

TEST(Minimize, ShiftedSphere) {
  SwarmConfig cfg;
  cfg.seed = 8;
  const auto res = minimize(
      [](std::span<const double> x) {
        return (x[0] - 1.0) * (x[0] - 1.0) + (x[1] - 2.0) * (x[1] - 2.0);
      },
      kBox, cfg);
  EXPECT_NEAR(res.best_x[0], 1.0, 1e-2);
  EXPECT_NEAR(res.best_x[1], 2.0, 1e-2);
}

TEST(Minimize, LogScaleDimension) {
  SwarmConfig cfg;
  cfg.seed = 1;
  cfg.max_iters = 300;
  const std::vector<ParamBound> box = {{1e-8, 1e-1, Scale::Log}};
  const auto res = minimize(
      [](std::span<const double> x) {
        const double d = std::log(x[0]) - std::log(3e-5);
        return d * d;
      },
      box, cfg);
  EXPECT_NEAR(res.best_x[0], 3e-5, 3e-7);
}

TEST(Minimize, Deterministic) {
  SwarmConfig cfg;
  cfg.seed = 99;
  cfg.max_iters = 200;
  const auto a = minimize(sphere, kBox, cfg);
  const auto b = minimize(sphere, kBox, cfg);
  EXPECT_EQ(a.best_x, b.best_x);
  EXPECT_EQ(a.best_f, b.best_f);
  EXPECT_EQ(a.trace, b.trace);
  cfg.seed = 100;
  EXPECT_NE(minimize(sphere, kBox, cfg).trace, a.trace);
}

TEST(Minimize, StateInvariants) {
  SwarmConfig cfg;
  cfg.seed = 5;
  cfg.max_iters = 100;
  double last_gbest = INFINITY;
  std::size_t calls = 0;
  minimize(sphere, kBox, cfg, [&](const SwarmState& s) {
    ++calls;
    for (double p : s.positions) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
    for (double v : s.velocities) EXPECT_LE(std::abs(v), cfg.vmax_frac + 1e-15);
    EXPECT_NEAR(std::accumulate(s.masses.begin(), s.masses.end(), 0.0), 1.0, 1e-12);
    for (double m : s.masses) EXPECT_GE(m, 0.0);
    EXPECT_LE(s.gbest_f, last_gbest);
    last_gbest = s.gbest_f;
  });
  EXPECT_EQ(calls, cfg.max_iters);
}

TEST(Minimize, RespectsBox) {
  SwarmConfig cfg;
  cfg.max_iters = 100;
  const std::vector<ParamBound> box = {{2.0, 3.0}, {-1.0, -0.5}};
  minimize(
      [&](std::span<const double> x) {
        EXPECT_GE(x[0], 2.0);
        EXPECT_LE(x[0], 3.0);
        EXPECT_GE(x[1], -1.0);
        EXPECT_LE(x[1], -0.5);
        return sphere(x);
      },
      box, cfg);
}

TEST(Minimize, TraceNonincreasing) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SwarmConfig cfg;
    cfg.seed = seed;
    cfg.max_iters = 200;
    const auto res = minimize(
        [](std::span<const double> x) { return std::abs(std::sin(3 * x[0])) + x[1] * x[1]; }, kBox,
        cfg);
    for (std::size_t i = 1; i < res.trace.size(); ++i) EXPECT_LE(res.trace[i], res.trace[i - 1]);
  }
}

TEST(Minimize, RejectsBadInput) {
  SwarmConfig cfg;
  EXPECT_THROW(minimize(sphere, std::vector<ParamBound>{}, cfg), DomainError);
  EXPECT_THROW(minimize(sphere, std::vector<ParamBound>{{1.0, 1.0}}, cfg), DomainError);
  EXPECT_THROW(minimize(sphere, std::vector<ParamBound>{{0.0, 1.0, Scale::Log}}, cfg), DomainError);
  cfg.pop_size = 1;
  EXPECT_THROW(minimize(sphere, kBox, cfg), DomainError);
}

TEST(Rng, StreamsAreReproducible) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  Rng c = Rng(42).split(1), d = Rng(42).split(1), e = Rng(42).split(2);
  EXPECT_EQ(c.next(), d.next());
  EXPECT_NE(Rng(42).split(1).next(), e.next());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform_pos();
    EXPECT_GT(u, 0.0);
    EXPECT_LE(u, 1.0);
  }
}

TEST(Bounds, RoundTrip) {
  const ParamBound lin{-2.0, 6.0}, lg{1e-8, 1e-1, Scale::Log};
  EXPECT_DOUBLE_EQ(to_natural(lin, 0.25), 0.0);
  EXPECT_NEAR(to_natural(lg, 0.5), std::sqrt(1e-8 * 1e-1), 1e-18);
  EXPECT_EQ(to_natural(lg, 1.0), 1e-1);
  EXPECT_EQ(to_natural(lg, 0.0), 1e-8);
  EXPECT_NEAR(to_unit(lg, to_natural(lg, 0.37)), 0.37, 1e-14);
}

}  // namespace
}  // namespace relifit
