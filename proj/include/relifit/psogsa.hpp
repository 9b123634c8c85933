#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "relifit/bounds.hpp"

namespace relifit {

/// Hyperparameters of the hybrid PSO / gravitational-search minimizer.
struct SwarmConfig {
  std::size_t pop_size = 30;
  std::size_t max_iters = 1000;
  double c1 = 0.5;  // weight on the gravitational acceleration
  double c2 = 1.5;  // pull toward the global best
  double w_start = 0.9;
  double w_end = 0.4;
  double g0 = 100.0;
  double alpha = 20.0;
  double eps = 1e-9;
  std::uint64_t seed = 0;
  double vmax_frac = 0.2;

  void validate() const;
};

/// Population snapshot after the fitness/mass step of a generation. Positions
/// and velocities are row-major pop_size x dim in the unit box.
struct SwarmState {
  std::size_t dim = 0;
  std::size_t iter = 0;
  std::vector<double> positions;
  std::vector<double> velocities;
  std::vector<double> fitness;
  std::vector<double> masses;
  std::vector<double> gbest_x;
  double gbest_f = 0.0;
};

struct MinimizeResult {
  std::vector<double> best_x;  // natural scale
  double best_f = 0.0;
  std::vector<double> trace;   // gbest_f after each generation
  std::size_t evaluations = 0;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;
using SwarmObserver = std::function<void(const SwarmState&)>;

/// Normalized GSA masses for minimization: m_i = (f_i - worst) / (best - worst),
/// M_i = m_i / sum m. Uniform when every fitness is equal.
std::vector<double> mass_distribution(std::span<const double> fitness);

/// Minimizes f over the box. Each generation evaluates every agent, updates
/// the elitist global best, computes masses and gravitational accelerations,
/// then moves agents with
///   v <- w v + c1 r1 a + c2 r2 (gbest - x),   x <- x + v
/// in the unit box (velocity clamped to vmax_frac, positions to [0, 1]).
/// Results are bitwise reproducible for a given seed.
MinimizeResult minimize(const ObjectiveFn& f, std::span<const ParamBound> bounds,
                        const SwarmConfig& cfg, const SwarmObserver& observer = {});

}  // namespace relifit
