#include "relifit/psogsa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "relifit/error.hpp"
#include "relifit/rng.hpp"

namespace relifit {

void SwarmConfig::validate() const {
  if (pop_size < 2) throw DomainError("swarm needs at least 2 agents");
  if (max_iters < 1) throw DomainError("max_iters must be >= 1");
  for (double c : {c1, c2, w_start, w_end, g0, alpha, eps}) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("swarm coefficients must be >= 0");
  }
  if (!(vmax_frac > 0.0 && vmax_frac <= 1.0)) throw DomainError("vmax_frac must lie in (0, 1]");
}

std::vector<double> mass_distribution(std::span<const double> fitness) {
  const std::size_t n = fitness.size();
  if (n < 2) throw DomainError("mass distribution needs at least 2 agents");
  const auto [lo, hi] = std::minmax_element(fitness.begin(), fitness.end());
  const double best = *lo;
  const double worst = *hi;
  std::vector<double> m(n, 1.0 / static_cast<double>(n));
  if (!(worst > best)) return m;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = (fitness[i] - worst) / (best - worst);
    total += m[i];
  }
  for (double& mi : m) mi /= total;
  return m;
}

namespace {

struct Swarm {
  std::size_t pop;
  std::size_t dim;
  std::vector<double> x;
  std::vector<double> v;
  std::vector<double> accel;
  std::vector<double> fitness;
  std::vector<Rng> streams;

  double* pos(std::size_t i) { return x.data() + i * dim; }
  const double* pos(std::size_t i) const { return x.data() + i * dim; }
};

// Gravitational acceleration of every agent. Each agent draws its pair
// weights from its own stream so the result does not depend on loop order.
void compute_accelerations(Swarm& s, std::span<const double> masses, double g, double eps) {
  std::fill(s.accel.begin(), s.accel.end(), 0.0);
  for (std::size_t i = 0; i < s.pop; ++i) {
    const double* xi = s.pos(i);
    double* ai = s.accel.data() + i * s.dim;
    for (std::size_t j = 0; j < s.pop; ++j) {
      const double weight = s.streams[i].uniform();
      if (j == i) continue;
      const double* xj = s.pos(j);
      double r2 = 0.0;
      for (std::size_t d = 0; d < s.dim; ++d) r2 += (xj[d] - xi[d]) * (xj[d] - xi[d]);
      const double scale = weight * g * masses[i] * masses[j] / (std::sqrt(r2) + eps);
      for (std::size_t d = 0; d < s.dim; ++d) ai[d] += scale * (xj[d] - xi[d]);
    }
    // Force -> acceleration. The worst agent has zero mass (and zero force).
    const double mi = masses[i] > 0.0 ? masses[i] : masses[i] + eps;
    for (std::size_t d = 0; d < s.dim; ++d) ai[d] /= mi;
  }
}

}  // namespace

MinimizeResult minimize(const ObjectiveFn& f, std::span<const ParamBound> bounds,
                        const SwarmConfig& cfg, const SwarmObserver& observer) {
  cfg.validate();
  const std::size_t dim = bounds.size();
  if (dim == 0) throw DomainError("minimize needs at least one dimension");
  for (const auto& b : bounds) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi)) {
      throw DomainError("bounds must be finite with lo < hi");
    }
    if (b.scale == Scale::Log && !(b.lo > 0.0)) throw DomainError("log-scale bounds need lo > 0");
  }

  Swarm s{cfg.pop_size, dim, {}, {}, {}, {}, {}};
  s.x.resize(s.pop * dim);
  s.v.assign(s.pop * dim, 0.0);
  s.accel.assign(s.pop * dim, 0.0);
  s.fitness.assign(s.pop, 0.0);
  const Rng master(cfg.seed);
  s.streams.reserve(s.pop);
  for (std::size_t i = 0; i < s.pop; ++i) s.streams.push_back(master.split(i));
  for (std::size_t i = 0; i < s.pop; ++i) {
    for (std::size_t d = 0; d < dim; ++d) s.pos(i)[d] = s.streams[i].uniform();
  }

  MinimizeResult result;
  result.trace.reserve(cfg.max_iters);
  std::vector<double> gbest(dim, 0.0);
  double gbest_f = std::numeric_limits<double>::infinity();
  std::vector<double> natural(dim);
  const double vmax = cfg.vmax_frac;

  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    for (std::size_t i = 0; i < s.pop; ++i) {
      for (std::size_t d = 0; d < dim; ++d) natural[d] = to_natural(bounds[d], s.pos(i)[d]);
      double fi = f(natural);
      if (std::isnan(fi)) fi = std::numeric_limits<double>::infinity();
      s.fitness[i] = fi;
      ++result.evaluations;
      if (fi < gbest_f) {
        gbest_f = fi;
        std::copy(s.pos(i), s.pos(i) + dim, gbest.begin());
      }
    }
    result.trace.push_back(gbest_f);

    const auto masses = mass_distribution(s.fitness);
    if (observer) {
      observer(SwarmState{dim, iter, s.x, s.v, s.fitness, masses, gbest, gbest_f});
    }
    if (iter + 1 == cfg.max_iters) break;

    const double progress = static_cast<double>(iter) / static_cast<double>(cfg.max_iters);
    const double g = cfg.g0 * std::exp(-cfg.alpha * progress);
    const double w =
        cfg.max_iters > 1
            ? cfg.w_start - (cfg.w_start - cfg.w_end) * static_cast<double>(iter) /
                                static_cast<double>(cfg.max_iters - 1)
            : cfg.w_start;
    compute_accelerations(s, masses, g, cfg.eps);

    for (std::size_t i = 0; i < s.pop; ++i) {
      double* xi = s.pos(i);
      double* vi = s.v.data() + i * dim;
      const double* ai = s.accel.data() + i * dim;
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = s.streams[i].uniform();
        const double r2 = s.streams[i].uniform();
        double vd = w * vi[d] + cfg.c1 * r1 * ai[d] + cfg.c2 * r2 * (gbest[d] - xi[d]);
        if (!std::isfinite(vd)) vd = 0.0;
        vi[d] = std::clamp(vd, -vmax, vmax);
        xi[d] = std::clamp(xi[d] + vi[d], 0.0, 1.0);
      }
    }
  }

  result.best_x.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) result.best_x[d] = to_natural(bounds[d], gbest[d]);
  result.best_f = gbest_f;
  return result;
}

}  // namespace relifit
