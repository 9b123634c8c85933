#include "relifit/modulation.hpp"

#include <cmath>
#include <string>

#include "relifit/error.hpp"

namespace relifit {

double gamma_from_mu(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw DomainError("modulation parameter mu must lie in (0, 1], got " + std::to_string(mu));
  }
  return mu + (1.0 - mu) / mu;
}

double mu_from_gamma(double gamma) {
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
    throw DomainError("modulation factor gamma must be >= 1, got " + std::to_string(gamma));
  }
  // Roots of mu^2 - (gamma + 1) mu + 1 multiply to 1, so the small root is
  // 2 / (large root sum). (gamma+1)^2 - 4 is factored to keep precision near 1.
  const double disc = std::sqrt((gamma - 1.0) * (gamma + 3.0));
  return 2.0 / ((gamma + 1.0) + disc);
}

Modulation Modulation::from_mu(double mu) { return Modulation(mu, gamma_from_mu(mu)); }

Modulation Modulation::from_gamma(double gamma) { return Modulation(mu_from_gamma(gamma), gamma); }

}  // namespace relifit
