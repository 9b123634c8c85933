#pragma once

namespace relifit {

/// Modulation factor gamma = mu + (1 - mu) / mu for mu in (0, 1].
/// Throws DomainError outside that range.
double gamma_from_mu(double mu);

/// Inverse of gamma_from_mu on the (0, 1] branch. Throws DomainError if
/// gamma < 1.
double mu_from_gamma(double gamma);

/// A consistent (mu, gamma) pair. gamma is the canonical value; mu is kept
/// alongside so callers that started from mu get it back unchanged.
class Modulation {
 public:
  static Modulation from_mu(double mu);
  static Modulation from_gamma(double gamma);

  double mu() const { return mu_; }
  double gamma() const { return gamma_; }

 private:
  Modulation(double mu, double gamma) : mu_(mu), gamma_(gamma) {}

  double mu_;
  double gamma_;
};

}  // namespace relifit
