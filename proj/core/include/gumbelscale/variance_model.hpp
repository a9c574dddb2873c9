#pragma once

#include <functional>
#include <vector>

#include "gumbelscale/regvar.hpp"

namespace gumbelscale {

// Variance function sigma^2(t) of a centered Gaussian process with stationary
// increments.
class VarianceModel {
 public:
  enum class Family { kFbm, kPowerRV };

  // sigma^2(t) = t^{2H}.
  static VarianceModel fbm(double hurst);
  // sigma^2(t) = C^2 t^alpha l(t) with alpha in (1, 2]; K bounds sigma^2(t) / t^alpha.
  static VarianceModel power_rv(double alpha, double C, double K,
                                SlowlyVarying sv = SlowlyVarying::constant());

  Family family() const noexcept { return family_; }
  double sigma2(double t) const;
  double sigma(double t) const;
  double alpha() const noexcept { return alpha_; }
  double C() const noexcept { return C_; }
  double K() const noexcept { return K_; }
  double hurst() const;  // FBM only

  // Second differences of sigma^2 on [0, horizon] are >= -1e-9.
  bool convex_on(double horizon, int points = 1001) const;
  // sigma^2(t) <= K t^alpha on (0, horizon].
  bool bound_holds_on(double horizon, int points = 1001) const;
  // alpha in (1, 2], convexity and the K bound on [0, horizon].
  bool sup_tail_hypotheses(double horizon) const;

 private:
  VarianceModel(Family family, double alpha, double C, double K, SlowlyVarying sv);

  Family family_;
  double alpha_;
  double C_;
  double K_;
  SlowlyVarying sv_;
};

// Incremental variance Gamma(t1, t2) of the limiting Gaussian fluctuations.
class Variogram {
 public:
  explicit Variogram(std::function<double(double, double)> gamma);

  // Gamma(t1, t2) = scale |t1 - t2|^alpha, alpha in (0, 2].
  static Variogram power(double scale, double alpha);
  static Variogram zero();

  double operator()(double t1, double t2) const { return gamma_(t1, t2); }
  // sigma^2(t) = Gamma(t0, t) for the process anchored at t0.
  double sigma2(double t, double t0) const { return gamma_(t0, t); }

  // Checks Gamma(t,t) = 0, symmetry, and Gamma >= 0 off the diagonal
  // (> 0 when strict). Throws DomainError on the first violation.
  void validate_on(const std::vector<double>& grid, bool strict) const;

 private:
  std::function<double(double, double)> gamma_;
};

}  // namespace gumbelscale
