#include "gumbelscale/variance_model.hpp"

#include <cmath>
#include <string>

#include "gumbelscale/errors.hpp"

namespace gumbelscale {

VarianceModel::VarianceModel(Family family, double alpha, double C, double K,
                             SlowlyVarying sv)
    : family_(family), alpha_(alpha), C_(C), K_(K), sv_(std::move(sv)) {}

VarianceModel VarianceModel::fbm(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("fbm: H must lie in (0, 1)");
  return VarianceModel(Family::kFbm, 2.0 * hurst, 1.0, 1.0, SlowlyVarying::constant());
}

VarianceModel VarianceModel::power_rv(double alpha, double C, double K,
                                      SlowlyVarying sv) {
  if (!(alpha > 1.0 && alpha <= 2.0)) {
    throw DomainError("power_rv: alpha must lie in (1, 2]");
  }
  if (!(C > 0.0) || !std::isfinite(C)) throw DomainError("power_rv: C must be positive");
  if (!(K > 0.0) || !std::isfinite(K)) throw DomainError("power_rv: K must be positive");
  return VarianceModel(Family::kPowerRV, alpha, C, K, std::move(sv));
}

double VarianceModel::sigma2(double t) const {
  if (!(t >= 0.0)) throw DomainError("sigma2: t must be >= 0");
  if (t == 0.0) return 0.0;
  return C_ * C_ * std::pow(t, alpha_) * std::exp(sv_.log_eval(t));
}

double VarianceModel::sigma(double t) const { return std::sqrt(sigma2(t)); }

double VarianceModel::hurst() const {
  if (family_ != Family::kFbm) throw UnsupportedVariant("hurst: not an FBM model");
  return alpha_ / 2.0;
}

bool VarianceModel::convex_on(double horizon, int points) const {
  const double h = horizon / (points - 1);
  for (int i = 1; i + 1 < points; ++i) {
    const double d2 = sigma2((i - 1) * h) - 2.0 * sigma2(i * h) + sigma2((i + 1) * h);
    if (d2 < -1e-9) return false;
  }
  return true;
}

bool VarianceModel::bound_holds_on(double horizon, int points) const {
  for (int i = 1; i < points; ++i) {
    const double t = horizon * i / (points - 1);
    if (sigma2(t) > K_ * std::pow(t, alpha_) * (1.0 + 1e-12)) return false;
  }
  return true;
}

bool VarianceModel::sup_tail_hypotheses(double horizon) const {
  return alpha_ > 1.0 && alpha_ <= 2.0 && convex_on(horizon) && bound_holds_on(horizon);
}

Variogram::Variogram(std::function<double(double, double)> gamma)
    : gamma_(std::move(gamma)) {
  if (!gamma_) throw DomainError("Variogram: empty function");
}

Variogram Variogram::power(double scale, double alpha) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw DomainError("Variogram::power: scale must be >= 0");
  }
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw DomainError("Variogram::power: alpha must lie in (0, 2]");
  }
  return Variogram([scale, alpha](double a, double b) {
    return scale * std::pow(std::abs(a - b), alpha);
  });
}

Variogram Variogram::zero() {
  return Variogram([](double, double) { return 0.0; });
}

void Variogram::validate_on(const std::vector<double>& grid, bool strict) const {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (gamma_(grid[i], grid[i]) != 0.0) {
      throw DomainError("Variogram: Gamma(t, t) != 0 at t = " + std::to_string(grid[i]));
    }
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double a = gamma_(grid[i], grid[j]);
      const double b = gamma_(grid[j], grid[i]);
      if (!std::isfinite(a) || std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
        throw DomainError("Variogram: Gamma is not symmetric");
      }
      if (a < 0.0 || (strict && !(a > 0.0))) {
        throw DomainError("Variogram: Gamma must be positive off the diagonal");
      }
    }
  }
}

}  // namespace gumbelscale
