#include "gumbelscale/normal.hpp"

#include <cmath>
#include <numbers>

namespace gumbelscale {

double normal_log_pdf(double x) {
  return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi);
}

namespace {

// Mills ratio R(x) = Phibar(x)/phi(x) via the continued fraction
// 1/(x+1/(x+2/(x+3/(x+...)))), evaluated with the modified Lentz method.
double mills_ratio(double x) {
  constexpr double kTiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 500; ++k) {
    d = x + k * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = x + k / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

}  // namespace

double normal_log_sf(double x) {
  if (x > 5.0) return normal_log_pdf(x) + std::log(mills_ratio(x));
  return std::log(0.5 * std::erfc(x / std::numbers::sqrt2));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace gumbelscale
