#include "gumbelscale/gof.hpp"

#include <algorithm>
#include <cmath>

#include "gumbelscale/errors.hpp"

namespace gumbelscale {

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)>& cdf) {
  if (sample.empty()) throw DomainError("ks_statistic: empty sample");
  std::vector<double> xs(sample.begin(), sample.end());
  std::sort(xs.begin(), xs.end());
  const double m = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
  }
  return d;
}

double ks_critical_95(std::size_t m) { return 1.36 / std::sqrt(static_cast<double>(m)); }

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

double mean_within(const std::vector<std::vector<double>>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) s += distance(x[i], x[j]);
  }
  const double n = static_cast<double>(x.size());
  return 2.0 * s / (n * (n - 1.0));
}

}  // namespace

double energy_distance(const std::vector<std::vector<double>>& x,
                       const std::vector<std::vector<double>>& y) {
  if (x.size() < 2 || y.size() < 2) {
    throw DomainError("energy_distance: need at least two points per sample");
  }
  const std::size_t d = x.front().size();
  for (const auto* s : {&x, &y}) {
    for (const auto& p : *s) {
      if (p.size() != d) throw DomainError("energy_distance: dimension mismatch");
    }
  }
  double cross = 0.0;
  for (const auto& a : x) {
    for (const auto& b : y) cross += distance(a, b);
  }
  cross /= static_cast<double>(x.size()) * static_cast<double>(y.size());
  return 2.0 * cross - mean_within(x) - mean_within(y);
}

}  // namespace gumbelscale
