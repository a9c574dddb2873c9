#include "gumbelscale/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "gumbelscale/errors.hpp"
#include "gumbelscale/parallel.hpp"
#include "gumbelscale/rng.hpp"

namespace gumbelscale {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double gmda_ratio(const TailModel& first, const TailModel& second, double u,
                  double t, const GumbelAux& aux) {
  if (!(u > 0.0) || !(t >= 0.0)) throw DomainError("gmda_ratio: need u > 0, t >= 0");
  if (t == 0.0) return 1.0;
  const double base = product_tail_quadrature(u, first, second).log_value;
  const double shifted =
      product_tail_quadrature(u + aux(u) * t, first, second).log_value;
  return std::exp(shifted - base);
}

McEstimate conditional_mc_tail(double u, const TailModel& first,
                               const TailModel& second, std::size_t m,
                               std::uint64_t seed, unsigned workers) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw DomainError("conditional_mc_tail: u must be positive and finite");
  }
  if (m < 100) throw DomainError("conditional_mc_tail: need at least 100 draws");

  std::vector<double> logs(m);
  const std::size_t chunks = chunk_count(m);
  parallel_for(chunks, workers, [&](std::size_t chunk) {
    Rng rng = Rng::substream(seed, chunk);
    const std::size_t begin = chunk * kChunkSize;
    const std::size_t end = std::min(m, begin + kChunkSize);
    for (std::size_t j = begin; j < end; ++j) {
      logs[j] = first.log_tail(u / second.draw(rng));
    }
  });

  McEstimate out{kNegInf, 0.0, m, {}};
  const double shift = *std::max_element(logs.begin(), logs.end());
  if (shift == kNegInf) {
    out.warning = "all summands are zero; u is beyond the sampled range of Y2";
    return out;
  }
  // Welford on the shifted summands exp(l_j - shift).
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double x = std::exp(logs[j] - shift);
    const double delta = x - mean;
    mean += delta / static_cast<double>(j + 1);
    m2 += delta * (x - mean);
  }
  const double var = m2 / static_cast<double>(m - 1);
  out.log_estimate = shift + std::log(mean);
  out.log_std_error = std::sqrt(var / static_cast<double>(m)) / mean;
  return out;
}

double tail_equivalence_check(const TailModel& scaler, const TailModel& risk,
                              double u, double w) {
  if (!(w > 0.0 && w < 1.0)) {
    throw DomainError("tail_equivalence_check: w must lie in (0, 1)");
  }
  QuadratureOptions restricted;
  restricted.min_scale = w;
  const double full = product_tail_quadrature(u, risk, scaler).log_value;
  const double part = product_tail_quadrature(u, risk, scaler, restricted).log_value;
  return std::exp(part - full);
}

SlopeFit slope_fit(std::span<const std::pair<double, double>> points, double p_star) {
  if (points.size() < 3) throw DomainError("slope_fit: need at least 3 points");
  if (!(p_star > 0.0)) throw DomainError("slope_fit: p_star must be positive");
  std::vector<double> us;
  for (const auto& [u, y] : points) {
    if (!(u > 0.0) || !std::isfinite(y)) {
      throw DomainError("slope_fit: points need u > 0 and finite log-tail");
    }
    us.push_back(u);
  }
  std::sort(us.begin(), us.end());
  if (std::adjacent_find(us.begin(), us.end()) != us.end()) {
    throw DomainError("slope_fit: duplicate u values");
  }

  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = points[static_cast<std::size_t>(i)].first;
    X(i, 0) = -std::pow(u, p_star);
    X(i, 1) = std::log(u);
    X(i, 2) = 1.0;
    y(i) = points[static_cast<std::size_t>(i)].second;
  }
  // Column scaling keeps the QR rank decision meaningful across magnitudes.
  const Eigen::VectorXd scale = X.colwise().norm().transpose();
  const Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
  qr.setThreshold(1e-12);
  if (qr.rank() < 3) throw NumericalError("slope_fit: rank-deficient design");
  const Eigen::VectorXd coef = qr.solve(y).cwiseQuotient(scale);
  const Eigen::VectorXd resid = y - X * coef;
  return {coef(0), coef(1), coef(2), std::sqrt(resid.squaredNorm() / static_cast<double>(n))};
}

double normal_product_log_tail(double u) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw DomainError("normal_product_log_tail: u must be positive and finite");
  }
  // Factor e^{-u} out so the integrand stays O(1) for large u.
  auto f = [u](double t) {
    const double c = std::cosh(t);
    if (!std::isfinite(c)) return 0.0;
    return std::exp(-u * (c - 1.0)) / c;
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  const double value = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(),
                                            1e-13, &error);
  return std::log(2.0 / std::numbers::pi) - u + std::log(value);
}

}  // namespace gumbelscale
