#include "gumbelscale/brown_resnick.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "gumbelscale/errors.hpp"

namespace gumbelscale {

BrownResnickSampler::BrownResnickSampler(const Variogram& variogram,
                                         std::vector<double> grid,
                                         BrownResnickOptions options)
    : grid_(std::move(grid)), options_(options) {
  if (grid_.empty()) throw DomainError("brown_resnick: empty grid");
  if (options_.k_points < 10) throw DomainError("brown_resnick: k_points must be >= 10");
  if (options_.max_points < options_.k_points) {
    throw DomainError("brown_resnick: max_points below k_points");
  }
  variogram.validate_on(grid_, false);

  const auto d = static_cast<Eigen::Index>(grid_.size());
  const double t0 = *std::min_element(grid_.begin(), grid_.end());
  Eigen::VectorXd s2(d);
  for (Eigen::Index i = 0; i < d; ++i) s2(i) = variogram.sigma2(grid_[static_cast<std::size_t>(i)], t0);
  Eigen::MatrixXd cov(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      cov(i, j) = 0.5 * (s2(i) + s2(j) -
                         variogram(grid_[static_cast<std::size_t>(i)], grid_[static_cast<std::size_t>(j)]));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw NumericalError("brown_resnick: eigensolver failed");
  const Eigen::VectorXd lambda = eig.eigenvalues();
  const double tol = 1e-10 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
  if (lambda.minCoeff() < -tol) {
    throw DomainError("brown_resnick: covariance induced by the variogram is not positive semidefinite");
  }
  const Eigen::MatrixXd F =
      eig.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal();
  factor_.resize(static_cast<std::size_t>(d * d));
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) factor_[static_cast<std::size_t>(i * d + j)] = F(i, j);
  }

  half_sigma2_.resize(grid_.size());
  reach_.resize(grid_.size());
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto k = static_cast<std::size_t>(i);
    half_sigma2_[k] = 0.5 * s2(i);
    reach_[k] = 6.0 * std::sqrt(std::max(0.0, cov(i, i))) - half_sigma2_[k];
  }
}

BrownResnickDraw BrownResnickSampler::draw(Rng& rng) const {
  const std::size_t d = grid_.size();
  BrownResnickDraw out{std::vector<double>(d, -std::numeric_limits<double>::infinity()), 0, false};
  std::vector<double> z(d);
  double arrivals = 0.0;
  for (std::size_t k = 1;; ++k) {
    arrivals += rng.exponential();
    const double upsilon = -std::log(arrivals);
    for (double& x : z) x = rng.normal();
    for (std::size_t i = 0; i < d; ++i) {
      double zi = 0.0;
      for (std::size_t j = 0; j < d; ++j) zi += factor_[i * d + j] * z[j];
      out.values[i] = std::max(out.values[i], upsilon + zi - half_sigma2_[i]);
    }
    out.points_used = k;
    if (k < options_.k_points) continue;
    // Later points have smaller Upsilon, so this bounds their contribution.
    bool settled = true;
    for (std::size_t i = 0; i < d && settled; ++i) {
      settled = upsilon + reach_[i] < out.values[i] - options_.margin_nats;
    }
    if (settled) break;
    if (k >= options_.max_points) {
      out.hit_cap = true;
      break;
    }
  }
  return out;
}

std::vector<double> brown_resnick_fidi_sample(const Variogram& variogram,
                                              const std::vector<double>& grid,
                                              std::size_t k_points, Rng& rng) {
  BrownResnickOptions options;
  options.k_points = k_points;
  options.max_points = std::max(options.max_points, k_points);
  return BrownResnickSampler(variogram, grid, options).draw(rng).values;
}

}  // namespace gumbelscale
