#include "gumbelscale/triangular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "gumbelscale/errors.hpp"

namespace gumbelscale {

TriangularSampler::TriangularSampler(std::size_t n, std::vector<double> grid,
                                     const Variogram& variogram, TailModel scaler,
                                     std::optional<Norming> norming)
    : n_(n), grid_(std::move(grid)), scaler_(std::move(scaler)) {
  if (n_ < 1) throw DomainError("triangular: n must be >= 1");
  if (grid_.empty()) throw DomainError("triangular: empty grid");
  variogram.validate_on(grid_, true);
  if (norming) {
    norming_ = *norming;
  } else {
    const auto tn = triangular_norming(static_cast<double>(n_), scaler_);
    norming_ = {tn.d_n, tn.c_n};
  }
  if (!(norming_.c_n > 0.0) || !std::isfinite(norming_.d_n)) {
    throw DomainError("triangular: norming needs c_n > 0 and finite d_n");
  }
  const auto& atoms = scaler_.atoms();
  unit_scaler_ = !scaler_.has_continuous_part() && atoms.size() == 1 && atoms[0].value == 1.0;

  const auto d = static_cast<Eigen::Index>(grid_.size());
  Eigen::MatrixXd rho(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i == j) {
        rho(i, j) = 1.0;
        continue;
      }
      const double g = variogram(grid_[static_cast<std::size_t>(i)], grid_[static_cast<std::size_t>(j)]);
      // With d_n <= 0 (tiny n) the linear family is meaningless; use independence.
      rho(i, j) = norming_.d_n > 0.0
                      ? std::max(0.0, 1.0 - norming_.c_n * g / (2.0 * norming_.d_n))
                      : 0.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(rho);
  if (eig.info() != Eigen::Success) throw NumericalError("triangular: eigensolver failed");
  Eigen::VectorXd lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -1e-12) {
    projected_ = true;
    lambda = lambda.cwiseMax(0.0);
    rho = eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
    const Eigen::VectorXd inv = rho.diagonal().cwiseSqrt().cwiseInverse();
    if (!inv.allFinite()) throw DomainError("triangular: correlation projection failed");
    rho = inv.asDiagonal() * rho * inv.asDiagonal();
    eig.compute(rho);
    lambda = eig.eigenvalues();
    if (lambda.minCoeff() < -1e-10) {
      throw DomainError("triangular: correlation is not positive semidefinite after flooring");
    }
  }
  const Eigen::MatrixXd F = eig.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal();
  factor_.resize(static_cast<std::size_t>(d * d));
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) factor_[static_cast<std::size_t>(i * d + j)] = F(i, j);
  }
}

std::vector<double> TriangularSampler::draw(Rng& rng) const {
  const std::size_t d = grid_.size();
  std::vector<double> best(d, -std::numeric_limits<double>::infinity());
  std::vector<double> z(d);
  for (std::size_t r = 0; r < n_; ++r) {
    const double s = unit_scaler_ ? 1.0 : scaler_.draw(rng);
    for (double& x : z) x = rng.normal();
    for (std::size_t i = 0; i < d; ++i) {
      double x = 0.0;
      for (std::size_t j = 0; j < d; ++j) x += factor_[i * d + j] * z[j];
      best[i] = std::max(best[i], s * x);
    }
  }
  for (double& b : best) b = (b - norming_.d_n) / norming_.c_n;
  return best;
}

std::vector<double> triangular_max_sample(std::size_t n, const std::vector<double>& grid,
                                          const Variogram& variogram,
                                          const TailModel& scaler, Rng& rng) {
  return TriangularSampler(n, grid, variogram, scaler).draw(rng);
}

}  // namespace gumbelscale
