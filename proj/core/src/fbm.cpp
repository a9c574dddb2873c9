#include "gumbelscale/fbm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "gumbelscale/errors.hpp"

namespace gumbelscale {

namespace {
constexpr std::size_t kCholeskyLimit = 1024;
}

double fgn_autocovariance(double hurst, std::size_t k) {
  const double h2 = 2.0 * hurst;
  const double kk = static_cast<double>(k);
  if (k == 0) return 1.0;
  return 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) + std::pow(kk - 1.0, h2));
}

FbmSampler::FbmSampler(double hurst, std::size_t steps, double step)
    : hurst_(hurst), steps_(steps) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("fbm: H must lie in (0, 1)");
  if (steps < 1) throw DomainError("fbm: need at least one step");
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("fbm: step must be positive");
  scale_ = std::pow(step, hurst);

  const std::size_t m = 2 * steps;
  std::vector<std::complex<double>> row(m), eig;
  for (std::size_t k = 0; k <= steps; ++k) row[k] = fgn_autocovariance(hurst, k);
  for (std::size_t k = 1; k < steps; ++k) row[m - k] = row[k];
  Eigen::FFT<double> fft;
  fft.fwd(eig, row);

  double max_eig = 0.0;
  double min_eig = 0.0;
  for (const auto& e : eig) {
    max_eig = std::max(max_eig, e.real());
    min_eig = std::min(min_eig, e.real());
  }
  if (min_eig >= -1e-10 * max_eig) {
    sqrt_eig_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      sqrt_eig_[k] = std::sqrt(std::max(0.0, eig[k].real()) / static_cast<double>(m));
    }
    return;
  }
  if (steps > kCholeskyLimit) {
    throw NumericalError("fbm: circulant embedding has negative eigenvalue " +
                         std::to_string(min_eig) + " and " + std::to_string(steps) +
                         " steps is too many for Cholesky; use a different grid size");
  }
  const auto n = static_cast<Eigen::Index>(steps);
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      cov(i, j) = fgn_autocovariance(hurst, static_cast<std::size_t>(std::abs(i - j)));
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw NumericalError("fbm: Cholesky failed");
  const Eigen::MatrixXd L = llt.matrixL();
  cholesky_.resize(steps * steps);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      cholesky_[static_cast<std::size_t>(i * n + j)] = L(i, j);
    }
  }
}

void FbmSampler::sample(Rng& rng, std::vector<double>& path) const {
  const std::size_t n = steps_;
  path.assign(n + 1, 0.0);
  std::vector<double> noise(n);
  if (!cholesky_.empty()) {
    std::vector<double> z(n);
    for (double& x : z) x = rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j <= i; ++j) s += cholesky_[i * n + j] * z[j];
      noise[i] = s;
    }
  } else {
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> w(m), out;
    w[0] = sqrt_eig_[0] * rng.normal();
    w[n] = sqrt_eig_[n] * rng.normal();
    for (std::size_t k = 1; k < n; ++k) {
      const double re = rng.normal();
      const double im = rng.normal();
      w[k] = sqrt_eig_[k] * std::sqrt(0.5) * std::complex<double>(re, im);
      w[m - k] = std::conj(w[k]);
    }
    // Eigen's FFT caches twiddle plans per size inside the object.
    thread_local Eigen::FFT<double> fft;
    fft.fwd(out, w);
    for (std::size_t k = 0; k < n; ++k) noise[k] = out[k].real();
  }
  double x = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    x += noise[k] * scale_;
    path[k + 1] = x;
  }
}

std::vector<double> FbmSampler::sample(Rng& rng) const {
  std::vector<double> path;
  sample(rng, path);
  return path;
}

std::vector<double> fbm_sample(double hurst, const std::vector<double>& grid, Rng& rng) {
  if (grid.size() < 2) throw DomainError("fbm_sample: grid needs at least 2 points");
  const double t0 = grid.front();
  const double h = (grid.back() - t0) / static_cast<double>(grid.size() - 1);
  if (!(t0 >= 0.0) || !(h > 0.0)) {
    throw DomainError("fbm_sample: grid must be increasing and nonnegative");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(grid[i] - (t0 + h * static_cast<double>(i))) > 1e-9 * std::max(1.0, grid.back())) {
      throw DomainError("fbm_sample: grid must be uniform");
    }
  }
  // Extend the grid back to 0 when t0 is a multiple of the spacing.
  const double lead = t0 / h;
  const double lead_round = std::round(lead);
  if (std::abs(lead - lead_round) > 1e-9 * std::max(1.0, lead)) {
    throw DomainError("fbm_sample: first grid point must be a multiple of the spacing");
  }
  const auto offset = static_cast<std::size_t>(lead_round);
  FbmSampler sampler(hurst, offset + grid.size() - 1, h);
  const auto path = sampler.sample(rng);
  return {path.begin() + static_cast<std::ptrdiff_t>(offset), path.end()};
}

}  // namespace gumbelscale
