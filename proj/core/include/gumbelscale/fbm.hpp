#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gumbelscale/rng.hpp"

namespace gumbelscale {

// Exact FBM on the uniform grid 0, h, 2h, ..., n h. Uses circulant embedding
// of the fractional Gaussian noise covariance (Davies-Harte); if the
// embedding has negative eigenvalues the increments are drawn from a Cholesky
// factor instead, which is only allowed for n <= 1024.
class FbmSampler {
 public:
  FbmSampler(double hurst, std::size_t steps, double step = 1.0);

  std::size_t steps() const noexcept { return steps_; }
  double hurst() const noexcept { return hurst_; }
  bool uses_cholesky() const noexcept { return !cholesky_.empty(); }

  // Writes steps + 1 values, the first being X(0) = 0.
  void sample(Rng& rng, std::vector<double>& path) const;
  std::vector<double> sample(Rng& rng) const;

 private:
  double hurst_;
  std::size_t steps_;
  double scale_;                  // step^H
  std::vector<double> sqrt_eig_;  // sqrt of circulant eigenvalues / size
  std::vector<double> cholesky_;  // row-major lower factor of the fGn covariance
};

// FBM values at the points of a uniform increasing grid.
std::vector<double> fbm_sample(double hurst, const std::vector<double>& grid, Rng& rng);

// Autocovariance of unit-spacing fractional Gaussian noise at lag k.
double fgn_autocovariance(double hurst, std::size_t k);

}  // namespace gumbelscale
