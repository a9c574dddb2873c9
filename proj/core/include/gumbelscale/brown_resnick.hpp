#pragma once

#include <cstddef>
#include <vector>

#include "gumbelscale/rng.hpp"
#include "gumbelscale/variance_model.hpp"

namespace gumbelscale {

struct BrownResnickOptions {
  std::size_t k_points = 10;     // minimum number of Poisson points
  std::size_t max_points = 100000;
  // Stop once Upsilon_k + 6 sigma(t) - sigma^2(t)/2 < M(t) - margin at every t:
  // later points then beat the running max only through a > 6 sigma
  // Gaussian excursion.
  double margin_nats = 0.0;
};

struct BrownResnickDraw {
  std::vector<double> values;
  std::size_t points_used;
  bool hit_cap;  // stopping rule not met before max_points
};

// max_i (Upsilon_i + Z_i(t) - sigma^2(t)/2) on a finite grid, with Z anchored
// at the smallest grid point and sigma^2(t) = Gamma(t0, t).
class BrownResnickSampler {
 public:
  BrownResnickSampler(const Variogram& variogram, std::vector<double> grid,
                      BrownResnickOptions options = {});

  BrownResnickDraw draw(Rng& rng) const;
  const std::vector<double>& grid() const noexcept { return grid_; }

 private:
  std::vector<double> grid_;
  BrownResnickOptions options_;
  std::vector<double> half_sigma2_;
  std::vector<double> factor_;  // row-major d x d, covariance = F F^T
  std::vector<double> reach_;   // 6 sigma(t) - sigma^2(t)/2
};

std::vector<double> brown_resnick_fidi_sample(const Variogram& variogram,
                                              const std::vector<double>& grid,
                                              std::size_t k_points, Rng& rng);

}  // namespace gumbelscale
