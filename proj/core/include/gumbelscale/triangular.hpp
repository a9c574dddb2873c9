#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gumbelscale/asymptotics.hpp"
#include "gumbelscale/rng.hpp"
#include "gumbelscale/tail_model.hpp"
#include "gumbelscale/variance_model.hpp"

namespace gumbelscale {

struct Norming {
  double d_n;  // location
  double c_n;  // scale
};

// Normalized componentwise maxima (max_{i<=n} S_i X_i(t) - d_n) / c_n, where
// X_i are unit-variance Gaussian vectors with correlation
// rho_n(t1, t2) = max(0, 1 - c_n Gamma(t1, t2) / (2 d_n)).
class TriangularSampler {
 public:
  // Without explicit norming, (d_n, c_n) come from triangular_norming (n > 2).
  TriangularSampler(std::size_t n, std::vector<double> grid, const Variogram& variogram,
                    TailModel scaler, std::optional<Norming> norming = std::nullopt);

  std::vector<double> draw(Rng& rng) const;

  const Norming& norming() const noexcept { return norming_; }
  // True when negative eigenvalues of the floored correlation were clipped.
  bool projected() const noexcept { return projected_; }
  std::size_t n() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::vector<double> grid_;
  TailModel scaler_;
  Norming norming_;
  bool projected_ = false;
  bool unit_scaler_;
  std::vector<double> factor_;  // row-major d x d
};

std::vector<double> triangular_max_sample(std::size_t n, const std::vector<double>& grid,
                                          const Variogram& variogram,
                                          const TailModel& scaler, Rng& rng);

}  // namespace gumbelscale
