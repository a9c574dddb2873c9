#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <vector>

#include "gumbelscale/fbm.hpp"
#include "gumbelscale/rng.hpp"
#include "gumbelscale/tail_model.hpp"
#include "gumbelscale/variance_model.hpp"

namespace gumbelscale {

struct SupGrid {
  // Step as a fraction of the drawn horizon: steps = relative_steps.
  std::size_t relative_steps = 1024;
  // Absolute step; when > 0 it overrides relative_steps.
  double absolute_step = 0.0;
  // Extra maxima over every 2^k-th grid point, k = 1..coarsen_levels.
  int coarsen_levels = 0;
  double max_horizon = std::numeric_limits<double>::infinity();
};

struct SupDraw {
  double horizon;
  // Discrete maximum over the grid, including X(0) = 0. It never exceeds the
  // continuous supremum, so its tail is biased low.
  double sup;
  double endpoint;                 // X(horizon)
  std::vector<double> coarse_sups;  // coarse_sups[k-1] uses every 2^k-th point
};

// Draws T from its law and the supremum of an FBM-family process over [0, T].
// Not thread-safe (it caches samplers); use one instance per worker.
class SupIntervalSimulator {
 public:
  SupIntervalSimulator(VarianceModel model, TailModel horizon_law, SupGrid grid = {});

  SupDraw draw(Rng& rng);
  // Horizon draws rejected for exceeding max_horizon.
  std::size_t rejections() const noexcept { return rejections_; }

 private:
  const FbmSampler& sampler_for(std::size_t steps);

  VarianceModel model_;
  TailModel horizon_law_;
  SupGrid grid_;
  std::map<std::size_t, std::unique_ptr<FbmSampler>> samplers_;
  std::vector<double> path_;
  std::size_t rejections_ = 0;
};

SupDraw sup_over_random_interval(const VarianceModel& model, const TailModel& horizon_law,
                                 double grid_step, Rng& rng);

}  // namespace gumbelscale
