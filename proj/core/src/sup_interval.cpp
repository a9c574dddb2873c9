#include "gumbelscale/sup_interval.hpp"

#include <algorithm>
#include <cmath>

#include "gumbelscale/errors.hpp"

namespace gumbelscale {

namespace {
constexpr std::size_t kMaxConsecutiveRejections = 100000;
}

SupIntervalSimulator::SupIntervalSimulator(VarianceModel model, TailModel horizon_law,
                                           SupGrid grid)
    : model_(std::move(model)), horizon_law_(std::move(horizon_law)), grid_(grid) {
  if (model_.family() != VarianceModel::Family::kFbm) {
    throw UnsupportedVariant("sup simulation is exact only for the FBM family");
  }
  if (grid_.absolute_step < 0.0 || !std::isfinite(grid_.absolute_step)) {
    throw DomainError("sup simulation: step must be positive");
  }
  if (grid_.absolute_step == 0.0 && grid_.relative_steps < 1) {
    throw DomainError("sup simulation: need at least one step");
  }
  if (grid_.coarsen_levels < 0) throw DomainError("sup simulation: coarsen_levels < 0");
  if (!(grid_.max_horizon > 0.0)) throw DomainError("sup simulation: max_horizon <= 0");
}

const FbmSampler& SupIntervalSimulator::sampler_for(std::size_t steps) {
  auto& slot = samplers_[steps];
  if (!slot) slot = std::make_unique<FbmSampler>(model_.hurst(), steps, 1.0);
  return *slot;
}

SupDraw SupIntervalSimulator::draw(Rng& rng) {
  double horizon = 0.0;
  for (std::size_t attempt = 0;; ++attempt) {
    horizon = horizon_law_.draw(rng);
    if (horizon <= grid_.max_horizon) break;
    ++rejections_;
    if (attempt + 1 >= kMaxConsecutiveRejections) {
      throw NumericalError("sup simulation: horizon law keeps exceeding max_horizon");
    }
  }

  SupDraw out{horizon, 0.0, 0.0, {}};
  if (!(horizon > 0.0)) return out;

  std::size_t steps = grid_.relative_steps;
  if (grid_.absolute_step > 0.0) {
    steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(horizon / grid_.absolute_step)));
  }
  // Self-similarity: X(h k) has the law of h^H times the unit-step path.
  const double scale = std::pow(horizon / static_cast<double>(steps), model_.hurst());
  sampler_for(steps).sample(rng, path_);

  double best = 0.0;
  for (double x : path_) best = std::max(best, x);
  out.sup = best * scale;
  out.endpoint = path_.back() * scale;
  for (int level = 1; level <= grid_.coarsen_levels; ++level) {
    const std::size_t stride = std::size_t{1} << level;
    double coarse = 0.0;
    for (std::size_t k = 0; k < path_.size(); k += stride) coarse = std::max(coarse, path_[k]);
    out.coarse_sups.push_back(coarse * scale);
  }
  return out;
}

SupDraw sup_over_random_interval(const VarianceModel& model, const TailModel& horizon_law,
                                 double grid_step, Rng& rng) {
  if (!(grid_step > 0.0)) throw DomainError("sup simulation: grid_step must be positive");
  SupGrid grid;
  grid.absolute_step = grid_step;
  SupIntervalSimulator sim(model, horizon_law, grid);
  return sim.draw(rng);
}

}  // namespace gumbelscale
