#pragma once

#include <functional>
#include <vector>

#include "gumbelscale/tail_model.hpp"

namespace gumbelscale {

struct PanelIntegral {
  double value;
  double abs_error;
  int node_count;
  int panel_count;
  bool converged;
};

// Adaptive 61-point Gauss-Kronrod on [a, b]: the panel with the largest
// |Kronrod - Gauss| estimate is bisected until the summed estimate drops
// below abs_tol or max_panels is reached.
PanelIntegral integrate_gk61(const std::function<double(double)>& f, double a,
                             double b, double abs_tol, int max_panels,
                             int initial_panels = 4);
// Same, starting from the panels between consecutive break points (sorted,
// at least two). Use break points at known discontinuities of f.
PanelIntegral integrate_gk61(const std::function<double(double)>& f,
                             const std::vector<double>& break_points, double abs_tol,
                             int max_panels);

struct QuadratureOptions {
  // Absolute tolerance on the peak-normalized integrand averaged over the
  // integration window (so it acts as a relative tolerance on the result).
  double abs_tol = 1e-8;
  int max_panels = 200;
  // The window is widened until the log-integrand is this far below its peak.
  double drop_nats = 40.0;
  // Only Y2 > min_scale contributes; 0 integrates the full law.
  double min_scale = 0.0;
};

struct QuadratureResult {
  double log_value;
  double abs_log_error_estimate;
  int node_count;
  // Y2 value at the peak of the integrand (NaN when Y2 is purely atomic).
  double saddle_used;
  int panel_count;
};

// log P(Y1 * Y2 > u) = log int P(Y1 > u/s) dF2(s), with the continuous part
// integrated in v = log s around the peak of the log-integrand and atoms of
// Y2 added by log-sum-exp. When both factors are Weibullian the peak search
// starts from the closed-form saddle point.
QuadratureResult product_tail_quadrature(double u, const TailModel& first,
                                         const TailModel& second,
                                         const QuadratureOptions& options = {});

double log_sum_exp(double a, double b);

}  // namespace gumbelscale
