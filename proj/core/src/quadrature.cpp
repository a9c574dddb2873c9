#include "gumbelscale/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gumbelscale/asymptotics.hpp"
#include "gumbelscale/errors.hpp"

namespace gumbelscale {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

Panel gk61_panel(const std::function<double(double)>& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 61>;
  using Gauss = boost::math::quadrature::gauss<double, 30>;
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(center);
  double kronrod = f0 * wk[0];
  double gauss = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = f(center + half * x[i]) + f(center - half * x[i]);
    kronrod += pair * wk[i];
    // Gauss-30 nodes sit at the odd Kronrod indices.
    if (i & 1) gauss += pair * wg[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  const double error =
      std::max(std::abs(kronrod - gauss),
               50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
  return {a, b, kronrod, error};
}

struct Peak {
  double y;
  double value;
};

template <class F>
Peak golden_max(const F& ell, double a, double c) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = c - inv_phi * (c - a);
  double x2 = a + inv_phi * (c - a);
  double f1 = ell(x1);
  double f2 = ell(x2);
  for (int it = 0; it < 200 && (c - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    if (f1 > f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - inv_phi * (c - a);
      f1 = ell(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (c - a);
      f2 = ell(x2);
    }
  }
  return f1 > f2 ? Peak{x1, f1} : Peak{x2, f2};
}

}  // namespace

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

PanelIntegral integrate_gk61(const std::function<double(double)>& f, double a,
                             double b, double abs_tol, int max_panels,
                             int initial_panels) {
  if (!(a < b)) return {0.0, 0.0, 0, 0, true};
  initial_panels = std::max(1, std::min(initial_panels, max_panels));
  std::vector<double> points;
  for (int i = 0; i < initial_panels; ++i) points.push_back(a + (b - a) * i / initial_panels);
  points.push_back(b);
  return integrate_gk61(f, points, abs_tol, max_panels);
}

PanelIntegral integrate_gk61(const std::function<double(double)>& f,
                             const std::vector<double>& break_points, double abs_tol,
                             int max_panels) {
  if (break_points.size() < 2) throw DomainError("integrate_gk61: need two break points");
  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(std::max<int>(max_panels, static_cast<int>(break_points.size()))));
  int nodes = 0;
  for (std::size_t i = 0; i + 1 < break_points.size(); ++i) {
    if (!(break_points[i] < break_points[i + 1])) continue;
    panels.push_back(gk61_panel(f, break_points[i], break_points[i + 1]));
    nodes += 61;
  }
  if (panels.empty()) return {0.0, 0.0, 0, 0, true};

  auto total_error = [&] {
    double e = 0.0;
    for (const auto& p : panels) e += p.error;
    return e;
  };

  while (total_error() > abs_tol && static_cast<int>(panels.size()) < max_panels) {
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& l, const Panel& r) {
                                    return l.error < r.error;
                                  });
    const Panel p = *worst;
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) break;
    *worst = gk61_panel(f, p.a, mid);
    panels.push_back(gk61_panel(f, mid, p.b));
    nodes += 122;
  }

  PanelIntegral out{};
  // Summation in a fixed order keeps results independent of split history.
  std::sort(panels.begin(), panels.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  for (const auto& p : panels) {
    out.value += p.value;
    out.abs_error += p.error;
  }
  out.node_count = nodes;
  out.panel_count = static_cast<int>(panels.size());
  out.converged = out.abs_error <= abs_tol;
  return out;
}

QuadratureResult product_tail_quadrature(double u, const TailModel& first,
                                         const TailModel& second,
                                         const QuadratureOptions& options) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw DomainError("product_tail_quadrature: u must be positive and finite");
  }

  QuadratureResult result{};
  result.saddle_used = std::numeric_limits<double>::quiet_NaN();
  double log_total = kNegInf;

  for (const Atom& atom : second.atoms()) {
    if (!(atom.value > options.min_scale)) continue;
    log_total = log_sum_exp(log_total, std::log(atom.mass) + first.log_tail(u / atom.value));
  }

  if (second.has_continuous_part()) {
    const double s_lo = std::max(second.support_lo(), options.min_scale);
    const double s_hi = second.support_hi();
    const double y_lo = s_lo > 0.0 ? std::log(s_lo) : kNegInf;
    const double y_hi = std::isfinite(s_hi) ? std::log(s_hi)
                                            : std::numeric_limits<double>::infinity();

    auto ell = [&](double y) {
      if (!(y > y_lo && y < y_hi)) return kNegInf;
      const double s = std::exp(y);
      const double lf = second.log_density(s);
      if (lf == kNegInf) return kNegInf;
      return first.log_tail(u / s) + lf + y;
    };

    // Peak search: coarse scan over a window that contains every plausible
    // split of u between the factors, then golden section in the best cell.
    const double log_u = std::log(u);
    const double scan_lo = std::max(y_lo, std::min(-40.0, log_u - 40.0));
    const double scan_hi = std::min(y_hi, std::max(40.0, log_u + 40.0));
    constexpr int kScan = 2000;
    const double cell = (scan_hi - scan_lo) / kScan;
    double best_y = std::numeric_limits<double>::quiet_NaN();
    double best_val = kNegInf;
    for (int i = 0; i <= kScan; ++i) {
      // Nudge the end points into the open support.
      const double y = std::clamp(scan_lo + cell * i, scan_lo + 1e-3 * cell,
                                  scan_hi - 1e-3 * cell);
      const double v = ell(y);
      if (v > best_val) {
        best_val = v;
        best_y = y;
      }
    }
    if (first.is_weibullian() && second.is_weibullian()) {
      const auto& w1 = first.weibullian_params();
      const auto& w2 = second.weibullian_params();
      const auto sp = saddle_point(u, w1.p, w1.L, w2.p, w2.L);
      const double hint = std::log(u / sp.x_u);
      const double v = ell(hint);
      if (v > best_val) {
        best_val = v;
        best_y = hint;
      }
    }

    if (best_val > kNegInf) {
      const double lo = std::max(scan_lo, best_y - cell);
      const double hi = std::min(scan_hi, best_y + cell);
      Peak peak = golden_max(ell, lo, hi);
      if (peak.value < best_val) peak = {best_y, best_val};
      result.saddle_used = std::exp(peak.y);

      // Widen the window on each side until the log-integrand has dropped
      // drop_nats below the peak or the support ends.
      auto extent = [&](double direction, double bound) {
        double v = 1e-12 * std::max(1.0, std::abs(peak.y));
        for (int it = 0; it < 200; ++it) {
          const double y = peak.y + direction * v;
          if ((direction < 0.0 && y <= bound) || (direction > 0.0 && y >= bound)) {
            return bound;
          }
          if (ell(y) < peak.value - options.drop_nats) return y;
          v *= 2.0;
          if (v > 1e3) break;
        }
        throw NumericalError(
            "product_tail_quadrature: failed to bracket the integrand peak at u = " +
            std::to_string(u) + " (peak log s = " + std::to_string(peak.y) + ")");
      };
      const double a = extent(-1.0, y_lo);
      const double b = extent(+1.0, y_hi);
      const double width = b - a;

      // Jumps of the first factor's tail (its atoms) make the integrand
      // discontinuous at log(u / atom); panels must not straddle them.
      std::vector<double> points;
      constexpr int kInitialPanels = 4;
      for (int i = 0; i < kInitialPanels; ++i) points.push_back(a + width * i / kInitialPanels);
      points.push_back(b);
      for (const Atom& atom : first.atoms()) {
        const double jump = log_u - std::log(atom.value);
        if (jump > a && jump < b) points.push_back(jump);
      }
      if (first.is_bounded() && log_u > a && log_u < b) points.push_back(log_u);
      std::sort(points.begin(), points.end());

      auto normalized = [&](double y) { return std::exp(ell(y) - peak.value); };
      const auto integral =
          integrate_gk61(normalized, points, options.abs_tol * width, options.max_panels);
      if (!integral.converged) {
        throw NumericalError(
            "product_tail_quadrature: panel budget exhausted at u = " +
            std::to_string(u) + ", error estimate " +
            std::to_string(integral.abs_error / std::max(integral.value, 1e-300)));
      }
      result.node_count = integral.node_count;
      result.panel_count = integral.panel_count;
      if (integral.value > 0.0) {
        const double log_cont = peak.value + std::log(integral.value);
        log_total = log_sum_exp(log_total, log_cont);
        result.abs_log_error_estimate =
            std::exp(peak.value + std::log(integral.abs_error) - log_total);
      }
    }
  }

  result.log_value = log_total;
  return result;
}

}  // namespace gumbelscale
