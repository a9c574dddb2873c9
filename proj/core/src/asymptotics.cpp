#include "gumbelscale/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gumbelscale/errors.hpp"
#include "gumbelscale/generalized_inverse.hpp"
#include "gumbelscale/quadrature.hpp"

namespace gumbelscale {

namespace {

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}

void require_params(double p1, double L1, double p2, double L2) {
  require_positive(p1, "p1");
  require_positive(L1, "L1");
  require_positive(p2, "p2");
  require_positive(L2, "L2");
}

}  // namespace

double ProductAsymptotics::c(double u) const {
  return A * std::pow(u, p1 / (p1 + p2));
}

ProductAsymptotics product_constants(double p1, double L1, double p2, double L2) {
  require_params(p1, L1, p2, L2);
  const double s = p1 + p2;
  ProductAsymptotics out{};
  out.p1 = p1;
  out.L1 = L1;
  out.p2 = p2;
  out.L2 = L2;
  out.A = std::pow((p1 * L1) / (p2 * L2), 1.0 / s);
  out.B = L1 * std::pow(out.A, -p1) + L2 * std::pow(out.A, p2);
  const double powers[] = {p1, p2};
  out.p_star = nfold_exponent(powers);
  out.D = std::sqrt(2.0 * std::numbers::pi * std::pow(p1 * L1, p2 / s) *
                    std::pow(p2 * L2, p1 / s) / s);
  return out;
}

double product_tail_polynomial_log(double u, const PowerTail& f1,
                                   const PowerTail& f2) {
  require_positive(u, "u");
  require_positive(f1.C, "C1");
  require_positive(f2.C, "C2");
  if (!std::isfinite(f1.alpha) || !std::isfinite(f2.alpha)) {
    throw DomainError("alpha must be finite");
  }
  const auto k = product_constants(f1.p, f1.L, f2.p, f2.L);
  const double s = f1.p + f2.p;
  const double log_prefactor =
      0.5 * std::log(2.0 * std::numbers::pi * f2.p * f2.L / s) + std::log(f1.C) +
      std::log(f2.C) + (f2.p / 2.0 + f2.alpha - f1.alpha) * std::log(k.A);
  const double power =
      (2.0 * f2.p * f1.alpha + 2.0 * f1.p * f2.alpha + f1.p * f2.p) / (2.0 * s);
  return log_prefactor + power * std::log(u) - k.B * std::pow(u, k.p_star);
}

double product_validity_cutoff(const TailModel& first, const TailModel& second) {
  const auto& w1 = first.weibullian_params();
  const auto& w2 = second.weibullian_params();
  const auto k = product_constants(w1.p, w1.L, w2.p, w2.L);
  const double s = w1.p + w2.p;
  double cutoff = 0.0;
  if (first.body_cutoff() > 0.0) {
    cutoff = std::max(cutoff, std::pow(k.A * first.body_cutoff(), s / w2.p));
  }
  if (second.body_cutoff() > 0.0) {
    cutoff = std::max(cutoff, std::pow(second.body_cutoff() / k.A, s / w1.p));
  }
  return cutoff;
}

WeibullianProductTail product_tail_weibullian(double u, const TailModel& first,
                                              const TailModel& second) {
  require_positive(u, "u");
  const auto& w1 = first.weibullian_params();
  const auto& w2 = second.weibullian_params();
  const double cutoff = product_validity_cutoff(first, second);
  if (!(u > cutoff)) {
    throw PreconditionError(
        "product_tail_weibullian: u = " + std::to_string(u) +
            " is not above the validity cutoff " + std::to_string(cutoff),
        cutoff);
  }
  const auto k = product_constants(w1.p, w1.L, w2.p, w2.L);
  const double c_u = k.c(u);
  const double x_u = u / c_u;
  const double log_pre = std::log(k.D) + 0.5 * k.p_star * std::log(u);

  WeibullianProductTail out{};
  out.cutoff = cutoff;
  out.log_value = log_pre + w1.g.log_eval(x_u) + w2.g.log_eval(c_u) -
                  k.B * std::pow(u, k.p_star);
  out.log_value_via_tails = log_pre + first.log_tail(x_u) + second.log_tail(c_u);
  const double gap = std::abs(out.log_value - out.log_value_via_tails);
  if (gap > 1e-10 * std::max(1.0, std::abs(out.log_value))) {
    throw NumericalError("product_tail_weibullian: the two forms disagree by " +
                         std::to_string(gap));
  }
  return out;
}

double product_tail_weibullian_log(double u, const TailModel& first,
                                   const TailModel& second) {
  return product_tail_weibullian(u, first, second).log_value;
}

LogWeibullExponent log_weibull_exponent(double p1, double L1, double p2, double L2) {
  const auto k = product_constants(p1, L1, p2, L2);
  return {k.B, k.p_star};
}

double nfold_exponent(std::span<const double> powers) {
  if (powers.empty()) throw DomainError("nfold_exponent: empty list");
  double sum = 0.0;
  for (double p : powers) {
    require_positive(p, "p_i");
    sum += 1.0 / p;
  }
  return 1.0 / sum;
}

SaddlePoint saddle_point(double u, double p1, double L1, double p2, double L2) {
  require_positive(u, "u");
  const auto k = product_constants(p1, L1, p2, L2);
  SaddlePoint out{};
  out.x_u = std::pow(p2 * L2 / (p1 * L1), 1.0 / (p1 + p2)) *
            std::pow(u, p2 / (p1 + p2));
  out.f_min = k.B * std::pow(u, k.p_star);

  const double log_u = std::log(u);
  auto f = [&](double y) {
    return L1 * std::exp(p1 * y) + L2 * std::exp(p2 * (log_u - y));
  };

  // Bracket by walking downhill from the geometric midpoint of (1, u).
  double a = 0.5 * log_u - 1.0;
  double b = 0.5 * log_u;
  double c = 0.5 * log_u + 1.0;
  double step = 1.0;
  for (int it = 0; it < 400 && !(f(b) <= f(a) && f(b) <= f(c)); ++it) {
    if (f(a) < f(c)) {
      c = b;
      b = a;
      a = b - step;
    } else {
      a = b;
      b = c;
      c = b + step;
    }
    step *= 1.5;
  }
  if (!(f(b) <= f(a) && f(b) <= f(c))) {
    throw NumericalError("saddle_point: failed to bracket the minimum");
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = c - inv_phi * (c - a);
  double x2 = a + inv_phi * (c - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 300 && (c - a) > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 < f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - inv_phi * (c - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (c - a);
      f2 = f(x2);
    }
  }
  const double y_best = f1 < f2 ? x1 : x2;
  out.x_numeric = std::exp(y_best);
  out.f_numeric = f(y_best);

  if (std::abs(out.f_numeric - out.f_min) > 1e-8 * out.f_min) {
    throw NumericalError("saddle_point: numerical minimum disagrees with closed form");
  }
  if (std::abs(out.x_numeric - out.x_u) > 1e-5 * out.x_u) {
    throw NumericalError("saddle_point: numerical minimizer disagrees with closed form");
  }
  return out;
}

GumbelNorming gumbel_norming(double n, const TailModel& model) {
  if (!(n > 1.0) || !std::isfinite(n)) throw DomainError("gumbel_norming: n must exceed 1");
  const auto aux = auxiliary_function(model);
  GumbelNorming out{};
  out.b_n = model.quantile_from_log_survival(-std::log(n));
  out.a_bn = aux(out.b_n);
  return out;
}

TriangularNorming triangular_norming(double n, const TailModel& scaler) {
  if (!(n > 2.0) || !std::isfinite(n)) {
    // d_2 is the median of S*N, i.e. 0, and c_n would be undefined.
    throw DomainError("triangular_norming: n must exceed 2");
  }
  if (!scaler.is_bounded() && !scaler.is_weibullian()) {
    throw UnsupportedVariant("triangular_norming: S must be bounded or Weibullian");
  }
  const TailModel normal = TailModel::standard_normal();
  auto neg_log_tail = [&](double x) {
    if (x <= 0.0) return std::log(2.0);
    return -product_tail_quadrature(x, normal, scaler).log_value;
  };

  TriangularNorming out{};
  out.n = n;
  out.bounded = scaler.is_bounded();
  const double log_n = std::log(n);
  out.d_n = generalized_inverse(neg_log_tail, log_n, 0.0,
                                std::numeric_limits<double>::infinity());
  if (out.bounded) {
    out.c_n = 1.0 / out.d_n;
    out.d_n_asymptotic = std::sqrt(2.0 * log_n);
  } else {
    const auto& w = scaler.weibullian_params();
    const double p = w.p;
    out.c_n = out.d_n * (2.0 + p) / (2.0 * p * log_n);
    const auto k = product_constants(p, w.L, 2.0, 0.5);
    out.d_n_asymptotic = std::pow(log_n / k.B, (2.0 + p) / (2.0 * p));
  }
  return out;
}

SupIntervalConstants sup_interval_constants(double p, double L, double alpha,
                                            double C) {
  require_positive(p, "p");
  require_positive(L, "L");
  require_positive(C, "C");
  if (!(alpha > 1.0 && alpha <= 2.0)) {
    throw DomainError("sup_interval_constants: alpha must lie in (1, 2]");
  }
  SupIntervalConstants out{};
  out.p_tilde = 2.0 * p / alpha;
  out.L_tilde = L / std::pow(C, p);
  const double lp = out.L_tilde * out.p_tilde;
  out.B_tilde = out.L_tilde * std::pow(lp, -out.p_tilde / (out.p_tilde + 2.0)) +
                0.5 * std::pow(lp, 2.0 / (out.p_tilde + 2.0));
  return out;
}

double sup_interval_tail_log(double u, double p_tilde, double L_tilde,
                             const RegVarFn& g_tilde) {
  require_positive(u, "u");
  require_positive(p_tilde, "p_tilde");
  require_positive(L_tilde, "L_tilde");
  const double s = p_tilde + 2.0;
  const double lp = L_tilde * p_tilde;
  const double B_tilde =
      L_tilde * std::pow(lp, -p_tilde / s) + 0.5 * std::pow(lp, 2.0 / s);
  const double arg = std::pow(lp, -1.0 / s) * std::pow(u, 2.0 / s);
  return -0.5 * std::log(s) + g_tilde.log_eval(arg) -
         B_tilde * std::pow(u, 2.0 * p_tilde / s);
}

}  // namespace gumbelscale
