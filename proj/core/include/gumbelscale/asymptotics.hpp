#pragma once

#include <span>

#include "gumbelscale/regvar.hpp"
#include "gumbelscale/tail_model.hpp"

namespace gumbelscale {

// Constants of the first-order tail expansion of Y1*Y2 for two Weibullian
// factors with exponents (p1, L1) and (p2, L2).
struct ProductAsymptotics {
  double A;       // saddle scale
  double B;       // exponent coefficient, L1 A^{-p1} + L2 A^{p2}
  double p_star;  // p1 p2 / (p1 + p2)
  double D;       // Gaussian (Laplace) prefactor
  double p1, L1, p2, L2;

  // Threshold c_u = A u^{p1/(p1+p2)} carried by the second factor; the first
  // factor carries u / c_u.
  double c(double u) const;
};

ProductAsymptotics product_constants(double p1, double L1, double p2, double L2);

// One factor with P(Y > u) ~ C u^alpha exp(-L u^p).
struct PowerTail {
  double C;
  double alpha;
  double p;
  double L;
};

// log of the power-prefactor product expansion.
double product_tail_polynomial_log(double u, const PowerTail& first,
                                   const PowerTail& second);

struct WeibullianProductTail {
  // log[D u^{p*/2} g1(u/c_u) g2(c_u)] - B u^{p*}
  double log_value;
  // log D + (p*/2) log u + log P(Y1 > u/c_u) + log P(Y2 > c_u)
  double log_value_via_tails;
  double cutoff;
};

// Smallest u above which u/c_u and c_u clear both models' body cutoffs.
double product_validity_cutoff(const TailModel& first, const TailModel& second);

// Evaluates both algebraic forms and throws NumericalError unless they agree
// to 1e-10; throws PreconditionError at or below the validity cutoff.
WeibullianProductTail product_tail_weibullian(double u, const TailModel& first,
                                              const TailModel& second);
double product_tail_weibullian_log(double u, const TailModel& first,
                                   const TailModel& second);

struct LogWeibullExponent {
  double B;
  double p_star;
};

LogWeibullExponent log_weibull_exponent(double p1, double L1, double p2, double L2);

// (sum 1/p_i)^{-1}.
double nfold_exponent(std::span<const double> powers);

struct SaddlePoint {
  double x_u;    // closed-form minimizer of L1 x^{p1} + L2 (u/x)^{p2}
  double f_min;  // B u^{p*}
  double x_numeric;
  double f_numeric;
};

// Closed form, double-checked by golden-section search on log x. Throws
// NumericalError if the minimum values differ by more than 1e-8 relative or
// the minimizers by more than 1e-5 relative (the argmin of a smooth minimum
// is only resolvable to about sqrt(machine epsilon)).
SaddlePoint saddle_point(double u, double p1, double L1, double p2, double L2);

struct GumbelNorming {
  double b_n;   // F^{<-}(1 - 1/n)
  double a_bn;  // a(b_n) with a = auxiliary_function(model)
};

GumbelNorming gumbel_norming(double n, const TailModel& model);

// Location d_n and scale c_n for maxima of S * X(t), X(t) standard normal.
struct TriangularNorming {
  double n;
  double d_n;             // H^{<-}(1 - 1/n), H the cdf of S * N
  double c_n;             // 1/d_n (bounded S) or d_n (2+p) / (2 p log n)
  double d_n_asymptotic;  // sqrt(2 log n) or ((log n)/B)^{(2+p)/(2p)}
  bool bounded;
};

TriangularNorming triangular_norming(double n, const TailModel& scaler);

struct SupIntervalConstants {
  double p_tilde;
  double L_tilde;
  double B_tilde;
};

// Exponents of sigma(T) when T has log-tail -L t^p and sigma(t) ~ C t^{alpha/2}.
SupIntervalConstants sup_interval_constants(double p, double L, double alpha,
                                            double C);

// log[(p~+2)^{-1/2} g~((L~p~)^{-1/(p~+2)} u^{2/(p~+2)})] - B~ u^{2p~/(p~+2)}.
double sup_interval_tail_log(double u, double p_tilde, double L_tilde,
                             const RegVarFn& g_tilde);

}  // namespace gumbelscale
