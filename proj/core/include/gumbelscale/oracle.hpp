#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "gumbelscale/quadrature.hpp"
#include "gumbelscale/regvar.hpp"
#include "gumbelscale/tail_model.hpp"

namespace gumbelscale {

// exp(Q(u + a(u) t) - Q(u)) with Q the quadrature log-tail of Y1 * Y2.
double gmda_ratio(const TailModel& first, const TailModel& second, double u,
                  double t, const GumbelAux& aux);

struct McEstimate {
  double log_estimate;
  double log_std_error;  // std error of the mean divided by the mean
  std::size_t draws;
  std::string warning;   // set when every summand underflowed
};

// Conditional Monte Carlo: mean of P(Y1 > u / S_j) over draws S_j of Y2.
// Draws are split into fixed chunks, each seeded by its index, so the result
// does not depend on the number of workers.
McEstimate conditional_mc_tail(double u, const TailModel& first,
                               const TailModel& second, std::size_t m,
                               std::uint64_t seed, unsigned workers = 1);

// P(S Y > u, S > w) / P(S Y > u).
double tail_equivalence_check(const TailModel& scaler, const TailModel& risk,
                              double u, double w);

struct SlopeFit {
  double B_hat;
  double beta;   // coefficient of log u
  double gamma;  // intercept
  double residual_rms;
};

// Least squares on log_tail = -B u^{p_star} + beta log u + gamma.
SlopeFit slope_fit(std::span<const std::pair<double, double>> points, double p_star);

// log P(|N1 N2| > u) for independent standard normals, from
// P(|N1 N2| > u) = (2/pi) int_u^inf K0(z) dz = (2/pi) int_0^inf e^{-u cosh t} / cosh t dt.
double normal_product_log_tail(double u);

}  // namespace gumbelscale
