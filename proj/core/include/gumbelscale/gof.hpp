#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gumbelscale {

double gumbel_cdf(double x);

// sup_x |F_m(x) - F(x)| for the empirical cdf of the sample.
double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)>& cdf);

// 95% critical value 1.36 / sqrt(m) of the one-sample statistic.
double ks_critical_95(std::size_t m);

// Unbiased energy distance 2 E|X - Y| - E|X - X'| - E|Y - Y'| between two
// samples of points in R^d (Euclidean norm).
double energy_distance(const std::vector<std::vector<double>>& x,
                       const std::vector<std::vector<double>>& y);

}  // namespace gumbelscale
