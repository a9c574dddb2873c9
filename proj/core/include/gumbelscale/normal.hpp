#pragma once

namespace gumbelscale {

// log of the standard normal density.
double normal_log_pdf(double x);

// log P(N > x) for N ~ N(0,1), accurate deep into the upper tail (Mills-ratio
// continued fraction above x = 5, erfc below).
double normal_log_sf(double x);

double normal_cdf(double x);

}  // namespace gumbelscale
