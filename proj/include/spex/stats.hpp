#ifndef SPEX_STATS_HPP
#define SPEX_STATS_HPP

#include <vector>

namespace spex {

/// Standard normal distribution function, absolute error below 1e-12.
double normal_cdf(double x);

/// Right tail 1 - Phi(x).
double normal_tail(double x);

/// Type-1 empirical quantile: the ceil(p*N)-th order statistic (1-based).
/// Deterministic under ties. Throws on empty input.
double empirical_quantile(std::vector<double> values, double p);

} // namespace spex

#endif
