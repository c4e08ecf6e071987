#pragma once

// The summation map E on product functions 1_Z^ (x) eta:
//   E(eta)(lambda) = lambda^{1/2} sum_{n >= 1} eta(n lambda).

#include <cmath>

#include "adelic/error.hpp"
#include "adelic/quadrature.hpp"
#include "adelic/schwartz_profile.hpp"

namespace adelic {

/// sum_{n >= 1} eta(n lambda), terms summed until n lambda passes the profile cutoff.
inline double half_lattice_sum(const SchwartzProfile& eta, double lambda) {
  require(lambda > 0, errc::invalid_argument, "lambda must be positive");
  const double cut = eta.cutoff();
  CompensatedSum<double> acc;
  for (long n = 1; n * lambda <= cut; ++n) acc.add(eta(n * lambda));
  return acc.value();
}

/// The same sum through Poisson summation, valid for eta in S(R)_0:
/// (1/lambda) sum_{k >= 1} eta^(k / lambda).
inline double half_lattice_sum_dual(const SchwartzProfile& eta, double lambda) {
  require(lambda > 0, errc::invalid_argument, "lambda must be positive");
  const double cut = eta.fourier_cutoff();
  CompensatedSum<double> acc;
  for (long k = 1; k / lambda <= cut; ++k) acc.add(eta.fourier(k / lambda));
  return acc.value() / lambda;
}

inline double summation_map(const SchwartzProfile& eta, double lambda) {
  eta.require_s0();
  return std::sqrt(lambda) * half_lattice_sum(eta, lambda);
}

}  // namespace adelic
