#pragma once

// Complex log-gamma (Lanczos), the Riemann zeta function by the accelerated
// alternating series, the completed zeta function and Hardy's Z function.

#include <array>
#include <cmath>
#include <complex>

#include "adelic/error.hpp"
#include "adelic/quadrature.hpp"

namespace adelic {

/// A value together with a flag raised outside the accuracy envelope (|Im s| > 100).
struct SpecialValue {
  cplx value;
  bool reduced_precision = false;
};

inline constexpr double euler_gamma = 0.57721566490153286060651209;

/// log Gamma(z), principal branch continued along the reflection formula.
inline cplx lgamma(cplx z) {
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // log(pi / sin(pi z)) - log Gamma(1 - z)
    return std::log(M_PI) - std::log(std::sin(M_PI * z)) - lgamma(1.0 - z);
  }
  z -= 1.0;
  cplx x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  const cplx t = z + g + 0.5;
  return 0.5 * std::log(2 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline cplx gamma(cplx z) { return std::exp(lgamma(z)); }

namespace detail {

// eta(s) = sum (-1)^k / (k+1)^s with Borwein's acceleration, n terms.
inline cplx eta_borwein(cplx s, int n) {
  std::vector<double> d(n + 1);
  double term = 1.0 / n;  // (n-1)! 4^0 / (n! 0!)
  double acc = term;
  d[0] = n * acc;
  for (int i = 0; i < n; ++i) {
    term *= 4.0 * (n + i) * (n - i) / ((2.0 * i + 1) * (2.0 * i + 2));
    acc += term;
    d[i + 1] = n * acc;
  }
  CompensatedSum<cplx> sum;
  for (int k = 0; k < n; ++k) {
    const double w = (d[k] - d[n]) / d[n];
    const cplx t = w * std::exp(-s * std::log(static_cast<double>(k + 1)));
    sum.add(k % 2 == 0 ? t : -t);
  }
  return -sum.value();
}

}  // namespace detail

/// Riemann zeta; 1e-10 accuracy for |Im s| <= 100, flagged beyond.
inline SpecialValue zeta_checked(cplx s) {
  if (s == cplx(1.0, 0.0)) fail(errc::pole, "zeta has a pole at s = 1");
  const double t = std::abs(s.imag());
  if (s.real() < 0.0) {
    // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    auto r = zeta_checked(1.0 - s);
    r.value *= std::pow(cplx(2.0), s) * std::pow(cplx(M_PI), s - 1.0) * std::sin(M_PI * s / 2.0) *
               gamma(1.0 - s);
    return r;
  }
  const int n = static_cast<int>(std::ceil((M_PI * t / 2 + std::log1p(2 * t) + 32) / std::log(3 + std::sqrt(8.0)))) + 4;
  const cplx denom = 1.0 - std::exp((1.0 - s) * std::log(2.0));
  if (std::abs(denom) < 1e-300) fail(errc::pole, "zeta evaluation at a zero of 1 - 2^(1-s)");
  return {detail::eta_borwein(s, n) / denom, t > 100};
}

inline cplx zeta(cplx s) { return zeta_checked(s).value; }

/// zeta*(s) = pi^(-s/2) Gamma(s/2) zeta(s); poles at 0 and 1.
inline SpecialValue complete_zeta_checked(cplx s) {
  if (s == cplx(0.0, 0.0) || s == cplx(1.0, 0.0)) fail(errc::pole, "complete zeta has poles at s = 0, 1");
  auto z = zeta_checked(s);
  z.value *= std::exp(-0.5 * s * std::log(M_PI) + lgamma(0.5 * s));
  return z;
}

inline cplx complete_zeta(cplx s) { return complete_zeta_checked(s).value; }

/// Riemann-Siegel theta function.
inline double riemann_siegel_theta(double t) {
  return lgamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(M_PI);
}

/// Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + i t), real-valued.
inline double hardy_z(double t) {
  return (std::exp(cplx(0.0, riemann_siegel_theta(t))) * zeta(cplx(0.5, t))).real();
}

}  // namespace adelic
