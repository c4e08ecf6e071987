#pragma once

// Reference computations for the tests. These follow different routes from
// the library code they check: direct enumeration, naive field arithmetic,
// literal series with acceleration, and values frozen from mpmath at 30 digits.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;

/// 2 * #{m : 0 < m < X, p does not divide m} for rational X = a / b > 0,
/// by enumeration while X is small and by counting residues otherwise.
inline BigInt signed_orbit_count(const BigInt& a, const BigInt& b, std::uint64_t p, long enumerate_below = 100000) {
  // m < a / b  <=>  m b < a
  const BigInt below = (a - 1) / b;  // largest m with m b < a (a, b > 0)
  if (below < enumerate_below) {
    long n = 0;
    for (long m = 1; m <= below.convert_to<long>(); ++m)
      if (m % static_cast<long>(p) != 0) ++n;
    return 2 * BigInt(n);
  }
  return 2 * (below - below / p);
}

/// Z_p(lambda, beta) = sum_k p^{-k beta} * (number of orbit points at level k),
/// lambda = num / den in (1, p], summed until the geometric tail is below 1e-18 relative.
inline double partition_by_enumeration(long num, long den, std::uint64_t p, double beta) {
  const double P = static_cast<double>(p);
  long double total = 0;
  BigInt pk = 1;
  for (long k = 0;; ++k, pk *= p) {
    const BigInt c = signed_orbit_count(BigInt(num) * pk, BigInt(den), p);
    const long double term = c.convert_to<long double>() * std::pow(static_cast<long double>(P), -k * static_cast<long double>(beta));
    total += term;
    // level counts are at most 2 lambda p^k, so the rest is below a geometric series
    const long double rest = 2.0L * num / den * std::pow(static_cast<long double>(P), (k + 1) * (1 - static_cast<long double>(beta))) /
                             (1 - std::pow(static_cast<long double>(P), 1 - static_cast<long double>(beta)));
    if (rest < 1e-18L * total) break;
  }
  return static_cast<double>(total);
}

/// Symmetric partial sums lambda * sum_{n=-N}^{N} 1 / (n + x) with one Richardson step.
inline double cot_symmetric_sum(double x, double lambda, long N = 100000) {
  auto S = [&](long M) {
    long double s = 1.0L / x;
    for (long n = M; n >= 1; --n) s += 1.0L / (x + n) + 1.0L / (x - n);
    return s;
  };
  return static_cast<double>(lambda * (2 * S(N) - S(N / 2)));
}

/// Naive arithmetic in F_p[t] / (modulus), elements as coefficient vectors.
struct NaiveField {
  int p;
  std::vector<int> modulus;  // monic, low to high

  int degree() const { return static_cast<int>(modulus.size()) - 1; }
  long size() const {
    long s = 1;
    for (int i = 0; i < degree(); ++i) s *= p;
    return s;
  }
  std::vector<int> element(long index) const {
    std::vector<int> e(degree());
    for (int i = 0; i < degree(); ++i, index /= p) e[i] = static_cast<int>(index % p);
    return e;
  }
  std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> r(degree());
    for (int i = 0; i < degree(); ++i) r[i] = (a[i] + b[i]) % p;
    return r;
  }
  std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> prod(2 * degree(), 0);
    for (int i = 0; i < degree(); ++i)
      for (int j = 0; j < degree(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (int i = 2 * degree() - 1; i >= degree(); --i) {
      const int c = prod[i];
      if (!c) continue;
      for (int j = 0; j <= degree(); ++j) prod[i - degree() + j] = ((prod[i - degree() + j] - c * modulus[j]) % p + p) % p;
    }
    prod.resize(degree());
    return prod;
  }
  bool is_zero(const std::vector<int>& a) const {
    for (int c : a)
      if (c) return false;
    return true;
  }
  std::vector<int> constant(int c) const {
    std::vector<int> r(degree(), 0);
    r[0] = ((c % p) + p) % p;
    return r;
  }
};

/// Projective zeros of F over a naive field; F is given on field elements.
using CurveEquation = std::function<std::vector<int>(const NaiveField&, const std::vector<int>&, const std::vector<int>&,
                                                     const std::vector<int>&)>;

inline long projective_count(const NaiveField& K, const CurveEquation& F) {
  long n = 0;
  const auto one = K.constant(1), zero = K.constant(0);
  for (long i = 0; i < K.size(); ++i)
    for (long j = 0; j < K.size(); ++j)
      if (K.is_zero(F(K, K.element(i), K.element(j), one))) ++n;
  for (long i = 0; i < K.size(); ++i)
    if (K.is_zero(F(K, K.element(i), one, zero))) ++n;
  if (K.is_zero(F(K, one, zero, zero))) ++n;
  return n;
}

// Values of zeta, log Gamma and Hardy's Z, from mpmath with 30 significant digits.
struct FrozenComplex {
  double re_s, im_s, re, im;
};
inline const std::vector<FrozenComplex> zeta_values = {
    {2.0, 3.0, 0.79802198514627572062, -0.11374430805293850022},
    {0.5, 14.0, 0.022241142609993589246, -0.1032581232664500579},
    {-1.5, 2.0, 0.12424726557777474701, -0.015707749528273202786},
    {0.3, -40.0, 0.7487752095042258384, 1.4408854406344405111},
};
inline const std::vector<FrozenComplex> lgamma_values = {
    {3.0, 4.0, -1.7566267846037841105, 4.7426644380346579282},
    {0.5, 20.0, -30.496988002693259643, 39.91672910847332607},
    {-2.5, 1.0, -2.3441906524655925559, -8.3041279866579258844},
};
struct FrozenHardy {
  double t, z, theta;
};
inline const std::vector<FrozenHardy> hardy_values = {
    {10.0, -1.5491945461810223891, -3.0670743962898952917},
    {25.5, 0.70128902154377483242, 4.7183356534694576184},
    {90.0, 3.4690959015374184932, 74.394499577891251388},
};
// pi^{-s/2} Gamma(s/2) zeta(s) at s = 0.25 + 3i
inline const FrozenComplex complete_zeta_value = {0.25, 3.0, -0.085069920578461964759, 0.016979972424308929949};

}  // namespace oracle
