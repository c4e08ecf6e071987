#pragma once

// Valuation-system dynamics at a finite prime: digit expansions, the partition
// function Z_p and its normalization zeta_p, spectral multiplicities, KMS
// functionals on the finite orbit model and the time evolution.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/groupoid.hpp"
#include "adelic/number_core.hpp"
#include "adelic/quadrature.hpp"

namespace adelic {

struct DigitExpansion {
  std::uint64_t p = 0;
  Rational lambda;
  std::vector<Integer> coeffs;  // c_0 .. c_K
  int K = 0;
};

struct PartitionEvaluation {
  double value = 0;
  int truncation = 0;
  double tail_bound = 0;
};

struct OrbitPoint {
  int k = 0;
  Integer m;

  Rational multiplier(std::uint64_t p) const { return Rational(m) / rational_pow(Rational(p), k); }
};

inline constexpr int default_truncation = 40;

inline void require_lambda_range(const Rational& lambda, std::uint64_t p) {
  require_prime(p);
  require(lambda > 1 && lambda <= Rational(p), errc::invalid_argument,
          "lambda must lie in (1, p], got " + to_string(lambda));
}

namespace detail {

/// ceil(lambda p^k - 1); lambda p^k <= 1 gives 0, covering the convention at k = -1.
inline Integer ceil_level(const Rational& lambda, std::uint64_t p, long k) {
  return ceil_rational(lambda * rational_pow(Rational(p), k) - 1);
}

inline Integer floor_level(const Rational& lambda, std::uint64_t p, long k) {
  return floor_rational(lambda * rational_pow(Rational(p), k));
}

/// Digits of lambda as a preperiod and a period (the expansion is eventually periodic).
/// In `upper` mode the digits are those of the right limit (floor instead of ceil - 1).
struct DigitCycle {
  std::vector<Integer> prefix;
  std::vector<Integer> period;
};

inline std::optional<DigitCycle> digit_cycle(const Rational& lambda, std::uint64_t p, bool upper,
                                             std::size_t max_states = 200000) {
  // state x_k = lambda p^k - a_k, in (0, 1] (lower) or [0, 1) (upper); next digit from p x_k
  std::map<Rational, std::size_t> seen;
  std::vector<Integer> digits;
  const Rational P(p);
  Integer a0 = upper ? floor_rational(lambda) : ceil_rational(lambda - 1);
  digits.push_back(a0);
  Rational x = lambda - Rational(a0);
  while (true) {
    auto [it, inserted] = seen.emplace(x, digits.size());
    if (!inserted) {
      DigitCycle c;
      c.prefix.assign(digits.begin(), digits.begin() + static_cast<long>(it->second));
      c.period.assign(digits.begin() + static_cast<long>(it->second), digits.end());
      return c;
    }
    if (seen.size() > max_states) return std::nullopt;
    const Rational px = P * x;
    Integer c = upper ? floor_rational(px) : ceil_rational(px - 1);
    digits.push_back(c);
    x = px - Rational(c);
  }
}

template <class T>
T cycle_sum(const DigitCycle& c, const T& r) {
  // sum_k d_k r^k over prefix then the repeated period
  T total = 0, rk = 1;
  for (const auto& d : c.prefix) {
    total += T(d) * rk;
    rk *= r;
  }
  T block = 0, rj = 1;
  for (const auto& d : c.period) {
    block += T(d) * rj;
    rj *= r;
  }
  return total + rk * block / (T(1) - rj);
}

}  // namespace detail

inline DigitExpansion digits(const Rational& lambda, std::uint64_t p, int K = default_truncation) {
  require_lambda_range(lambda, p);
  require(K >= 0, errc::invalid_argument, "truncation must be nonnegative");
  DigitExpansion d{p, lambda, {}, K};
  Integer prev = 0;
  for (long k = 0; k <= K; ++k) {
    Integer cur = detail::ceil_level(lambda, p, k);
    d.coeffs.push_back(cur - Integer(p) * prev);
    prev = cur;
  }
  return d;
}

inline void require_beta(double beta, bool allow_one) {
  if (beta == 1.0 && allow_one) return;
  if (beta == 1.0) fail(errc::pole, "the partition function has a pole at beta = 1");
  require(beta > 1.0, errc::out_of_domain, "beta must exceed 1");
}

/// f_p(lambda, beta) = sum_k c_k p^{-k beta}, truncated at K.
inline PartitionEvaluation f_p(const Rational& lambda, std::uint64_t p, double beta, int K = default_truncation) {
  require_beta(beta, true);
  const auto d = digits(lambda, p, K);
  const double r = std::pow(static_cast<double>(p), -beta);
  double sum = 0, rk = 1;
  for (const auto& c : d.coeffs) {
    sum += c.convert_to<double>() * rk;
    rk *= r;
  }
  // geometric tail plus the rounding of the K + 1 additions
  const double tail = (static_cast<double>(p) - 1) * rk / (1 - r) +
                      (K + 2) * std::numeric_limits<double>::epsilon() * std::abs(sum);
  return {sum, K, tail};
}

/// The truncated series as an exact rational for integer beta >= 1.
inline Rational f_p_truncated_exact(const Rational& lambda, std::uint64_t p, long beta, int K = default_truncation) {
  require(beta >= 1, errc::out_of_domain, "beta must be at least 1");
  const auto d = digits(lambda, p, K);
  const Rational r = rational_pow(Rational(p), -beta);
  Rational sum = 0, rk = 1;
  for (const auto& c : d.coeffs) {
    sum += Rational(c) * rk;
    rk *= r;
  }
  return sum;
}

/// The full series for integer beta > 1, exact, through the periodic digit tail.
inline Rational f_p_exact(const Rational& lambda, std::uint64_t p, long beta, bool upper = false) {
  require_lambda_range(lambda, p);
  require(beta > 1, errc::out_of_domain, "beta must exceed 1");
  auto c = detail::digit_cycle(lambda, p, upper);
  require(c.has_value(), errc::numerical_failure, "digit period too long for exact summation");
  return detail::cycle_sum(*c, rational_pow(Rational(p), -beta));
}

/// 2 (1 - p^{-beta}) / (1 - p^{1-beta}).
inline double partition_prefactor(std::uint64_t p, double beta) {
  const double P = static_cast<double>(p);
  return 2 * (1 - std::pow(P, -beta)) / (1 - std::pow(P, 1 - beta));
}

inline Rational partition_prefactor_exact(std::uint64_t p, long beta) {
  const Rational P(p);
  return 2 * (1 - rational_pow(P, -beta)) / (1 - rational_pow(P, 1 - beta));
}

inline PartitionEvaluation Zp(const Rational& lambda, std::uint64_t p, double beta, int K = default_truncation) {
  require_beta(beta, false);
  auto f = f_p(lambda, p, beta, K);
  const double pref = partition_prefactor(p, beta);
  const double value = pref * f.value;
  return {value, K, pref * f.tail_bound + 8 * std::numeric_limits<double>::epsilon() * std::abs(value)};
}

/// Z_p summed to the end through the digit period (no truncation); real beta.
inline double Zp_closed(const Rational& lambda, std::uint64_t p, double beta, bool upper = false) {
  require_beta(beta, false);
  require_lambda_range(lambda, p);
  auto c = detail::digit_cycle(lambda, p, upper);
  require(c.has_value(), errc::numerical_failure, "digit period too long for closed summation");
  return partition_prefactor(p, beta) * detail::cycle_sum(*c, std::pow(static_cast<double>(p), -beta));
}

inline Rational Zp_exact(const Rational& lambda, std::uint64_t p, long beta) {
  require(beta > 1, beta == 1 ? errc::pole : errc::out_of_domain, "integer beta must exceed 1");
  return partition_prefactor_exact(p, beta) * f_p_exact(lambda, p, beta);
}

/// lim_{lambda' -> lambda+} Z_p(lambda', beta), for lambda < p.
inline double Zp_right_limit(const Rational& lambda, std::uint64_t p, double beta) {
  require(lambda < Rational(p), errc::invalid_argument, "right limit needs lambda < p");
  return Zp_closed(lambda, p, beta, true);
}

/// Closed form of the eigenvalue multiplicity of k log p.
inline Integer multiplicity(long k, const Rational& lambda, std::uint64_t p) {
  require_lambda_range(lambda, p);
  require(k >= 0, errc::invalid_argument, "level must be nonnegative");
  return 2 * (detail::ceil_level(lambda, p, k) - detail::ceil_level(lambda, p, k - 1));
}

/// Orbit points at level k: m prime to p with 0 < |m| < lambda p^k.
inline std::vector<OrbitPoint> orbit_level(long k, const Rational& lambda, std::uint64_t p) {
  require_lambda_range(lambda, p);
  const Rational bound = lambda * rational_pow(Rational(p), k);
  std::vector<OrbitPoint> out;
  for (Integer m = 1; Rational(m) < bound; ++m) {
    if (m % p == 0) continue;
    out.push_back({static_cast<int>(k), -m});
    out.push_back({static_cast<int>(k), m});
  }
  return out;
}

inline Integer brute_force_multiplicity(long k, const Rational& lambda, std::uint64_t p) {
  return Integer(orbit_level(k, lambda, p).size());
}

/// Z_p(lambda, beta) for any lambda > 0: the two-sided multiplicity series,
/// summed directly from the first level where lambda p^k exceeds 1.
inline PartitionEvaluation Zp_extended(const Rational& lambda, std::uint64_t p, double beta) {
  require_prime(p);
  require_beta(beta, false);
  require(lambda > 0, errc::invalid_argument, "lambda must be positive");
  const Rational P(p);
  long k = 0;
  while (lambda * rational_pow(P, k) <= 1) ++k;
  while (lambda * rational_pow(P, k - 1) > 1) --k;
  const double Pd = static_cast<double>(p);
  const double ratio = std::pow(Pd, 1 - beta);
  CompensatedSum<double> sum;
  Integer prev = 0;  // ceil(lambda p^{k-1} - 1) = 0 at the first level
  int terms = 0;
  for (;; ++k, ++terms) {
    const Integer cur = detail::ceil_level(lambda, p, k);
    const double term = 2 * (cur - prev).convert_to<double>() * std::pow(Pd, -static_cast<double>(k) * beta);
    sum.add(term);
    prev = cur;
    // remaining levels: multiplicity <= 2 lambda p^j, so tail <= 2 lambda p^{(k+1)(1-beta)} / (1 - p^{1-beta})
    const double tail = 2 * to_double(lambda) * std::pow(Pd, static_cast<double>(k + 1) * (1 - beta)) / (1 - ratio);
    if (tail <= 1e-17 * std::abs(sum.value()) || terms > 100000) return {sum.value(), terms, tail};
  }
}

/// Best rational approximation with relative error at most tol (continued fractions).
inline Rational snap_rational(double x, double tol = 1e-15) {
  require(std::isfinite(x) && x > 0, errc::invalid_argument, "snap needs a positive finite value");
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(r);
    const Integer ai(static_cast<long long>(a));
    const Integer h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const Rational q(h1, k1);
    if (std::abs(to_double(q) - x) <= tol * x) return q;
    const double frac = r - a;
    if (frac == 0) return q;
    r = 1 / frac;
    if (r > 1e18) return q;
  }
  return Rational(h1, k1);
}

/// zeta_p(lambda, beta) = lambda^{-beta} Z_p(lambda, beta), periodic under lambda -> p lambda.
inline double zeta_p(const Rational& lambda, std::uint64_t p, double beta) {
  return std::pow(to_double(lambda), -beta) * Zp_extended(lambda, p, beta).value;
}

inline double zeta_p(double lambda, std::uint64_t p, double beta) { return zeta_p(snap_rational(lambda), p, beta); }

inline Integer vacuum_degeneracy(const Rational& lambda, std::uint64_t p) {
  require_lambda_range(lambda, p);
  return 2 * ceil_rational(lambda - 1);
}

// ---------------------------------------------------------------------------
// KMS functionals on the orbit model G(p): points are multipliers r with x = r y.

struct ValuationOrbit {
  std::uint64_t p = 0;
  Rational lambda;
  int K = 0;
  std::vector<OrbitPoint> points;
  std::shared_ptr<const BaseSet<Rational>> base;
};

/// Orbit of the base point y through level K, as a groupoid model.
inline ValuationOrbit valuation_orbit(const Rational& lambda, std::uint64_t p, int K) {
  ValuationOrbit o{p, lambda, K, {}, nullptr};
  std::vector<Rational> mults;
  for (long k = 0; k <= K; ++k)
    for (auto& pt : orbit_level(k, lambda, p)) {
      mults.push_back(pt.multiplier(p));
      o.points.push_back(std::move(pt));
    }
  o.base = std::make_shared<const BaseSet<Rational>>(std::move(mults));
  return o;
}

namespace detail {

inline long orbit_level_of(const Rational& r, const ValuationOrbit& o) {
  auto v = vp(r, o.p);
  require(v.has_value() && *v <= 0 && -*v <= o.K, errc::model_incomplete, "point outside the enumerated orbit");
  require(abs(numerator(r)) < o.lambda * rational_pow(Rational(o.p), -*v), errc::model_incomplete,
          "point outside the enumerated orbit");
  return -*v;
}

}  // namespace detail

/// psi_{beta,y}(f) = sum f(1, n p^{-k} y) p^{-k beta}; exact for integer beta.
template <class S>
S kms_functional(const FiniteGroupoidFunction<Rational, S>& f, const ValuationOrbit& o, long beta) {
  require(f.base() == o.base, errc::model_incomplete, "function is not on this orbit model");
  require(beta >= 1, errc::out_of_domain, "integer beta must be positive");
  S total{};
  for (const auto& [key, v] : f.entries()) {
    if (key.first != 1) continue;
    const long k = detail::orbit_level_of((*o.base)[key.second], o);
    total = total + v * S(rational_pow(Rational(o.p), -k * beta));
  }
  return total;
}

inline std::complex<double> kms_functional(const FiniteGroupoidFunction<Rational, std::complex<double>>& f,
                                           const ValuationOrbit& o, double beta) {
  require(f.base() == o.base, errc::model_incomplete, "function is not on this orbit model");
  std::complex<double> total{};
  for (const auto& [key, v] : f.entries()) {
    if (key.first != 1) continue;
    const long k = detail::orbit_level_of((*o.base)[key.second], o);
    total += v * std::pow(static_cast<double>(o.p), -static_cast<double>(k) * beta);
  }
  return total;
}

/// sigma_{i beta}(f)(k, x) = |k|_p^{-beta} f(k, x), exact for integer beta.
template <class S>
FiniteGroupoidFunction<Rational, S> sigma_imaginary(const FiniteGroupoidFunction<Rational, S>& f, std::uint64_t p,
                                                    long beta) {
  return f.map_values([&](const Rational& k, const Rational&, const S& v) {
    return v * S(rational_pow(padic_norm(k, p), -beta));
  });
}

/// sigma_t(f)(k, x) = |k|_p^{it} f(k, x).
template <class P>
FiniteGroupoidFunction<P, std::complex<double>> time_evolution(
    const FiniteGroupoidFunction<P, std::complex<double>>& f, std::uint64_t p, double t) {
  return f.map_values([&](const Rational& k, const P&, const std::complex<double>& v) {
    const double log_norm = -static_cast<double>(*vp(k, p)) * std::log(static_cast<double>(p));
    return v * std::exp(std::complex<double>(0.0, t * log_norm));
  });
}

/// The cocycle d(k, x) = log|k|_p is the coboundary of h(x) = log|x|_p:
/// vp(k x) - vp(x) = vp(k) on every entry with x != 0.
template <class S>
bool coboundary_check(const FiniteGroupoidFunction<Rational, S>& f, std::uint64_t p) {
  for (const auto& [key, v] : f.entries()) {
    const Rational& x = (*f.base())[key.second];
    if (x == 0) continue;
    if (*vp(key.first * x, p) - *vp(x, p) != *vp(key.first, p)) return false;
  }
  return true;
}

}  // namespace adelic
