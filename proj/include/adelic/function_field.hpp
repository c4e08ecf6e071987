#pragma once

// Zeta functions of curves over finite fields from point counts: the power
// series Z(T), the numerator P(T), Frobenius eigenvalues and the checks that
// go with them.

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "adelic/error.hpp"
#include "adelic/number_core.hpp"

namespace adelic {

struct CurveCountData {
  std::int64_t q = 0;
  int g = 0;
  std::vector<std::int64_t> counts;  // N_1 .. N_m
};

struct ZetaPolynomial {
  std::int64_t q = 0;
  int g = 0;
  std::vector<Integer> coeffs;  // a_0 .. a_{2g}
  std::vector<std::complex<double>> eigenvalues;
};

inline void validate(const CurveCountData& d) {
  require(d.q >= 2 && prime_power(static_cast<std::uint64_t>(d.q)).has_value(), errc::invalid_argument,
          "q must be a prime power");
  require(d.g >= 0, errc::invalid_argument, "genus must be nonnegative");
  for (auto n : d.counts) require(n >= 0, errc::invalid_argument, "point counts must be nonnegative");
}

/// Coefficients z_0 .. z_order of Z(T) = exp(sum N_n T^n / n), via n z_n = sum_k N_k z_{n-k}.
inline std::vector<Rational> zeta_series(const CurveCountData& d, int order) {
  validate(d);
  require(order >= 0, errc::invalid_argument, "order must be nonnegative");
  require(order <= static_cast<int>(d.counts.size()), errc::insufficient_counts,
          "series order exceeds the number of supplied counts");
  std::vector<Rational> z(order + 1);
  z[0] = 1;
  for (int n = 1; n <= order; ++n) {
    Rational acc = 0;
    for (int k = 1; k <= n; ++k) acc += Rational(d.counts[k - 1]) * z[n - k];
    z[n] = acc / n;
  }
  return z;
}

namespace detail {

inline Integer binomial(int n, int k) {
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Integer ipow(std::int64_t q, int e) {
  Integer r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

/// Newton-polished roots of the monic polynomial x^n + c_1 x^{n-1} + ... + c_n.
inline std::vector<std::complex<double>> monic_roots(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size());
  if (n == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[n - 1 - i];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  require(solver.info() == Eigen::Success, errc::numerical_failure, "companion eigenvalue iteration failed");
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()[i]);
  for (auto& r : roots) {
    for (int it = 0; it < 20; ++it) {
      std::complex<double> f = 1.0, df = 0.0;
      for (int j = 0; j < n; ++j) {
        df = df * r + f;
        f = f * r + c[j];
      }
      if (std::abs(df) == 0.0) break;
      const auto step = f / df;
      r -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
    }
    std::complex<double> f = 1.0;
    for (int j = 0; j < n; ++j) f = f * r + c[j];
    require(std::abs(f) <= 1e-8 * std::pow(std::max(1.0, std::abs(r)), n), errc::numerical_failure,
            "root polishing did not converge");
  }
  return roots;
}

}  // namespace detail

namespace detail {

using RatPoly = std::vector<Rational>;  // low to high

inline void trim(RatPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline RatPoly poly_rem(RatPoly a, const RatPoly& b) {
  trim(a);
  while (a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

inline RatPoly poly_div(RatPoly a, const RatPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  RatPoly q(a.size() - b.size() + 1);
  while (a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return q;
}

inline RatPoly make_monic(RatPoly a) {
  trim(a);
  const Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

inline RatPoly derivative(const RatPoly& a) {
  RatPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
  return d;
}

/// Yun's square-free factorisation of a monic polynomial: pairs (factor, multiplicity).
inline std::vector<std::pair<RatPoly, int>> squarefree(const RatPoly& f) {
  std::vector<std::pair<RatPoly, int>> out;
  if (f.size() <= 1) return out;
  auto a = poly_gcd(f, derivative(f));
  auto b = poly_div(f, a);
  auto c = poly_div(derivative(f), a);
  auto d = c;
  {
    const auto db = derivative(b);
    for (std::size_t i = 0; i < std::max(d.size(), db.size()); ++i) {
      if (i >= d.size()) d.push_back(0);
      if (i < db.size()) d[i] -= db[i];
    }
    trim(d);
  }
  for (int i = 1; b.size() > 1; ++i) {
    a = poly_gcd(b, d);
    if (a.size() > 1) out.emplace_back(a, i);
    b = poly_div(b, a);
    c = poly_div(d, a);
    d = c;
    const auto db = derivative(b);
    for (std::size_t k = 0; k < std::max(d.size(), db.size()); ++k) {
      if (k >= d.size()) d.push_back(0);
      if (k < db.size()) d[k] -= db[k];
    }
    trim(d);
  }
  return out;
}

}  // namespace detail

/// Inverse roots of P(T), i.e. roots of L(x) = x^{2g} + a_1 x^{2g-1} + ... + a_{2g}.
/// Since L(x) = x^g h(x + q/x) with h of degree g, the roots come from those of
/// the square-free parts of h through x^2 - t x + q = 0.
inline std::vector<std::complex<double>> frobenius_eigenvalues(const ZetaPolynomial& P) {
  const int g = P.g;
  if (g == 0) return {};
  // D_k = x^k + (q/x)^k as a polynomial in t: D_0 = 2, D_1 = t, D_k = t D_{k-1} - q D_{k-2}
  std::vector<std::vector<Integer>> D(g + 1);
  D[0] = {2};
  D[1] = {0, 1};
  for (int k = 2; k <= g; ++k) {
    D[k].assign(k + 1, 0);
    for (std::size_t i = 0; i < D[k - 1].size(); ++i) D[k][i + 1] += D[k - 1][i];
    for (std::size_t i = 0; i < D[k - 2].size(); ++i) D[k][i] -= Integer(P.q) * D[k - 2][i];
  }
  detail::RatPoly h(g + 1, Rational(0));
  h[0] += Rational(P.coeffs[g]);
  for (int j = 0; j < g; ++j)
    for (std::size_t i = 0; i < D[g - j].size(); ++i) h[i] += Rational(P.coeffs[j] * D[g - j][i]);
  const double q = static_cast<double>(P.q), bound = 2.0 * std::sqrt(q);
  std::vector<std::complex<double>> out;
  for (const auto& [factor, mult] : detail::squarefree(h)) {
    std::vector<double> c;
    for (int i = static_cast<int>(factor.size()) - 2; i >= 0; --i) c.push_back(factor[i].convert_to<double>());
    for (const auto& t : detail::monic_roots(c)) {
      std::complex<double> x1, x2;
      const bool real_t = std::abs(t.imag()) <= 1e-12 * std::max(1.0, std::abs(t));
      if (real_t && std::abs(t.real()) <= bound * (1 + 1e-12)) {
        const double im = 0.5 * std::sqrt(std::max(0.0, 4 * q - t.real() * t.real()));
        x1 = {0.5 * t.real(), im};
        x2 = {0.5 * t.real(), -im};
      } else {
        const auto disc = std::sqrt(t * t - 4.0 * q);
        x1 = 0.5 * (t + disc);
        x2 = 0.5 * (t - disc);
      }
      for (int m = 0; m < mult; ++m) {
        out.push_back(x1);
        out.push_back(x2);
      }
    }
  }
  return out;
}

/// P(T) = Z(T)(1 - T)(1 - qT); a_0..a_g from the counts, the rest by the functional equation.
inline ZetaPolynomial numerator_polynomial(const CurveCountData& d) {
  validate(d);
  const int m = static_cast<int>(d.counts.size());
  require(m >= d.g, errc::insufficient_counts, "need at least g point counts");
  const auto z = zeta_series(d, m);
  std::vector<Rational> raw(m + 1);
  for (int n = 0; n <= m; ++n) {
    raw[n] = z[n];
    if (n >= 1) raw[n] -= Rational(1 + d.q) * z[n - 1];
    if (n >= 2) raw[n] += Rational(d.q) * z[n - 2];
  }
  ZetaPolynomial P{d.q, d.g, std::vector<Integer>(2 * d.g + 1), {}};
  for (int j = 0; j <= d.g; ++j) {
    require(denominator(raw[j]) == 1, errc::inconsistent_counts,
            "coefficient a_" + std::to_string(j) + " of P is not an integer");
    P.coeffs[j] = numerator(raw[j]);
  }
  for (int j = 0; j < d.g; ++j) P.coeffs[2 * d.g - j] = detail::ipow(d.q, d.g - j) * P.coeffs[j];
  for (int n = 0; n <= m; ++n) {
    const Integer expected = n <= 2 * d.g ? P.coeffs[n] : Integer(0);
    require(raw[n] == Rational(expected), errc::inconsistent_counts,
            "counts disagree with the functional equation at T^" + std::to_string(n));
  }
  // |a_j| <= C(2g, j) q^{j/2}: necessary for eigenvalues of absolute value sqrt q
  for (int j = 1; j <= 2 * d.g; ++j) {
    const Integer a2 = P.coeffs[j] * P.coeffs[j];
    const Integer b = detail::binomial(2 * d.g, j);
    require(a2 <= b * b * detail::ipow(d.q, j), errc::inconsistent_counts,
            "coefficient a_" + std::to_string(j) + " violates the Weil bound");
  }
  P.eigenvalues = frobenius_eigenvalues(P);
  return P;
}

struct RhCheck {
  bool ok = true;
  double max_deviation = 0;
};

inline RhCheck rh_check(const ZetaPolynomial& P, double tol = 1e-10) {
  const double sq = std::sqrt(static_cast<double>(P.q));
  RhCheck r;
  for (const auto& l : P.eigenvalues) r.max_deviation = std::max(r.max_deviation, std::abs(std::abs(l) - sq));
  r.ok = r.max_deviation <= tol;
  return r;
}

/// #C(F_{q^n}) = q^n + 1 - sum lambda_j^n.
inline Integer recover_counts(const ZetaPolynomial& P, int n) {
  require(n >= 1, errc::invalid_argument, "n must be positive");
  std::complex<double> s = 0;
  for (const auto& l : P.eigenvalues) s += std::pow(l, n);
  const double value = std::pow(static_cast<double>(P.q), n) + 1.0 - s.real();
  const double rounded = std::round(value);
  require(std::abs(value - rounded) <= 1e-6 && std::abs(s.imag()) <= 1e-6, errc::numerical_failure,
          "recovered count is not close to an integer");
  require(rounded >= 0, errc::inconsistent_counts, "recovered count is negative");
  return Integer(static_cast<long long>(rounded));
}

/// Tr(Z_{n,m} * Z'_{n,m}) = 2 g m^2 + 2 (1 + q - N) m n + 2 g q n^2.
inline Integer correspondence_trace(int g, std::int64_t q, std::int64_t N, std::int64_t n, std::int64_t m) {
  return Integer(2 * g) * m * m + Integer(2) * (1 + q - N) * m * n + Integer(2 * g) * q * n * n;
}

/// Positive semidefiniteness of the form above: (1 + q - N)^2 <= 4 g^2 q.
inline bool psd_check(int g, std::int64_t q, std::int64_t N) {
  require(g >= 1, errc::invalid_argument, "psd check needs g >= 1");
  const Integer t = 1 + q - N;
  return t * t <= Integer(4) * g * g * q;
}

}  // namespace adelic
