#pragma once

// The truncated group ring Q[Q/Z] at finite level, the endomorphisms rho_n,
// the cyclotomic Galois action, and the functions phi_a, psi_a of the
// arithmetic subalgebra with their derivation checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/number_core.hpp"

namespace adelic {

/// sum_i c_i e_{i/M} with exact rational coefficients; zero coefficients are not stored.
class GroupRingElement {
 public:
  explicit GroupRingElement(long level = 1) : level_(level) {
    require(level >= 1, errc::invalid_argument, "level must be positive");
  }

  static GroupRingElement basis(const Rational& r, long level) {
    GroupRingElement x(level);
    const Rational scaled = r * level;
    require(denominator(scaled) == 1, errc::invalid_argument, "residue " + to_string(r) + " is not of level dividing M");
    x.add(static_cast<long>(numerator(scaled) % level + level) % level, 1);
    return x;
  }

  static GroupRingElement one() { return basis(0, 1); }

  long level() const { return level_; }
  const std::map<long, Rational>& coeffs() const { return coeffs_; }

  /// Coefficient of e_{i/M}.
  Rational coeff(long i) const {
    auto it = coeffs_.find(((i % level_) + level_) % level_);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void add(long i, const Rational& c) {
    i = ((i % level_) + level_) % level_;
    Rational v = coeff(i) + c;
    if (v == 0)
      coeffs_.erase(i);
    else
      coeffs_[i] = v;
  }

  /// The same element written at level L (a multiple of the current level).
  GroupRingElement lifted(long L) const {
    require(L % level_ == 0, errc::invalid_argument, "lift target must be a multiple of the level");
    GroupRingElement y(L);
    for (const auto& [i, c] : coeffs_) y.add(i * (L / level_), c);
    return y;
  }

  friend GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y) {
    const long L = std::lcm(x.level_, y.level_);
    GroupRingElement r = x.lifted(L);
    for (const auto& [i, c] : y.lifted(L).coeffs_) r.add(i, c);
    return r;
  }

  friend GroupRingElement operator*(const Rational& s, const GroupRingElement& x) {
    GroupRingElement r(x.level_);
    if (s == 0) return r;
    for (const auto& [i, c] : x.coeffs_) r.add(i, s * c);
    return r;
  }

  friend bool operator==(const GroupRingElement& x, const GroupRingElement& y) {
    const long L = std::lcm(x.level_, y.level_);
    return x.lifted(L).coeffs_ == y.lifted(L).coeffs_;
  }

 private:
  long level_;
  std::map<long, Rational> coeffs_;
};

/// e_r e_s = e_{r+s}; levels lift to their lcm.
inline GroupRingElement gr_mul(const GroupRingElement& x, const GroupRingElement& y) {
  const long L = std::lcm(x.level(), y.level());
  const auto a = x.lifted(L), b = y.lifted(L);
  GroupRingElement r(L);
  for (const auto& [i, c] : a.coeffs())
    for (const auto& [j, d] : b.coeffs()) r.add(i + j, c * d);
  return r;
}

/// rho_n(e_r) = (1/n) sum_{n s = r} e_s, landing at level M n.
inline GroupRingElement rho_n(const GroupRingElement& x, long n) {
  require(n >= 1, errc::invalid_argument, "n must be positive");
  const long M = x.level();
  GroupRingElement r(M * n);
  const Rational w(1, n);
  for (const auto& [i, c] : x.coeffs())
    for (long j = 0; j < n; ++j) r.add(i + j * M, w * c);
  return r;
}

struct GaloisElement {
  long M = 1;
  long u = 1;
};

/// e_r -> e_{u r}, u a unit modulo the level.
inline GroupRingElement galois_act(const GaloisElement& sigma, const GroupRingElement& x) {
  const long L = std::lcm(sigma.M, x.level());
  require(std::gcd(((sigma.u % L) + L) % L, L) == 1, errc::invalid_argument, "u is not a unit modulo the level");
  const auto a = x.lifted(L);
  GroupRingElement r(L);
  for (const auto& [i, c] : a.coeffs()) r.add(static_cast<long>((static_cast<__int128>(sigma.u) * i % L + L) % L), c);
  return r;
}

// ---------------------------------------------------------------------------
// phi_a, psi_a

struct QLatticePoint {
  Rational rho;  // residue in [0, 1)
  double lambda = 1.0;
};

/// Fractional part <rho a> in [0, 1).
inline Rational lattice_residue(const Rational& a, const QLatticePoint& P) {
  const Rational v = P.rho * a;
  return v - Rational(floor_rational(v));
}

/// phi_a = sum over y in Lambda + phi(a) of y^{-1} (symmetric summation) = lambda pi cot(pi x).
inline std::complex<double> eisenstein_phi(const Rational& a, const QLatticePoint& P) {
  require(P.lambda > 0, errc::invalid_argument, "lambda must be positive");
  const Rational x = lattice_residue(a, P);
  if (x == 0) return 0.0;
  return P.lambda * M_PI / std::tan(M_PI * to_double(x));
}

/// psi_a = (1/2 pi i) d/d lambda phi_a = cot(pi x) / (2i), independent of lambda.
inline std::complex<double> eisenstein_psi(const Rational& a, const QLatticePoint& P) {
  require(P.lambda > 0, errc::invalid_argument, "lambda must be positive");
  const Rational x = lattice_residue(a, P);
  if (x == 0) return 0.0;
  return std::complex<double>(0.0, -0.5 / std::tan(M_PI * to_double(x)));
}

struct DerivationReport {
  double n_phi_minus_psi = 0;    // |N(phi_a) - psi_a|
  double n_psi = 0;              // |N(psi_a)|
  double y_phi_minus_phi = 0;    // |Y(phi_a) - phi_a|
  double y_psi = 0;              // |Y(psi_a)|
  double monodromy_phi = 0;      // |F(mu) N(phi) - mu N(F(mu) phi)|
  double monodromy_psi = 0;
  bool ok = false;
};

/// N = (1/2 pi i) d/d lambda, Y = lambda d/d lambda, F(mu) f(lambda) = f(lambda / mu),
/// derivatives by central differences with step 1e-5 lambda.
inline DerivationReport derivation_checks(const Rational& a, const QLatticePoint& P, double mu, double tol = 1e-7) {
  require(mu > 0, errc::invalid_argument, "mu must be positive");
  using C = std::complex<double>;
  auto phi = [&](double l) { return eisenstein_phi(a, {P.rho, l}); };
  auto psi = [&](double l) { return eisenstein_psi(a, {P.rho, l}); };
  const C two_pi_i(0.0, 2 * M_PI);
  auto deriv = [](auto&& f, double l) {
    const double h = 1e-5 * l;
    return (f(l + h) - f(l - h)) / (2 * h);
  };
  auto N = [&](auto&& f, double l) { return deriv(f, l) / two_pi_i; };
  auto Y = [&](auto&& f, double l) { return l * deriv(f, l); };
  const double l = P.lambda;
  DerivationReport r;
  r.n_phi_minus_psi = std::abs(N(phi, l) - psi(l));
  r.n_psi = std::abs(N(psi, l));
  r.y_phi_minus_phi = std::abs(Y(phi, l) - phi(l));
  r.y_psi = std::abs(Y(psi, l));
  auto F_phi = [&](double t) { return phi(t / mu); };
  auto F_psi = [&](double t) { return psi(t / mu); };
  // (F(mu) N f)(lambda) = (N f)(lambda / mu)
  r.monodromy_phi = std::abs(N(phi, l / mu) - mu * N(F_phi, l));
  r.monodromy_psi = std::abs(N(psi, l / mu) - mu * N(F_psi, l));
  const double scale = std::max(1.0, std::abs(phi(l)));
  r.ok = r.n_phi_minus_psi <= tol * scale && r.n_psi <= tol && r.y_phi_minus_phi <= tol * scale && r.y_psi <= tol &&
         r.monodromy_phi <= tol * scale && r.monodromy_psi <= tol;
  return r;
}

/// (zeta + 1) / (2 (zeta - 1)) at zeta = exp(2 pi i x), x in (0, 1).
inline std::complex<double> psi_cyclotomic(const std::complex<double>& zeta) { return (zeta + 1.0) / (2.0 * (zeta - 1.0)); }

/// sigma_u(psi_a(rho)) = psi_a(u rho), with sigma_u acting by zeta -> zeta^u.
inline bool galois_intertwine_check(const Rational& a, long u, const Rational& rho, double tol = 1e-10) {
  const QLatticePoint P{rho, 1.0};
  const Rational x = lattice_residue(a, P);
  const auto d = denominator(x).convert_to<long>();
  require(std::gcd(u, d) == 1, errc::invalid_argument, "u is not a unit modulo the denominator");
  if (x == 0) return std::abs(eisenstein_psi(a, {rho * u, 1.0})) <= tol;
  const auto zeta = std::exp(std::complex<double>(0.0, 2 * M_PI * to_double(x)));
  const auto lhs = psi_cyclotomic(std::pow(zeta, static_cast<double>(u)));
  const auto rhs = eisenstein_psi(a, {rho * u, 1.0});
  return std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(rhs));
}

/// psi values over the Galois orbit of x = <rho a>, u running over (Z/dZ)*.
inline std::vector<std::complex<double>> galois_orbit(const Rational& a, const Rational& rho = 1) {
  const Rational x = lattice_residue(a, {rho, 1.0});
  const auto d = denominator(x).convert_to<long>();
  std::vector<std::complex<double>> out;
  for (long u = 1; u <= d; ++u)
    if (std::gcd(u, d) == 1) out.push_back(eisenstein_psi(a, {rho * u, 1.0}));
  return out;
}

/// Coefficients (leading first) of prod (X - v) over the values.
inline std::vector<std::complex<double>> orbit_polynomial(const std::vector<std::complex<double>>& values) {
  std::vector<std::complex<double>> c{1.0};
  for (const auto& v : values) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= v * c[i];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace adelic
