#pragma once

// Two semilocal quotient geometries: R^2 modulo the unit group of Z[sqrt 2]
// acting by (x, y) -> (u x, u^{-1} y), and Q_p x R modulo (x, y) -> (p x, p y).

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <variant>

#include "adelic/error.hpp"
#include "adelic/number_core.hpp"

namespace adelic {

struct QuadPoint {
  double x = 0;
  double y = 0;
};

namespace fiber {
struct Generic {
  double value;
};
struct StratumA {};  // x = 0, y != 0
struct StratumB {};  // x != 0, y = 0
struct Origin {};
}  // namespace fiber

using FiberLabel = std::variant<fiber::Generic, fiber::StratumA, fiber::StratumB, fiber::Origin>;

inline std::string fiber_name(const FiberLabel& f) {
  static const char* names[] = {"Generic", "StratumA", "StratumB", "Origin"};
  return names[f.index()];
}

/// a + b sqrt 2 with integer a, b.
struct QuadInteger {
  Integer a;
  Integer b;

  friend QuadInteger operator*(const QuadInteger& l, const QuadInteger& r) {
    return {l.a * r.a + 2 * l.b * r.b, l.a * r.b + l.b * r.a};
  }
  double to_double() const { return a.convert_to<double>() + b.convert_to<double>() * std::sqrt(2.0); }
};

/// (3 + 2 sqrt 2)^m for m >= 0, exact; coefficients are positive so the
/// rendering to double has no cancellation.
inline QuadInteger fundamental_unit_inverse_power(long m) {
  QuadInteger r{1, 0};
  QuadInteger base{3, 2};
  for (long e = m; e > 0; e >>= 1) {
    if (e & 1) r = r * base;
    base = base * base;
  }
  return r;
}

/// u^n with u = 3 - 2 sqrt 2.
inline double quad_unit_power(long n) {
  const double w = fundamental_unit_inverse_power(n >= 0 ? n : -n).to_double();
  return n >= 0 ? 1.0 / w : w;
}

inline constexpr double quad_unit_log = 1.7627471740390860505;  // log(3 + 2 sqrt 2)

/// (x, y) -> (s u^n x, s u^{-n} y), s = +1 or -1.
inline QuadPoint quad_act(long n, int s, const QuadPoint& P) {
  require(s == 1 || s == -1, errc::invalid_argument, "sign must be +1 or -1");
  return {s * quad_unit_power(n) * P.x, s * quad_unit_power(-n) * P.y};
}

struct QuadReduction {
  QuadPoint point;
  long n = 0;
  int s = 1;
};

/// Representative with x in [1, 3 + 2 sqrt 2); returns the (n, s) that produced it.
inline QuadReduction quad_reduce(const QuadPoint& P) {
  require(P.x != 0.0, errc::undefined_on_stratum, "x = 0 lies on a singular stratum; use quad_fiber");
  const int s = P.x > 0 ? 1 : -1;
  long n = static_cast<long>(std::floor(std::log(std::abs(P.x)) / quad_unit_log));
  QuadPoint r = quad_act(n, s, P);
  const double top = quad_unit_power(-1);
  for (int guard = 0; guard < 4 && (r.x < 1.0 || r.x >= top); ++guard) {
    n += r.x < 1.0 ? -1 : 1;
    r = quad_act(n, s, P);
  }
  if (r.x < 1.0 || r.x >= top) fail(errc::numerical_failure, "fundamental domain reduction did not settle");
  return {r, n, s};
}

inline double quad_invariant(const QuadPoint& P) { return P.x * P.y; }

inline FiberLabel quad_fiber(const QuadPoint& P) {
  if (P.x != 0.0 && P.y != 0.0) return fiber::Generic{P.x * P.y};
  if (P.x == 0.0 && P.y != 0.0) return fiber::StratumA{};
  if (P.x != 0.0) return fiber::StratumB{};
  return fiber::Origin{};
}

// ---------------------------------------------------------------------------
// Q_p x R

/// x = p^xval * xunit in Q_p (x = 0 when xval is absent), y real.
struct PadicRealPoint {
  Valuation xval;
  std::optional<Rational> xunit;
  double y = 0;

  static PadicRealPoint from_rational(const Rational& x, double y, std::uint64_t p) {
    if (x == 0) return {std::nullopt, std::nullopt, y};
    return {vp(x, p), padic_unit(x, p), y};
  }

  void validate(std::uint64_t p) const {
    require_prime(p);
    require(xval.has_value() == xunit.has_value(), errc::invalid_argument, "xunit present exactly when x != 0");
    if (xunit) require(vp(*xunit, p) == 0, errc::invalid_argument, "xunit must be a p-adic unit");
  }
};

/// (x, y) -> (s p^n x, s p^n y).
inline PadicRealPoint padic_real_act(long n, int s, const PadicRealPoint& P, std::uint64_t p) {
  P.validate(p);
  require(s == 1 || s == -1, errc::invalid_argument, "sign must be +1 or -1");
  PadicRealPoint r = P;
  if (r.xval) {
    *r.xval += n;
    *r.xunit *= s;
  }
  r.y = s * std::pow(static_cast<double>(p), static_cast<double>(n)) * P.y;
  return r;
}

/// Representative in Z_p^* x R (xval = 0, y > 0 when y != 0).
inline PadicRealPoint padic_real_reduce(const PadicRealPoint& P, std::uint64_t p) {
  P.validate(p);
  require(P.xval.has_value(), errc::undefined_on_stratum, "x = 0 lies on a singular stratum");
  const int s = P.y < 0 ? -1 : 1;
  return padic_real_act(-*P.xval, s, P, p);
}

/// f(x, y) = |x|_p |y|.
inline double padic_real_invariant(const PadicRealPoint& P, std::uint64_t p) {
  if (!P.xval) return 0.0;
  return std::pow(static_cast<double>(p), -static_cast<double>(*P.xval)) * std::abs(P.y);
}

/// A class in R_+^* / p^Z: value = rep * p^exponent with rep in [1, p).
struct PowerClass {
  double rep = 1;
  long exponent = 0;
};

inline PowerClass power_class(double v, std::uint64_t p) {
  require(v > 0 && std::isfinite(v), errc::invalid_argument, "class of a non-positive value");
  const double P = static_cast<double>(p);
  long m = static_cast<long>(std::floor(std::log(v) / std::log(P)));
  double r = v / std::pow(P, static_cast<double>(m));
  if (r >= P) {
    ++m;
    r = v / std::pow(P, static_cast<double>(m));
  } else if (r < 1.0) {
    --m;
    r = v / std::pow(P, static_cast<double>(m));
  }
  return {std::min(std::max(r, 1.0), std::nextafter(P, 0.0)), m};
}

/// Holonomy g(x, y): the class of |y| modulo p^Z, as its representative in [1, p).
inline double holonomy_class(const PadicRealPoint& P, std::uint64_t p) {
  require(P.y != 0.0, errc::undefined_on_stratum, "holonomy undefined at y = 0");
  return power_class(std::abs(P.y), p).rep;
}

/// Class of f(x, y) = |x|_p |y| at the valuation level: same representative as
/// |y|, exponent shifted by -vp(x).
inline PowerClass invariant_class(const PadicRealPoint& P, std::uint64_t p) {
  require(P.xval.has_value() && P.y != 0.0, errc::undefined_on_stratum, "f vanishes on the singular fiber");
  PowerClass c = power_class(std::abs(P.y), p);
  c.exponent -= *P.xval;
  return c;
}

/// Distance between two classes in R_+^*/p^Z, measured on log scale modulo log p.
inline double class_distance(double a, double b, std::uint64_t p) {
  const double L = std::log(static_cast<double>(p));
  double d = std::fmod(std::abs(std::log(a) - std::log(b)), L);
  return std::min(d, L - d);
}

}  // namespace adelic
