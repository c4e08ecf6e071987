#pragma once

// Exact arithmetic substrate: rationals, p-adic valuations, places,
// semilocal adeles and their idele norm, prime tables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "adelic/error.hpp"

namespace adelic {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// p-adic valuation; std::nullopt encodes +infinity (the valuation of zero).
using Valuation = std::optional<long>;

inline Integer numerator(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator(const Rational& x) { return boost::multiprecision::denominator(x); }

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

/// Parses "a", "-a" or "a/b" with integer a, b (b > 0).
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { fail(errc::invalid_argument, "not a rational: '" + std::string(text) + "'"); };
  auto parse_int = [&](std::string_view s) -> Integer {
    if (s.empty()) bad();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) bad();
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9') bad();
    Integer v(std::string(s.substr(i)));
    return s[0] == '-' ? Integer(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den <= 0) bad();
  return Rational(num, den);
}

// ---------------------------------------------------------------------------
// Primes

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases are exact below 2^64.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : small) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : small) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline void require_prime(std::uint64_t p) {
  require(is_prime(p), errc::invalid_argument, std::to_string(p) + " is not prime");
}

/// Primes up to a bound by the sieve of Eratosthenes.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t bound = 1'000'000) : bound_(bound) {
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      primes_.push_back(i);
      for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
  }

  std::uint64_t bound() const { return bound_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }

  /// Primes p <= limit, ascending.
  std::vector<std::uint64_t> up_to(std::uint64_t limit) const {
    require(limit <= bound_, errc::invalid_argument, "prime table bound exceeded");
    auto end = std::upper_bound(primes_.begin(), primes_.end(), limit);
    return {primes_.begin(), end};
  }

 private:
  std::uint64_t bound_;
  std::vector<std::uint64_t> primes_;
};

/// If n = p^k with p prime and k >= 1, returns (p, k).
inline std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::pair{n, 1};
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return std::pair{p, k};
}

/// von Mangoldt function.
inline double mangoldt(std::uint64_t n) {
  require(n >= 1, errc::invalid_argument, "mangoldt needs n >= 1");
  auto pk = prime_power(n);
  return pk ? std::log(static_cast<double>(pk->first)) : 0.0;
}

// ---------------------------------------------------------------------------
// Valuations

inline long vp(Integer n, std::uint64_t p) {
  // caller guarantees n != 0
  long v = 0;
  const Integer pp(p);
  while (n % pp == 0) {
    n /= pp;
    ++v;
  }
  return v;
}

inline Valuation vp(const Rational& x, std::uint64_t p) {
  require_prime(p);
  if (x == 0) return std::nullopt;
  return vp(numerator(x), p) - vp(denominator(x), p);
}

inline Rational rational_pow(const Rational& base, long e) {
  Rational r = 1;
  Rational b = e >= 0 ? base : Rational(1) / base;
  for (long i = 0, n = e >= 0 ? e : -e; i < n; ++i) r *= b;
  return r;
}

/// |x|_p = p^{-vp(x)}, exact; zero for x = 0.
inline Rational padic_norm(const Rational& x, std::uint64_t p) {
  auto v = vp(x, p);
  if (!v) return 0;
  return rational_pow(Rational(p), -*v);
}

/// The p-adic unit part x / p^{vp(x)} (x != 0).
inline Rational padic_unit(const Rational& x, std::uint64_t p) {
  auto v = vp(x, p);
  require(v.has_value(), errc::invalid_argument, "unit part of zero");
  return x / rational_pow(Rational(p), *v);
}

inline Integer floor_rational(const Rational& x) {
  Integer q = numerator(x) / denominator(x);  // truncates toward zero
  if (numerator(x) < 0 && q * denominator(x) != numerator(x)) q -= 1;
  return q;
}

inline Integer ceil_rational(const Rational& x) {
  Integer q = numerator(x) / denominator(x);
  if (numerator(x) > 0 && q * denominator(x) != numerator(x)) q += 1;
  return q;
}

// ---------------------------------------------------------------------------
// Places and semilocal adeles

struct Place {
  enum class Kind { Finite, Archimedean };
  Kind kind = Kind::Archimedean;
  std::uint64_t p = 0;  // meaningful for finite places only

  static Place infinite() { return {}; }
  static Place finite(std::uint64_t prime) {
    require_prime(prime);
    return {Kind::Finite, prime};
  }
  bool is_finite() const { return kind == Kind::Finite; }

  friend bool operator==(const Place&, const Place&) = default;
  /// Finite places ascending by p, the archimedean place last.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.is_finite() != b.is_finite()) return a.is_finite();
    return a.p < b.p;
  }
};

inline std::string to_string(const Place& v) {
  return v.is_finite() ? std::to_string(v.p) : std::string("inf");
}

/// Product of Q_v over a finite set of places; finite components are exact.
class SemilocalAdele {
 public:
  using Component = std::variant<Rational, double>;

  SemilocalAdele() = default;

  /// Components are given per place; order is normalized, duplicates rejected.
  explicit SemilocalAdele(std::vector<std::pair<Place, Component>> comps) : comps_(std::move(comps)) {
    std::sort(comps_.begin(), comps_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      const auto& [v, c] = comps_[i];
      if (i > 0) require(!(comps_[i - 1].first == v), errc::invalid_argument, "duplicate place");
      require(v.is_finite() == std::holds_alternative<Rational>(c), errc::invalid_argument,
              "finite places carry rationals, the real place a double");
    }
  }

  /// The principal adele: x at every place of `places`.
  static SemilocalAdele principal(const Rational& x, const std::vector<Place>& places) {
    std::vector<std::pair<Place, Component>> comps;
    for (const auto& v : places) {
      if (v.is_finite())
        comps.emplace_back(v, x);
      else
        comps.emplace_back(v, to_double(x));
    }
    return SemilocalAdele(std::move(comps));
  }

  const std::vector<std::pair<Place, Component>>& components() const { return comps_; }

  std::vector<Place> support() const {
    std::vector<Place> out;
    for (const auto& c : comps_) out.push_back(c.first);
    return out;
  }

  const Component& at(const Place& v) const {
    for (const auto& c : comps_)
      if (c.first == v) return c.second;
    fail(errc::invalid_argument, "place " + to_string(v) + " not in support");
  }

  /// Diagonal multiplication by k in Q*.
  SemilocalAdele scaled(const Rational& k) const {
    SemilocalAdele out = *this;
    const double kd = to_double(k);
    for (auto& [v, c] : out.comps_) {
      if (auto* r = std::get_if<Rational>(&c))
        *r *= k;
      else
        std::get<double>(c) *= kd;
    }
    return out;
  }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const auto& c) {
      if (auto* r = std::get_if<Rational>(&c.second)) return *r == 0;
      return std::get<double>(c.second) == 0.0;
    });
  }

  /// Exact at finite places, |a - b| <= tol * max(1, |a|, |b|) at the real place.
  bool approx_equal(const SemilocalAdele& o, double tol = 1e-12) const {
    if (comps_.size() != o.comps_.size()) return false;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (!(comps_[i].first == o.comps_[i].first)) return false;
      const auto& a = comps_[i].second;
      const auto& b = o.comps_[i].second;
      if (auto* ra = std::get_if<Rational>(&a)) {
        if (*ra != std::get<Rational>(b)) return false;
      } else {
        double x = std::get<double>(a), y = std::get<double>(b);
        if (std::abs(x - y) > tol * std::max({1.0, std::abs(x), std::abs(y)})) return false;
      }
    }
    return true;
  }

 private:
  std::vector<std::pair<Place, Component>> comps_;
};

/// |a| = prod_v |a_v|_v over the support.
inline double idele_norm(const SemilocalAdele& a) {
  double norm = 1.0;
  for (const auto& [v, c] : a.components()) {
    if (v.is_finite()) {
      const auto& r = std::get<Rational>(c);
      require(r != 0, errc::not_an_idele, "zero component at place " + to_string(v));
      norm *= to_double(padic_norm(r, v.p));
    } else {
      norm *= std::abs(std::get<double>(c));
    }
  }
  return norm;
}

/// |k|_S for k in Q*: product of local absolute values over the places in S.
inline Rational semilocal_norm(const Rational& k, const std::vector<Place>& places) {
  require(k != 0, errc::invalid_argument, "norm of zero");
  Rational n = 1;
  for (const auto& v : places) n *= v.is_finite() ? padic_norm(k, v.p) : Rational(abs(k));
  return n;
}

}  // namespace adelic
