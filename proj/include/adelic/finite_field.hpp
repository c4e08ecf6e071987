#pragma once

// Small finite fields F_{p^d} (p^d <= 2^16) and projective point counts of
// plane curves, used as an independent source of curve point counts.

#include <cstdint>
#include <string>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/number_core.hpp"

namespace adelic {

/// Polynomials over F_p, coefficients low to high.
using FpPoly = std::vector<int>;

namespace detail {

inline void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int inv_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a % p; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r;
}

/// Remainder of f modulo g (g nonzero, trimmed).
inline FpPoly poly_mod(FpPoly f, const FpPoly& g, int p) {
  trim(f);
  const int lead_inv = inv_mod(g.back(), p);
  while (f.size() >= g.size()) {
    const int c = f.back() * lead_inv % p;
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = ((f[shift + i] - c * g[i]) % p + p) % p;
    trim(f);
  }
  return f;
}

}  // namespace detail

/// Irreducibility by brute search over monic divisors of degree 1 .. deg/2.
inline bool is_irreducible(FpPoly f, int p) {
  detail::trim(f);
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  for (int e = 1; 2 * e <= d; ++e) {
    long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
      FpPoly g(e + 1, 0);
      long v = idx;
      for (int i = 0; i < e; ++i, v /= p) g[i] = static_cast<int>(v % p);
      g[e] = 1;
      if (detail::poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

/// The lexicographically first monic irreducible polynomial of degree d.
inline FpPoly first_irreducible(int p, int d) {
  long count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (long idx = 0; idx < count; ++idx) {
    FpPoly f(d + 1, 0);
    long v = idx;
    for (int i = 0; i < d; ++i, v /= p) f[i] = static_cast<int>(v % p);
    f[d] = 1;
    if (is_irreducible(f, p)) return f;
  }
  fail(errc::invalid_field, "no irreducible polynomial found");
}

/// F_p[t] / (modulus). Elements are integers whose base-p digits are the
/// coefficients in t; multiplication goes through discrete log tables.
class FiniteField {
 public:
  FiniteField(int p, FpPoly modulus) : p_(p), mod_(std::move(modulus)) {
    require(p >= 2 && is_prime(static_cast<std::uint64_t>(p)), errc::invalid_field, "characteristic must be prime");
    detail::trim(mod_);
    require(mod_.size() >= 2, errc::invalid_field, "modulus must have positive degree");
    for (int& c : mod_) require(c >= 0 && c < p, errc::invalid_field, "modulus coefficients must lie in [0, p)");
    require(is_irreducible(mod_, p), errc::invalid_field, "modulus is reducible over F_" + std::to_string(p));
    degree_ = static_cast<int>(mod_.size()) - 1;
    size_ = 1;
    for (int i = 0; i < degree_; ++i) {
      size_ *= p;
      require(size_ <= 65536, errc::invalid_field, "field size exceeds 2^16");
    }
    build_tables();
  }

  int characteristic() const { return p_; }
  int degree() const { return degree_; }
  int size() const { return size_; }
  const FpPoly& modulus() const { return mod_; }

  int add(int a, int b) const {
    int r = 0, scale = 1;
    for (int i = 0; i < degree_; ++i, scale *= p_, a /= p_, b /= p_) r += ((a % p_ + b % p_) % p_) * scale;
    return r;
  }

  int neg(int a) const {
    int r = 0, scale = 1;
    for (int i = 0; i < degree_; ++i, scale *= p_, a /= p_) r += ((p_ - a % p_) % p_) * scale;
    return r;
  }

  int mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (size_ - 1)];
  }

  int pow(int a, long e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const long n = size_ - 1;
    return exp_[((static_cast<long>(log_[a]) * (e % n)) % n + n) % n];
  }

  /// Evaluates a polynomial with coefficients in this field at x.
  int eval(const std::vector<int>& coeffs, int x) const {
    int r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = add(mul(r, x), *it);
    return r;
  }

  /// Element of F_p given by an integer.
  int prime_element(int c) const { return ((c % p_) + p_) % p_; }

 private:
  // polynomial multiplication in digit encoding, used only to build the tables
  int slow_mul(int a, int b) const {
    FpPoly fa(degree_), fb(degree_);
    for (int i = 0; i < degree_; ++i, a /= p_, b /= p_) {
      fa[i] = a % p_;
      fb[i] = b % p_;
    }
    FpPoly prod(2 * degree_, 0);
    for (int i = 0; i < degree_; ++i)
      for (int j = 0; j < degree_; ++j) prod[i + j] = (prod[i + j] + fa[i] * fb[j]) % p_;
    FpPoly r = detail::poly_mod(prod, mod_, p_);
    int v = 0, scale = 1;
    for (std::size_t i = 0; i < r.size(); ++i, scale *= p_) v += r[i] * scale;
    return v;
  }

  void build_tables() {
    log_.assign(size_, -1);
    exp_.assign(size_, 0);
    for (int cand = 1; cand < size_; ++cand) {
      int x = 1, order = 0;
      do {
        exp_[order++] = x;
        x = slow_mul(x, cand);
      } while (x != 1);
      if (order == size_ - 1) {
        for (int i = 0; i < size_ - 1; ++i) log_[exp_[i]] = i;
        return;
      }
    }
    fail(errc::invalid_field, "no primitive element found");
  }

  int p_;
  FpPoly mod_;
  int degree_ = 0;
  int size_ = 0;
  std::vector<int> log_, exp_;
};

struct Monomial {
  int coeff;  // element of F_{p^k} in digit encoding
  int ex, ey, ez;
};

/// Plane projective curve F(x, y, z) = 0 with coefficients in F_p[t]/(modulus).
struct PlaneCurve {
  int p = 2;
  FpPoly modulus{0, 1};  // degree k; t itself for the prime field
  std::vector<Monomial> monomials;

  int k() const { return static_cast<int>(modulus.size()) - 1; }
};

/// Exhaustive count of projective zeros of F over the degree-(n k) extension
/// given by `ext_modulus` (an irreducible polynomial over F_p).
inline long count_points(const PlaneCurve& curve, int n, const FpPoly& ext_modulus) {
  require(n >= 1, errc::invalid_argument, "extension degree must be positive");
  require(!curve.monomials.empty(), errc::invalid_argument, "curve has no monomials");
  const int deg = curve.monomials.front().ex + curve.monomials.front().ey + curve.monomials.front().ez;
  for (const auto& m : curve.monomials)
    require(m.ex + m.ey + m.ez == deg && m.ex >= 0 && m.ey >= 0 && m.ez >= 0, errc::invalid_argument,
            "curve polynomial must be homogeneous");
  const FiniteField base(curve.p, curve.modulus);
  FpPoly ext = ext_modulus;
  detail::trim(ext);
  require(static_cast<int>(ext.size()) - 1 == n * curve.k(), errc::invalid_field,
          "extension modulus must have degree n * k");
  require(n * curve.k() <= 8, errc::invalid_argument, "n k must be at most 8");
  const FiniteField big(curve.p, ext);

  // embed F_{p^k}: send t to the smallest root of the base modulus in the big field
  int theta = -1;
  std::vector<int> base_mod_big;
  for (int c : curve.modulus) base_mod_big.push_back(big.prime_element(c));
  for (int x = 0; x < big.size() && theta < 0; ++x)
    if (big.eval(base_mod_big, x) == 0) theta = x;
  require(theta >= 0, errc::invalid_field, "base field does not embed in the extension");
  auto embed = [&](int a) {
    require(a >= 0 && a < base.size(), errc::invalid_argument, "coefficient outside the base field");
    int r = 0, tp = 1;
    for (int i = 0; i < curve.k(); ++i, a /= curve.p) {
      r = big.add(r, big.mul(big.prime_element(a % curve.p), tp));
      tp = big.mul(tp, theta);
    }
    return r;
  };
  std::vector<Monomial> mons;
  for (const auto& m : curve.monomials) mons.push_back({embed(m.coeff), m.ex, m.ey, m.ez});

  auto value = [&](int x, int y, int z) {
    int r = 0;
    for (const auto& m : mons)
      r = big.add(r, big.mul(m.coeff, big.mul(big.pow(x, m.ex), big.mul(big.pow(y, m.ey), big.pow(z, m.ez)))));
    return r;
  };
  long count = 0;
  const int q = big.size();
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      if (value(x, y, 1) == 0) ++count;
  for (int x = 0; x < q; ++x)
    if (value(x, 1, 0) == 0) ++count;
  if (value(1, 0, 0) == 0) ++count;
  return count;
}

/// Counts over F_{q^n} for n = 1 .. max_n, q = p^k, using the first irreducible moduli.
inline std::vector<long> count_points_series(const PlaneCurve& curve, int max_n) {
  std::vector<long> out;
  for (int n = 1; n <= max_n; ++n) {
    const FpPoly ext = n == 1 ? curve.modulus : first_irreducible(curve.p, n * curve.k());
    out.push_back(count_points(curve, n, ext));
  }
  return out;
}

}  // namespace adelic
