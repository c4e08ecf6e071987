#pragma once

// Finite models of the convolution algebra of the groupoid K* x| X.
//
// A model is a finite base set of points; an element (k, x) of the groupoid has
// source x and range k x. Functions are finitely supported on elements whose
// source and range both lie in the base set, and the convolution
//
//   (f1 * f2)(k, x) = sum_s f1(k s^{-1}, s x) f2(s, x)
//
// is evaluated exactly when the scalar type is exact.

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/number_core.hpp"

namespace adelic {

template <class P>
struct point_traits;

template <>
struct point_traits<SemilocalAdele> {
  static SemilocalAdele scale(const SemilocalAdele& x, const Rational& k) { return x.scaled(k); }
  static bool same(const SemilocalAdele& a, const SemilocalAdele& b) { return a.approx_equal(b); }
  static bool is_zero(const SemilocalAdele& x) { return x.is_zero(); }
};

/// Points given by their rational multiplier r relative to a fixed base point y (x = r y).
template <>
struct point_traits<Rational> {
  static Rational scale(const Rational& x, const Rational& k) { return x * k; }
  static bool same(const Rational& a, const Rational& b) { return a == b; }
  static bool is_zero(const Rational& x) { return x == 0; }
};

template <class P>
struct GroupoidElement {
  Rational k;
  P x;

  P source() const { return x; }
  P range() const { return point_traits<P>::scale(x, k); }
};

/// (k, x) o (k', y) = (k k', y), defined when x = k' y.
template <class P>
GroupoidElement<P> groupoid_compose(const GroupoidElement<P>& a, const GroupoidElement<P>& b) {
  require(a.k != 0 && b.k != 0, errc::invalid_argument, "groupoid elements need k != 0");
  require(point_traits<P>::same(a.source(), b.range()), errc::composition_undefined,
          "source of the left factor differs from range of the right factor");
  return {a.k * b.k, b.x};
}

template <class P>
class BaseSet {
 public:
  explicit BaseSet(std::vector<P> points) : points_(std::move(points)) {}

  std::size_t size() const { return points_.size(); }
  const P& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<P>& points() const { return points_; }

  std::optional<std::size_t> index_of(const P& x) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (point_traits<P>::same(points_[i], x)) return i;
    return std::nullopt;
  }

 private:
  std::vector<P> points_;
};

template <class P, class S>
class FiniteGroupoidFunction {
 public:
  using Base = std::shared_ptr<const BaseSet<P>>;
  using Key = std::pair<Rational, std::size_t>;  // (k, index of source point)

  explicit FiniteGroupoidFunction(Base base) : base_(std::move(base)) {}

  const Base& base() const { return base_; }
  const std::map<Key, S>& entries() const { return entries_; }

  /// Sets f(k, x); both x and k x must lie in the base set.
  void set(const Rational& k, const P& x, const S& value) {
    require(k != 0, errc::invalid_argument, "k must be nonzero");
    auto xi = base_->index_of(x);
    require(xi.has_value(), errc::model_incomplete, "source point outside the base set");
    require(base_->index_of(point_traits<P>::scale(x, k)).has_value(), errc::model_incomplete,
            "range point outside the base set");
    set_indexed(k, *xi, value);
  }

  S operator()(const Rational& k, const P& x) const {
    auto xi = base_->index_of(x);
    if (!xi) return S{};
    auto it = entries_.find({k, *xi});
    return it == entries_.end() ? S{} : it->second;
  }

  S at_index(const Rational& k, std::size_t xi) const {
    auto it = entries_.find({k, xi});
    return it == entries_.end() ? S{} : it->second;
  }

  void set_indexed(const Rational& k, std::size_t xi, const S& value) {
    if (value == S{})
      entries_.erase({k, xi});
    else
      entries_[{k, xi}] = value;
  }

  void add_indexed(const Rational& k, std::size_t xi, const S& value) { set_indexed(k, xi, at_index(k, xi) + value); }

  /// Pointwise map of the values: g(k, x) = fn(k, x, f(k, x)).
  template <class Fn>
  FiniteGroupoidFunction map_values(Fn&& fn) const {
    FiniteGroupoidFunction out(base_);
    for (const auto& [key, v] : entries_) out.set_indexed(key.first, key.second, fn(key.first, (*base_)[key.second], v));
    return out;
  }

  friend FiniteGroupoidFunction operator+(const FiniteGroupoidFunction& a, const FiniteGroupoidFunction& b) {
    require(a.base_ == b.base_, errc::model_incomplete, "functions live on different base sets");
    FiniteGroupoidFunction out = a;
    for (const auto& [key, v] : b.entries_) out.add_indexed(key.first, key.second, v);
    return out;
  }

  friend bool operator==(const FiniteGroupoidFunction& a, const FiniteGroupoidFunction& b) {
    return a.base_ == b.base_ && a.entries_ == b.entries_;
  }

 private:
  Base base_;
  std::map<Key, S> entries_;
};

/// Exact convolution on a common base set.
template <class P, class S>
FiniteGroupoidFunction<P, S> convolve(const FiniteGroupoidFunction<P, S>& f, const FiniteGroupoidFunction<P, S>& g) {
  require(f.base() == g.base(), errc::model_incomplete, "convolution needs a common base set");
  const auto& base = *f.base();
  // f entries grouped by source index
  std::multimap<std::size_t, std::pair<Rational, S>> by_source;
  for (const auto& [key, v] : f.entries()) by_source.emplace(key.second, std::pair{key.first, v});

  FiniteGroupoidFunction<P, S> out(f.base());
  for (const auto& [key, gv] : g.entries()) {
    const auto& [s, xi] = key;
    auto yi = base.index_of(point_traits<P>::scale(base[xi], s));
    require(yi.has_value(), errc::model_incomplete, "base set not closed under a required multiplication");
    auto [lo, hi] = by_source.equal_range(*yi);
    for (auto it = lo; it != hi; ++it) {
      const auto& [kprime, fv] = it->second;
      out.add_indexed(kprime * s, xi, fv * gv);
    }
  }
  return out;
}

/// The function U_k: value 1 on every (k, x) with x, k x in the base set.
template <class P, class S>
FiniteGroupoidFunction<P, S> unitary_shift(const std::shared_ptr<const BaseSet<P>>& base, const Rational& k) {
  FiniteGroupoidFunction<P, S> u(base);
  for (std::size_t i = 0; i < base->size(); ++i)
    if (base->index_of(point_traits<P>::scale((*base)[i], k))) u.set_indexed(k, i, S{1});
  return u;
}

/// A function on the unit space (k = 1) from pointwise values.
template <class P, class S, class Fn>
FiniteGroupoidFunction<P, S> diagonal_function(const std::shared_ptr<const BaseSet<P>>& base, Fn&& values) {
  FiniteGroupoidFunction<P, S> f(base);
  for (std::size_t i = 0; i < base->size(); ++i) f.set_indexed(Rational(1), i, values((*base)[i]));
  return f;
}

/// epsilon_0(sum f_k U_k) = f_1(0).
template <class P, class S>
S epsilon0(const FiniteGroupoidFunction<P, S>& f) {
  const auto& base = *f.base();
  for (std::size_t i = 0; i < base.size(); ++i)
    if (point_traits<P>::is_zero(base[i])) return f.at_index(Rational(1), i);
  fail(errc::model_incomplete, "the zero point is not in the base set");
}

/// A discrete measure on a base set, checked for w(k x) = |k| w(x) along the
/// listed multipliers, where |k| is the model's modulus.
template <class P>
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::shared_ptr<const BaseSet<P>> base, std::vector<std::optional<Rational>> weights,
                  const std::vector<Rational>& multipliers, std::function<Rational(const Rational&)> modulus)
      : base_(std::move(base)), weights_(std::move(weights)) {
    require(weights_.size() == base_->size(), errc::invalid_measure, "one weight per base point required");
    for (std::size_t i = 0; i < weights_.size(); ++i)
      require(weights_[i].has_value(), errc::invalid_measure, "missing weight at base point " + std::to_string(i));
    for (const auto& k : multipliers) {
      for (std::size_t i = 0; i < base_->size(); ++i) {
        auto j = base_->index_of(point_traits<P>::scale((*base_)[i], k));
        if (!j) continue;
        require(*weights_[*j] == modulus(k) * *weights_[i], errc::invalid_measure,
                "weights are not invariant under multiplication by " + to_string(k));
      }
    }
  }

  const std::shared_ptr<const BaseSet<P>>& base() const { return base_; }
  const Rational& weight(std::size_t i) const { return *weights_[i]; }

 private:
  std::shared_ptr<const BaseSet<P>> base_;
  std::vector<std::optional<Rational>> weights_;
};

/// epsilon_1(sum f_k U_k) = sum_x f_1(x) w(x).
template <class P, class S>
S epsilon1(const FiniteGroupoidFunction<P, S>& f, const DiscreteMeasure<P>& mu) {
  require(f.base() == mu.base(), errc::invalid_measure, "measure lives on a different base set");
  S total{};
  for (const auto& [key, v] : f.entries())
    if (key.first == 1) total = total + v * S(mu.weight(key.second));
  return total;
}

}  // namespace adelic
