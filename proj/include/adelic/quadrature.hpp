#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "adelic/error.hpp"

namespace adelic {

using cplx = std::complex<double>;

/// Neumaier-compensated accumulator; summation order is the call order.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if constexpr (std::is_same_v<T, double>) {
      if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
      else
        comp_ += (x - t) + sum_;
    } else {
      // componentwise for complex values
      comp_ += T(fix(sum_.real(), x.real(), t.real()), fix(sum_.imag(), x.imag(), t.imag()));
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  static double fix(double s, double x, double t) {
    return std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
  }
  T sum_{};
  T comp_{};
};

struct QuadResult {
  cplx value;
  double error = 0;
  std::size_t evaluations = 0;
  int levels = 0;
};

/// Trapezoid rule with interval halving until two successive levels agree.
///
/// Spectrally convergent for integrands that are C-infinity and flat at both
/// ends (compactly supported bumps, double-exponentially decaying tails), which
/// is the setting for every log-coordinate Mellin integral here. The integrand
/// is H(x) * exp(s x); the exponential is advanced by complex rotation, reseeded
/// every 64 nodes, so each node costs one evaluation of H.
template <class H>
QuadResult trapezoid_mellin(H&& h, double a, double b, cplx s, double abs_tol = 1e-11,
                            double rel_tol = 1e-13, int max_levels = 14) {
  QuadResult r;
  if (!(b > a)) return r;
  const double width = b - a;
  const double osc = std::abs(s.imag()) * width / (2 * M_PI);
  std::size_t n = 16;
  while (n < 4 * osc + 16) n *= 2;

  auto sweep = [&](double start, double step, std::size_t count) {
    // sum_{i<count} H(start + i step) e^{s (start + i step)}
    CompensatedSum<cplx> acc;
    const cplx rot = std::exp(s * step);
    cplx e{};
    for (std::size_t i = 0; i < count; ++i) {
      const double x = start + static_cast<double>(i) * step;
      if (i % 64 == 0)
        e = std::exp(s * x);
      else
        e *= rot;
      const auto hv = h(x);
      if (hv != decltype(hv){}) acc.add(cplx(hv) * e);
    }
    r.evaluations += count;
    return acc.value();
  };

  double step = width / static_cast<double>(n);
  cplx sum = sweep(a, step, n + 1) - 0.5 * (cplx(h(a)) * std::exp(s * a) + cplx(h(b)) * std::exp(s * b));
  cplx estimate = sum * step;
  for (int level = 1; level <= max_levels; ++level) {
    sum += sweep(a + 0.5 * step, step, n);
    n *= 2;
    step *= 0.5;
    const cplx next = sum * step;
    const double diff = std::abs(next - estimate);
    estimate = next;
    r.levels = level;
    r.error = diff;
    if (diff <= std::max(abs_tol, rel_tol * std::abs(next))) {
      r.value = estimate;
      return r;
    }
  }
  fail(errc::numerical_failure, "trapezoid refinement did not converge");
}

/// Globally adaptive Gauss-Kronrod (21 point) over [a,b], split at the given breakpoints
/// and into pieces of at most `max_piece` length. The piece with the largest error
/// estimate is bisected until the summed error is below rel_tol times the L1 norm
/// (or below abs_tol).
template <class F>
double integrate_gk(F&& f, double a, double b, std::vector<double> breaks = {}, double rel_tol = 1e-13,
                    double max_piece = std::numeric_limits<double>::infinity(), double* error_out = nullptr,
                    double abs_tol = 0.0) {
  if (!(b > a)) return 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  struct Piece {
    double lo, hi, value, error, l1;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  auto estimate = [&](double x0, double x1) {
    double err = 0, l1 = 0;
    const double v = GK::integrate(f, x0, x1, 0, 0.0, &err, &l1);
    if (!std::isfinite(v) || !std::isfinite(err)) fail(errc::numerical_failure, "non-finite quadrature value");
    return Piece{x0, x1, v, err, l1};
  };
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> pts;
  for (double x : breaks)
    if (x >= a && x <= b && (pts.empty() || x > pts.back())) pts.push_back(x);
  std::vector<Piece> heap;
  double err_sum = 0, l1_sum = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], hi = pts[i + 1];
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / max_piece)));
    for (std::size_t j = 0; j < pieces; ++j) {
      const double x0 = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(pieces);
      const double x1 = j + 1 == pieces ? hi : lo + (hi - lo) * static_cast<double>(j + 1) / static_cast<double>(pieces);
      heap.push_back(estimate(x0, x1));
      err_sum += heap.back().error;
      l1_sum += heap.back().l1;
    }
  }
  std::make_heap(heap.begin(), heap.end());
  constexpr std::size_t max_pieces = 4000;
  while (err_sum > std::max({rel_tol * l1_sum, abs_tol, std::numeric_limits<double>::min()}) && heap.size() < max_pieces) {
    std::pop_heap(heap.begin(), heap.end());
    const Piece worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    for (const Piece& half : {estimate(worst.lo, mid), estimate(mid, worst.hi)}) {
      heap.push_back(half);
      std::push_heap(heap.begin(), heap.end());
    }
    err_sum = 0;
    l1_sum = 0;
    for (const auto& pc : heap) {
      err_sum += pc.error;
      l1_sum += pc.l1;
    }
  }
  std::sort(heap.begin(), heap.end(), [](const Piece& l, const Piece& r) { return l.lo < r.lo; });
  CompensatedSum<double> total;
  for (const auto& pc : heap) total.add(pc.value);
  if (error_out) *error_out = err_sum;
  return total.value();
}

/// Complex-valued variant: real and imaginary parts integrated separately.
template <class F>
cplx integrate_gk_complex(F&& f, double a, double b, std::vector<double> breaks = {}, double rel_tol = 1e-13,
                          double max_piece = std::numeric_limits<double>::infinity(), double abs_tol = 0.0) {
  const double re = integrate_gk([&](double x) { return f(x).real(); }, a, b, breaks, rel_tol, max_piece, nullptr, abs_tol);
  const double im = integrate_gk([&](double x) { return f(x).imag(); }, a, b, breaks, rel_tol, max_piece, nullptr, abs_tol);
  return {re, im};
}

}  // namespace adelic
