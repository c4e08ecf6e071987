#pragma once

// The two sides of the explicit formula for a test function h on the positive
// reals (trivial character, K = Q):
//
//   sum_rho hat h(rho) = hat h(0) + hat h(1) - discLog h(1) - sum_p L_p(h) - W_inf(h)
//
// with L_p(h) = log p sum_{k >= 1} [h(p^k) + p^{-k} h(p^{-k})] and the
// archimedean term taken with respect to d*u = du / (2|u|) on R*.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/number_core.hpp"
#include "adelic/quadrature.hpp"
#include "adelic/test_function.hpp"
#include "adelic/zeros.hpp"

namespace adelic {

struct ExplicitContext {
  const ZeroTable* zeros = nullptr;
  std::size_t num_zeros = 0;
  std::uint64_t prime_cutoff = 0;  // 0: derived from the support
  double disc_log = 0.0;
  std::optional<double> c_inf{};  // archimedean constant, from calibration
};

struct SpectralResult {
  double value = 0;
  double imag = 0;
  double tail_estimate = 0;
  std::vector<double> partial_sums;  // after each zero
};

namespace detail {

/// Trapezoid sums of H(x) e^{s x} over a cached fine grid, with the half-density
/// grid as error estimate; falls back to adaptive refinement if they disagree.
class MellinCache {
 public:
  MellinCache(const TestFunction& h, double gamma_max) : h_(h) {
    std::tie(lo_, hi_) = h.log_support();
    const double osc = gamma_max * (hi_ - lo_) / (2 * M_PI);
    std::size_t n = 64;
    while (n < 8 * osc + 64) n *= 2;
    step_ = (hi_ - lo_) / static_cast<double>(n);
    values_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values_[i] = h.at_log(lo_ + step_ * static_cast<double>(i)).real();
  }

  cplx operator()(cplx s, double abs_tol = 1e-12) const {
    const std::size_t n = values_.size() - 1;
    CompensatedSum<cplx> fine, coarse;
    const cplx rot = std::exp(s * step_);
    cplx e{};
    for (std::size_t i = 0; i <= n; ++i) {
      if (i % 64 == 0)
        e = std::exp(s * (lo_ + step_ * static_cast<double>(i)));
      else
        e *= rot;
      const double w = (i == 0 || i == n) ? 0.5 : 1.0;
      const cplx t = w * values_[i] * e;
      fine.add(t);
      if (i % 2 == 0) coarse.add(t);
    }
    const cplx vf = fine.value() * step_;
    const cplx vc = coarse.value() * (2 * step_);
    if (std::abs(vf - vc) <= std::max(abs_tol, 1e-13 * std::abs(vf))) return vf;
    return h_.mellin(s);
  }

 private:
  TestFunction h_;
  double lo_ = 0, hi_ = 0, step_ = 0;
  std::vector<double> values_;
};

/// Least-squares fit of log|term| = a + b gamma over the last decade of summed
/// zeros, integrated against the zero density (1/2pi) log(gamma/2pi) beyond gamma_N.
inline double spectral_tail(const std::vector<double>& gammas, const std::vector<double>& terms) {
  const std::size_t N = terms.size();
  if (N < 10) return terms.empty() ? 0.0 : std::abs(terms.back());
  const std::size_t start = N - std::max<std::size_t>(N / 10, 10);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  for (std::size_t i = start; i < N; ++i) {
    const double a = std::abs(terms[i]);
    if (a <= 0) continue;
    const double y = std::log(a);
    sx += gammas[i];
    sy += y;
    sxx += gammas[i] * gammas[i];
    sxy += gammas[i] * y;
    cnt += 1;
  }
  if (cnt < 2) return 0.0;
  const double den = cnt * sxx - sx * sx;
  const double b = den != 0 ? (cnt * sxy - sx * sy) / den : 0.0;
  const double a = (sy - b * sx) / cnt;
  const double g = gammas[N - 1];
  const double density = std::log(g / (2 * M_PI)) / (2 * M_PI);
  if (b >= 0) return std::exp(a + b * g) * density * g;  // no decay detected: crude bound
  return std::exp(a + b * g) * density / (-b);
}

}  // namespace detail

/// sum_{j <= N} [hat h(1/2 + i gamma_j) + hat h(1/2 - i gamma_j)].
inline SpectralResult spectral_side(const TestFunction& h, const ZeroTable& zeros, std::size_t N) {
  require(N <= zeros.size(), errc::invalid_argument, "requested more zeros than the table holds");
  SpectralResult r;
  if (N == 0) return r;
  std::vector<double> terms;
  terms.reserve(N);
  CompensatedSum<cplx> acc;
  const bool real = h.is_real() && h.kind() != TestFunction::Kind::ThetaSeries;
  std::optional<detail::MellinCache> cache;
  if (real) cache.emplace(h, zeros.gammas[N - 1]);
  for (std::size_t j = 0; j < N; ++j) {
    const cplx rho(0.5, zeros.gammas[j]);
    cplx term;
    if (real) {
      // hat h(conj s) = conj hat h(s) for real h
      term = 2.0 * (*cache)(rho).real();
    } else {
      term = h.mellin(rho) + h.mellin(std::conj(rho));
    }
    acc.add(term);
    terms.push_back(std::abs(term));
    r.partial_sums.push_back(acc.value().real());
  }
  r.value = acc.value().real();
  r.imag = acc.value().imag();
  require(!h.is_real() || std::abs(r.imag) <= 1e-10, errc::numerical_failure,
          "spectral side of a real test function has an imaginary part");
  r.tail_estimate = detail::spectral_tail(std::vector<double>(zeros.gammas.begin(), zeros.gammas.begin() + N), terms);
  return r;
}

/// Prime powers p^k <= bound with log p, ascending.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> prime_powers_up_to(std::uint64_t bound) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;  // (p^k, p)
  PrimeTable table(std::max<std::uint64_t>(bound, 2));
  for (auto p : table.primes())
    for (std::uint64_t pk = p; pk <= bound; pk *= p) out.emplace_back(pk, p);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t default_prime_cutoff(const TestFunction& h) {
  const auto [lo, hi] = h.log_support();
  return static_cast<std::uint64_t>(std::ceil(std::exp(std::max(std::abs(lo), std::abs(hi))))) + 1;
}

/// L_p(h) for every prime p below the cutoff with a nonzero contribution.
inline std::map<std::uint64_t, double> finite_place_terms(const TestFunction& h, std::uint64_t cutoff) {
  const auto [lo, hi] = h.log_support();
  const double L = std::log(static_cast<double>(cutoff));
  require(lo > -L && hi < L, errc::precondition_violation,
          "support is not inside (1/B, B) for the prime cutoff B = " + std::to_string(cutoff));
  std::map<std::uint64_t, CompensatedSum<double>> acc;
  for (const auto& [pk, p] : prime_powers_up_to(cutoff)) {
    const double x = std::log(static_cast<double>(pk));
    const double v = h.at_log(x).real() + h.at_log(-x).real() / static_cast<double>(pk);
    if (v != 0.0) acc[p].add(std::log(static_cast<double>(p)) * v);
  }
  std::map<std::uint64_t, double> out;
  for (auto& [p, s] : acc) out[p] = s.value();
  return out;
}

struct ArchimedeanTerm {
  double value = 0;
  bool singular = false;  // h(1) != 0, constant c_inf used
};

/// W_inf(h) = int_{R*} h(|u|^{-1}) / |1 - u| d*u, d*u = du / (2|u|), regularized at u = 1:
/// lim [ ... over |1 - u| > eps ... + h(1) log eps ] + c_inf h(1).
inline ArchimedeanTerm archimedean_term(const TestFunction& h, std::optional<double> c_inf) {
  auto [lo, hi] = h.log_support();
  auto H = [&](double y) { return h.at_log(y).real(); };
  const auto br = h.breakpoints();
  const double H0 = H(0.0);
  const bool touches_one = lo < 0.0 && hi > 0.0;
  // part from negative u: 1 / (1 + e^{-y})
  const double E = integrate_gk([&](double y) { return H(y) / (1.0 + std::exp(-y)); }, lo, hi, br);
  if (!touches_one) {
    const double P = integrate_gk([&](double y) { return H(y) / std::abs(std::expm1(-y)); }, lo, hi, br);
    return {0.5 * (P + E), false};
  }
  require(H0 == 0.0 || c_inf.has_value(), errc::needs_calibration,
          "support reaches u = 1; the regularized archimedean term needs the calibrated constant");
  const double ln2 = std::log(2.0);
  const double top = std::max(hi, 1.0);
  // y < 0: |1 - e^{-y}| = e^{-y} - 1; subtract H(0) e^{-y} on (-log 2, 0)
  const double A = integrate_gk(
      [&](double y) { return (H(y) - H0 * std::exp(-y)) / std::expm1(-y); }, -ln2, 0.0, br);
  const double B = integrate_gk(
      [&](double y) { return (H(y) - H0 * std::exp(-y)) / (-std::expm1(-y)); }, 0.0, top, br);
  const double C = H0 * std::log1p(-std::exp(-top));
  const double D = lo < -ln2 ? integrate_gk([&](double y) { return H(y) / std::expm1(-y); }, lo, -ln2, br) : 0.0;
  if (H0 == 0.0) return {0.5 * (A + B + C + D + E), false};
  return {0.5 * (A + B + C + D + E) + *c_inf * H0, true};
}

struct FormulaReport {
  double spectral_side = 0;
  double spectral_tail = 0;
  double geom_archimedean = 0;
  std::map<std::uint64_t, double> geom_per_prime;
  double h_hat0 = 0;
  double h_hat1 = 0;
  double discriminant_term = 0;  // discLog * h(1)
  bool used_calibration = false;
  std::size_t num_zeros = 0;
  std::uint64_t prime_cutoff = 0;

  double prime_sum() const {
    CompensatedSum<double> s;
    for (const auto& [p, v] : geom_per_prime) s.add(v);
    return s.value();
  }
  double geometric_side() const {
    return h_hat0 + h_hat1 - discriminant_term - prime_sum() - geom_archimedean;
  }
  double discrepancy() const { return std::abs(spectral_side - geometric_side()); }
};

/// Geometric side only (spectral fields left at zero).
inline FormulaReport geometric_side(const TestFunction& h, const ExplicitContext& ctx) {
  FormulaReport r;
  r.prime_cutoff = ctx.prime_cutoff ? ctx.prime_cutoff : default_prime_cutoff(h);
  r.h_hat0 = h.mellin(0.0).real();
  r.h_hat1 = h.mellin(1.0).real();
  r.discriminant_term = ctx.disc_log * h.at_log(0.0).real();
  r.geom_per_prime = finite_place_terms(h, r.prime_cutoff);
  const auto w = archimedean_term(h, ctx.c_inf);
  r.geom_archimedean = w.value;
  r.used_calibration = w.singular;
  return r;
}

inline FormulaReport explicit_formula_report(const TestFunction& h, const ExplicitContext& ctx) {
  require(ctx.zeros != nullptr, errc::input_error, "no zero table supplied");
  FormulaReport r = geometric_side(h, ctx);
  const auto s = spectral_side(h, *ctx.zeros, ctx.num_zeros);
  r.spectral_side = s.value;
  r.spectral_tail = s.tail_estimate;
  r.num_zeros = ctx.num_zeros;
  return r;
}

/// Discrepancy after each N in `sizes`, from one pass over the zeros.
inline std::vector<std::pair<std::size_t, double>> convergence_table(const TestFunction& h, const ExplicitContext& ctx,
                                                                     const std::vector<std::size_t>& sizes) {
  require(ctx.zeros != nullptr, errc::input_error, "no zero table supplied");
  std::size_t nmax = 0;
  for (auto n : sizes) nmax = std::max(nmax, n);
  const auto geo = geometric_side(h, ctx).geometric_side();
  const auto s = spectral_side(h, *ctx.zeros, nmax);
  std::vector<std::pair<std::size_t, double>> out;
  for (auto n : sizes) out.emplace_back(n, std::abs((n ? s.partial_sums[n - 1] : 0.0) - geo));
  return out;
}

/// Solves spectral = geometric for the archimedean constant using a reference
/// function with h(1) != 0.
inline double calibrate_c_inf(const TestFunction& reference, const ExplicitContext& ctx) {
  require(ctx.zeros != nullptr, errc::input_error, "no zero table supplied");
  const double H0 = reference.at_log(0.0).real();
  require(H0 != 0.0, errc::invalid_argument, "calibration needs a reference function with h(1) != 0");
  ExplicitContext c = ctx;
  c.c_inf = 0.0;
  const auto r = explicit_formula_report(reference, c);
  // geometric(c) = geometric(0) - c H0
  return (r.geometric_side() - r.spectral_side) / H0;
}

}  // namespace adelic
