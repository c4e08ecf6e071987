#pragma once

// Theta series of S(R)_0 profiles and their Mellin transforms, degree
// adjustment by such series, the Weil pairing <f, f#> in spectral and
// geometric form, and the positivity / RH-estimate checks.

#include <cmath>
#include <complex>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/quadrature.hpp"
#include "adelic/schwartz_profile.hpp"
#include "adelic/special.hpp"
#include "adelic/test_function.hpp"
#include "adelic/trace_formula.hpp"

namespace adelic {

inline TestFunction theta_series(const SchwartzProfile& eta) { return TestFunction::theta(eta); }

enum class ThetaMethod { Quadrature, ClosedForm };

/// int theta(lambda) lambda^s d*lambda, either by quadrature or as zeta(s) * tilde eta(s)
/// (tilde eta the half-line Mellin transform); s = 1 and s = 0 are taken as symmetric limits.
inline cplx theta_mellin(const SchwartzProfile& eta, cplx s, ThetaMethod method = ThetaMethod::Quadrature) {
  eta.require_s0();
  if (method == ThetaMethod::Quadrature) return theta_series(eta).mellin(s);
  auto closed = [&](cplx z) { return zeta(z) * eta.half_line_mellin(z); };
  const bool at_one = std::abs(s - 1.0) < 1e-300;
  const bool at_zero = std::abs(s) < 1e-300;
  if (!at_one && !at_zero) return closed(s);
  // Richardson on symmetric differences: g(h) = (F(s + h) + F(s - h)) / 2 = F(s) + O(h^2)
  const auto sym = [&](double h) { return 0.5 * (closed(s + h) + closed(s - h)); };
  const double h = 1e-3;
  const cplx g1 = sym(h), g2 = sym(h / 2), g3 = sym(h / 4);
  const cplx r1 = (4.0 * g2 - g1) / 3.0, r2 = (4.0 * g3 - g2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

/// Scale used for relative statements about theta_mellin: int |theta| d*lambda.
inline double theta_scale(const SchwartzProfile& eta) {
  const auto th = theta_series(eta);
  const auto [lo, hi] = th.log_support();
  return integrate_gk([&](double x) { return std::abs(th.at_log(x).real()); }, lo, hi, {}, 1e-10);
}

struct DegreeAdjustment {
  TestFunction function;
  double c = 0;            // multiple of theta(eta_0) added
  double theta_hat1 = 0;   // measured hat theta(1)
  double theta_hat0 = 0;   // measured hat theta(0)
};

/// f + c theta(eta_0) with degree equal to `target`.
inline DegreeAdjustment adjust_degree(const TestFunction& f, double target) {
  const auto eta = SchwartzProfile::fubini();
  const auto th = theta_series(eta);
  const double t1 = th.mellin(1.0).real();
  const double t0 = th.mellin(0.0).real();
  require(std::abs(t1) > 1e-12, errc::precondition_violation, "theta series has zero degree");
  const double c = (target - degree(f)) / t1;
  return {f + cplx(c) * th, c, t1, t0};
}

/// Per-term integrals int_0^inf eta(n lambda) d lambda, n = 1 .. count.
inline std::vector<double> fubini_term_integrals(const SchwartzProfile& eta, int count) {
  std::vector<double> out;
  for (int n = 1; n <= count; ++n) {
    const double cut = eta.cutoff() / n;
    out.push_back(integrate_gk([&](double x) { return eta(n * x); }, 0.0, cut, {}, 1e-14));
  }
  return out;
}

enum class PairingMode { Spectral, Geometric };

/// <f, f#> = trace of f * f# on the zeros: spectrally sum |hat f(1/2 + i g)|^2 + |hat f(1/2 - i g)|^2,
/// geometrically the geometric side of f * f#.
inline double weil_pairing(const TestFunction& f, PairingMode mode, const ExplicitContext& ctx) {
  if (mode == PairingMode::Spectral) {
    require(ctx.zeros != nullptr, errc::input_error, "no zero table supplied");
    require(ctx.num_zeros <= ctx.zeros->size(), errc::invalid_argument, "requested more zeros than the table holds");
    CompensatedSum<double> acc;
    if (ctx.num_zeros == 0) return 0.0;
    if (f.is_real() && f.kind() != TestFunction::Kind::ThetaSeries) {
      // |hat f(conj s)| = |hat f(s)| for real f
      const detail::MellinCache cache(f, ctx.zeros->gammas[ctx.num_zeros - 1]);
      for (std::size_t j = 0; j < ctx.num_zeros; ++j) acc.add(2.0 * std::norm(cache(cplx(0.5, ctx.zeros->gammas[j]))));
      return acc.value();
    }
    for (std::size_t j = 0; j < ctx.num_zeros; ++j) {
      const cplx rho(0.5, ctx.zeros->gammas[j]);
      acc.add(std::norm(f.mellin(rho)));
      acc.add(std::norm(f.mellin(std::conj(rho))));
    }
    return acc.value();
  }
  return geometric_side(convolve_mult(f, sharp(f)), ctx).geometric_side();
}

/// Both modes for <f, g#> with f != g (bilinear form, spectral side only).
inline cplx weil_pairing(const TestFunction& f, const TestFunction& g, const ExplicitContext& ctx) {
  require(ctx.zeros != nullptr, errc::input_error, "no zero table supplied");
  CompensatedSum<cplx> acc;
  for (std::size_t j = 0; j < ctx.num_zeros; ++j) {
    const cplx rho(0.5, ctx.zeros->gammas[j]);
    acc.add(f.mellin(rho) * std::conj(g.mellin(rho)));
    acc.add(f.mellin(std::conj(rho)) * std::conj(g.mellin(std::conj(rho))));
  }
  return acc.value();
}

struct PositivityResult {
  double value = 0;
  bool nonnegative = false;
};

inline PositivityResult positivity_check(const TestFunction& f, const ExplicitContext& ctx,
                                         PairingMode mode = PairingMode::Spectral, double tol = 1e-12) {
  const double v = weil_pairing(f, mode, ctx);
  return {v, v >= -tol};
}

struct RhEstimate {
  double lhs = 0;     // transverse term: sum of local terms on f * f#
  double rhs = 0;     // hat F(0) + hat F(1) - discLog F(1)
  double margin = 0;  // rhs - lhs, the pairing <f, f#>
  bool holds = false;
};

/// Z(f).Z(f) <= 2 d(f) d'(f) - discLog (f * f#)(1), with F = f * f#.
inline RhEstimate rh_estimate_check(const TestFunction& f, const ExplicitContext& ctx, double tol = 1e-9) {
  const auto F = convolve_mult(f, sharp(f));
  const auto r = geometric_side(F, ctx);
  RhEstimate e;
  e.lhs = r.prime_sum() + r.geom_archimedean;
  e.rhs = r.h_hat0 + r.h_hat1 - r.discriminant_term;
  e.margin = e.rhs - e.lhs;
  e.holds = e.lhs <= e.rhs + tol;
  return e;
}

}  // namespace adelic
