#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/quadrature.hpp"
#include "adelic/special.hpp"

namespace adelic {

/// Even Schwartz function eta(x) = sum_j c_j x^{2j} exp(-pi a x^2).
///
/// The family is closed under dilation and under the Fourier transform
/// (convention \hat eta(xi) = int eta(x) e^{-2 pi i x xi} dx), which is what the
/// theta-series construction and the Poisson-summation tail need.
class SchwartzProfile {
 public:
  SchwartzProfile(std::vector<double> even_coeffs, double gaussian_rate = 1.0)
      : c_(std::move(even_coeffs)), a_(gaussian_rate) {
    require(a_ > 0, errc::invalid_argument, "Gaussian rate must be positive");
    require(!c_.empty(), errc::invalid_argument, "empty profile");
    build_fourier();
  }

  /// pi x^2 (pi x^2 - 3/2) exp(-pi x^2): eta(0) = 0, integral 0, self-dual.
  static SchwartzProfile fubini() { return SchwartzProfile({0.0, -1.5 * M_PI, M_PI * M_PI}, 1.0); }

  const std::vector<double>& coeffs() const { return c_; }
  double rate() const { return a_; }

  double operator()(double x) const { return poly(c_, x * x) * std::exp(-M_PI * a_ * x * x); }

  double fourier(double xi) const { return poly(fc_, xi * xi) * std::exp(-M_PI * xi * xi / a_) / std::sqrt(a_); }

  /// eta(x / gamma).
  SchwartzProfile dilated(double gamma) const {
    require(gamma > 0, errc::invalid_argument, "dilation must be positive");
    std::vector<double> c = c_;
    double g2 = 1.0;
    for (auto& cj : c) {
      cj /= g2;
      g2 *= gamma * gamma;
    }
    return SchwartzProfile(std::move(c), a_ / (gamma * gamma));
  }

  /// Radius beyond which |eta| (resp. |eta^|) is below 1e-300 relative to the
  /// coefficient scale.
  double cutoff() const { return cutoff_for(c_, a_); }
  double fourier_cutoff() const { return cutoff_for(fc_, 1.0 / a_); }

  /// int_R eta by adaptive quadrature.
  double integral() const {
    return 2.0 * integrate_gk([this](double x) { return (*this)(x); }, 0.0, cutoff(), {}, 1e-14);
  }

  double max_abs_coeff() const {
    double m = 0;
    for (double c : c_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Membership in S(R)_0: eta(0) = 0 and int eta = 0, both to `tol`.
  bool in_s0(double tol = 1e-10) const {
    const double scale = std::max(1.0, max_abs_coeff());
    return std::abs((*this)(0.0)) <= tol * scale && std::abs(integral()) <= tol * scale;
  }

  void require_s0() const {
    require(in_s0(), errc::precondition_violation, "profile is not in S(R)_0 (needs eta(0) = 0 and zero integral)");
  }

  /// int_0^infty eta(x) x^s dx/x, closed form through Gamma.
  cplx half_line_mellin(cplx s) const {
    cplx total = 0;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0.0) continue;
      const cplx z = 0.5 * (s + 2.0 * static_cast<double>(j));
      total += c_[j] * 0.5 * std::exp(-z * std::log(M_PI * a_) + lgamma(z));
    }
    return total;
  }

 private:
  static double poly(const std::vector<double>& c, double x2) {
    double r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x2 + *it;
    return r;
  }

  static double cutoff_for(const std::vector<double>& c, double a) {
    double scale = 0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    double r = 1.0;
    auto mag = [&](double x) {
      double m = 0, xp = 1;
      for (double v : c) {
        m += std::abs(v) * xp;
        xp *= x * x;
      }
      return m * std::exp(-M_PI * a * x * x);
    };
    while (mag(r) > 1e-300 * std::max(scale, 1e-300) || r * r * a < 1.0) r *= 1.25;
    return r;
  }

  // Fourier coefficients: FT(x^{2j} e^{-pi a x^2}) = a^{-1/2} e^{-pi xi^2/a} (-1)^j (2 pi)^{-2j} Q_{2j}(xi),
  // Q_0 = 1, Q_{n+1} = Q_n' - (2 pi xi / a) Q_n.
  void build_fourier() {
    const std::size_t nmax = 2 * (c_.size() - 1);
    std::vector<std::vector<double>> q(nmax + 1);  // coefficients in xi (full powers)
    q[0] = {1.0};
    for (std::size_t n = 0; n < nmax; ++n) {
      std::vector<double> next(q[n].size() + 1, 0.0);
      for (std::size_t k = 1; k < q[n].size(); ++k) next[k - 1] += static_cast<double>(k) * q[n][k];
      for (std::size_t k = 0; k < q[n].size(); ++k) next[k + 1] -= 2 * M_PI / a_ * q[n][k];
      q[n + 1] = std::move(next);
    }
    std::vector<double> full(nmax + 1, 0.0);
    for (std::size_t j = 0; j < c_.size(); ++j) {
      const double factor = c_[j] * ((j % 2) ? -1.0 : 1.0) * std::pow(2 * M_PI, -2.0 * static_cast<double>(j));
      for (std::size_t k = 0; k < q[2 * j].size(); ++k) full[k] += factor * q[2 * j][k];
    }
    fc_.assign(c_.size(), 0.0);  // even polynomial: keep even powers only
    for (std::size_t k = 0; k < full.size(); k += 2) fc_[k / 2] = full[k];
  }

  std::vector<double> c_;
  double a_;
  std::vector<double> fc_;
};

}  // namespace adelic
