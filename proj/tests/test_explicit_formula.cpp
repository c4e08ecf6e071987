#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "adelic/pairing.hpp"
#include "adelic/trace_formula.hpp"
#include "support/oracles.hpp"

using namespace adelic;

namespace {

const ZeroTable& zeros() {
  static const ZeroTable t = load_zeros(std::string(ADELIC_DATA_DIR) + "/zeta_zeros_10k.txt");
  return t;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// c_inf from a reference bump over u = 1, computed once per run
double calibrated() {
  static const double c = [] {
    ExplicitContext ctx{.zeros = &zeros(), .num_zeros = 10000};
    return calibrate_c_inf(TestFunction::bump(0.0, 1.0), ctx);
  }();
  return c;
}

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return errc::invalid_argument;
}

}  // namespace

TEST(Special, ZetaAgainstFrozenValues) {
  for (const auto& v : oracle::zeta_values) {
    const cplx s(v.re_s, v.im_s), ref(v.re, v.im);
    EXPECT_LE(rel(zeta(s), ref), 1e-10) << s;
  }
  EXPECT_NEAR(zeta(2.0).real(), M_PI * M_PI / 6, 1e-12);
  EXPECT_NEAR(zeta(-1.0).real(), -1.0 / 12, 1e-12);
  EXPECT_EQ(code_of([] { zeta(1.0); }), errc::pole);
  EXPECT_TRUE(zeta_checked(cplx(0.5, 150.0)).reduced_precision);
  EXPECT_FALSE(zeta_checked(cplx(0.5, 50.0)).reduced_precision);
}

TEST(Special, LogGammaAgainstFrozenValues) {
  for (const auto& v : oracle::lgamma_values) {
    const cplx z(v.re_s, v.im_s);
    const cplx got = lgamma(z);
    EXPECT_NEAR(got.real(), v.re, 1e-12 * std::max(1.0, std::abs(v.re))) << z;
    // branches may differ by multiples of 2 pi i
    const double k = std::round((got.imag() - v.im) / (2 * M_PI));
    EXPECT_NEAR(got.imag() - 2 * M_PI * k, v.im, 1e-11 * std::max(1.0, std::abs(v.im))) << z;
  }
  EXPECT_NEAR(adelic::gamma(cplx(5.0)).real(), 24.0, 1e-12);
  EXPECT_NEAR(adelic::gamma(cplx(0.5)).real(), std::sqrt(M_PI), 1e-14);
}

TEST(Special, HardyAndComplete) {
  for (const auto& v : oracle::hardy_values) {
    EXPECT_NEAR(hardy_z(v.t), v.z, 1e-10) << v.t;
    EXPECT_NEAR(riemann_siegel_theta(v.t), v.theta, 1e-10) << v.t;
  }
  const auto& c = oracle::complete_zeta_value;
  EXPECT_LE(rel(complete_zeta(cplx(c.re_s, c.im_s)), cplx(c.re, c.im)), 1e-10);
  const cplx s(0.3, 2.0);
  EXPECT_LE(rel(complete_zeta(s), complete_zeta(1.0 - s)), 1e-9);
  EXPECT_EQ(code_of([] { complete_zeta(0.0); }), errc::pole);
  EXPECT_EQ(code_of([] { complete_zeta(1.0); }), errc::pole);
  // (s(s-1)/8) zeta*(s) -> 1/8 at s = 1
  for (double h : {1e-4, 1e-6}) {
    const cplx z = 1.0 + h;
    EXPECT_NEAR((z * (z - 1.0) / 8.0 * complete_zeta(z)).real(), 0.125, 1e-3 * h / 1e-4 + 1e-8);
  }
}

TEST(Zeros, ParserErrorsCarryLineNumbers) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_zeros(in, "t");
  };
  EXPECT_EQ(parse("# header\n14.1\n\n21.0  # c\n").size(), 2u);
  auto message = [&](const std::string& text) {
    try {
      parse(text);
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::input_error);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("").find("no zeros"), std::string::npos);
  EXPECT_NE(message("14.1\n25.0\n21.0\n").find("t:3"), std::string::npos);
  EXPECT_NE(message("14.1\nabc\n").find("t:2"), std::string::npos);
  EXPECT_NE(message("-3\n").find("t:1"), std::string::npos);
  EXPECT_NE(message("14.1 21.0\n").find("t:1"), std::string::npos);
  EXPECT_EQ(code_of([] { load_zeros("/nonexistent/zeros.txt"); }), errc::input_error);
}

TEST(Zeros, StandardTableAndSpotCheck) {
  const auto& t = zeros();
  ASSERT_EQ(t.size(), 10000u);
  EXPECT_NEAR(t.gammas[0], 14.134725, 1e-6);
  const auto sc = spot_check(t);
  EXPECT_TRUE(sc.ok);
  EXPECT_EQ(sc.checked, 29u);
  EXPECT_EQ(sc.grid_sign_changes, 29u);
}

TEST(Mellin, ClosedFormsAndDirectQuadrature) {
  EXPECT_NEAR(mellin(TestFunction::indicator(2, 8), 0.0).real(), std::log(4.0), 1e-14);
  EXPECT_NEAR(mellin(TestFunction::indicator(1, M_E), 1.0).real(), M_E - 1, 1e-14);
  EXPECT_NEAR(degree(TestFunction::indicator(1, M_E)), M_E - 1, 1e-14);
  EXPECT_NEAR(codegree(TestFunction::indicator(1, M_E)), 1.0, 1e-14);
  const auto b = TestFunction::bump(std::log(4.0), std::log(2.0));
  for (cplx s : {cplx(0.5, 50.0), cplx(0.0), cplx(1.0), cplx(0.5, 14.1347), cplx(0.5, -300.0), cplx(2.0, 7.0)}) {
    const auto a = mellin(b, s), d = mellin_direct(b, s, 1e-13);
    EXPECT_LE(std::abs(a - d), 1e-11) << s;
  }
  const auto g = regrid(b, std::log(2.0), 0.01, 140);
  for (cplx s : {cplx(0.5, 3.0), cplx(1.0)})
    EXPECT_LE(std::abs(mellin(g, s) - mellin_direct(g, s)), 1e-4 * std::abs(mellin(g, s))) << s;
}

TEST(Mellin, ConvolutionHomomorphism) {
  const auto f = TestFunction::bump(0.4, 0.3), g = TestFunction::bump(0.9, 0.5, 2.0);
  const auto fg = convolve_mult(f, g);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> t(-60.0, 60.0);
  for (int i = 0; i < 20; ++i) {
    const cplx s(0.5, t(rng));
    const cplx prod = mellin(f, s) * mellin(g, s);
    EXPECT_LE(std::abs(mellin_direct(fg, s, 1e-10) - prod), 1e-8 * (1 + std::abs(prod))) << s;
  }
  const auto a = regrid(f, 0.1, 0.01, 61), c = regrid(g, 0.4, 0.01, 101);
  const auto ac = convolve_mult(a, c);
  EXPECT_LE(std::abs(mellin(ac, cplx(0.5, 4.0)) - mellin(a, cplx(0.5, 4.0)) * mellin(c, cplx(0.5, 4.0))), 1e-12);
  EXPECT_EQ(code_of([&] { convolve_mult(a, regrid(g, 0.4, 0.02, 51)); }), errc::regrid_required);
  EXPECT_EQ(code_of([&] { convolve_mult(a, g); }), errc::regrid_required);
}

TEST(Mellin, InvolutionsAndGrading) {
  const auto f = TestFunction::bump(0.7, 0.4, 1.5) + cplx(0.0, 0.5) * TestFunction::bump(0.2, 0.3);
  for (double t : {0.0, 3.0, 14.1347, -27.5}) {
    const cplx s(0.5, t);
    EXPECT_LE(std::abs(mellin_direct(sharp(f), s) - std::conj(mellin(f, s))), 1e-9) << t;
    EXPECT_LE(std::abs(mellin(sharp(f), s) - std::conj(mellin(f, s))), 1e-9) << t;
  }
  // f*(u) = conj f(1/u), f#(u) = u^{-1} conj f(1/u)
  for (double x : {-0.9, -0.5, -0.25}) {
    EXPECT_LE(std::abs(star(f).at_log(x) - std::conj(f.at_log(-x))), 1e-15);
    EXPECT_LE(std::abs(sharp(f).at_log(x) - std::exp(-x) * std::conj(f.at_log(-x))), 1e-15);
  }
  const auto h = TestFunction::bump(-0.2, 0.6);
  const cplx z(0.3, 1.1);
  const auto lhs = delta_power(convolve_mult(f, h), z), rhs = convolve_mult(delta_power(f, z), delta_power(h, z));
  for (double x : {-0.3, 0.2, 0.5, 0.9, 1.3})
    EXPECT_LE(std::abs(lhs.at_log(x) - rhs.at_log(x)), 1e-12 * std::max(1.0, std::abs(lhs.at_log(x)))) << x;
}

TEST(Degree, PointMassSurrogate) {
  for (double g0 : {2.0, 0.5, 7.0}) {
    const auto f = TestFunction::unit_mass_bump(std::log(g0), 1e-3);
    EXPECT_NEAR(degree(f), g0, 1e-6 * g0);
    EXPECT_NEAR(codegree(f), 1.0, 1e-12);
  }
  const auto th = theta_series(SchwartzProfile::fubini());
  const auto f = TestFunction::bump(0.3, 0.2);
  EXPECT_NEAR(degree(f + cplx(3.0) * th), degree(f) + 3.0 * degree(th), 1e-12);
}

TEST(Spectral, BasicProperties) {
  const auto h = TestFunction::bump(std::log(4.0), std::log(2.0));
  EXPECT_EQ(spectral_side(h, zeros(), 0).value, 0.0);
  const auto s = spectral_side(h, zeros(), 200);
  EXPECT_LE(std::abs(s.imag), 1e-10);
  ASSERT_EQ(s.partial_sums.size(), 200u);
  // complex (non-real) function: the direct sum over both halves
  const auto c = cplx(0.0, 1.0) * h;
  EXPECT_NEAR(spectral_side(c, zeros(), 200).imag, s.value, 1e-10);
  const auto th = theta_series(SchwartzProfile::fubini());
  const auto st = spectral_side(th, zeros(), 50);
  for (double p : st.partial_sums) EXPECT_LE(std::abs(p), 1e-8);
}

TEST(Geometric, SupportAnalysisAndMangoldtForm) {
  const auto h = TestFunction::bump(std::log(4.0), std::log(2.0));  // support [2, 8]
  const auto r = geometric_side(h, {});
  std::vector<std::uint64_t> keys;
  for (const auto& [p, v] : r.geom_per_prime) keys.push_back(p);
  EXPECT_EQ(keys, (std::vector<std::uint64_t>{2, 3, 5, 7}));
  // sum_n Lambda(n) n^{-1/2} (F(log n) + F(-log n)) with F(x) = e^{x/2} h(e^x)
  auto F = [&](double x) { return std::exp(0.5 * x) * h.at_log(x).real(); };
  double classical = 0;
  for (std::uint64_t n = 2; n <= 200; ++n)
    classical += mangoldt(n) / std::sqrt(static_cast<double>(n)) * (F(std::log(n)) + F(-std::log(n)));
  EXPECT_NEAR(r.prime_sum(), classical, 1e-13);
  // zero function
  const auto z = geometric_side(cplx(0.0) * h, {});
  EXPECT_EQ(z.geometric_side(), 0.0);
}

TEST(Geometric, ArchimedeanAwayFromOne) {
  // 1/2 int_0^inf h(1/t) (1/|1-t| + 1/(1+t)) dt/t, integrated in t
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  for (auto [c, w] : std::vector<std::pair<double, double>>{{std::log(4.0), std::log(2.0)}, {-1.0, 0.5}, {2.0, 0.3}}) {
    const auto h = TestFunction::bump(c, w);
    const double t0 = std::exp(-c - w), t1 = std::exp(-c + w);
    const double ref =
        0.5 * GK::integrate([&](double t) { return h(1 / t).real() * (1 / std::abs(1 - t) + 1 / (1 + t)) / t; }, t0, t1,
                            15, 1e-14);
    EXPECT_NEAR(archimedean_term(h, std::nullopt).value, ref, 1e-12 * std::max(1.0, std::abs(ref))) << c;
  }
}

TEST(Geometric, NeedsCalibration) {
  const auto h = TestFunction::bump(0.0, 1.0);
  EXPECT_EQ(code_of([&] { geometric_side(h, {}); }), errc::needs_calibration);
  ExplicitContext ctx{.zeros = &zeros(), .num_zeros = 100};
  EXPECT_EQ(code_of([&] { explicit_formula_report(h, ctx); }), errc::needs_calibration);
  // a support across 1 with h(1) = 0 does not need it
  const auto g = TestFunction::bump(-0.3, 0.5) + cplx(-1.0) * TestFunction::bump(0.3, 0.5);
  ASSERT_EQ(g.at_log(0.0), cplx(0.0));
  EXPECT_NO_THROW(geometric_side(g, {}));
  EXPECT_FALSE(geometric_side(g, {}).used_calibration);
}

TEST(ExplicitFormula, TwoSidesAgree) {
  ExplicitContext ctx{.zeros = &zeros(), .num_zeros = 1000};
  const auto h = TestFunction::bump(std::log(3.0), 0.5);
  const auto r = explicit_formula_report(h, ctx);
  EXPECT_LE(r.discrepancy(), 1e-3);
  EXPECT_EQ(r.num_zeros, 1000u);
  // linearity
  const auto r3 = explicit_formula_report(cplx(3.0) * h, ctx);
  EXPECT_NEAR(r3.spectral_side, 3 * r.spectral_side, 1e-12);
  EXPECT_NEAR(r3.geometric_side(), 3 * r.geometric_side(), 1e-12);
  const auto table = convergence_table(h, ctx, {10, 100, 1000});
  ASSERT_EQ(table.size(), 3u);
  EXPECT_GT(table[0].second, table[2].second);
  EXPECT_NEAR(table[2].second, r.discrepancy(), 1e-15);
}

TEST(ExplicitFormula, CalibrationIsStable) {
  const double c = calibrated();
  RecordProperty("c_inf", std::to_string(c));
  std::cout << "calibrated c_inf = " << c << "\n";
  ExplicitContext ctx{.zeros = &zeros(), .num_zeros = 10000};
  const double held = calibrate_c_inf(TestFunction::bump(0.2, 0.5), ctx);
  EXPECT_NEAR(held, c, 1e-5);
  EXPECT_EQ(code_of([&] { calibrate_c_inf(TestFunction::bump(2.0, 0.5), ctx); }), errc::invalid_argument);
  ctx.c_inf = c;
  const auto r = explicit_formula_report(TestFunction::bump(-0.3, 0.8), ctx);
  EXPECT_TRUE(r.used_calibration);
  EXPECT_LE(r.discrepancy(), 1e-5);
}

TEST(Theta, FubiniFailure) {
  const auto eta = SchwartzProfile::fubini();
  const auto per = fubini_term_integrals(eta, 5);
  for (double v : per) EXPECT_LE(std::abs(v), 1e-10);
  const auto q = theta_mellin(eta, 1.0, ThetaMethod::Quadrature);
  const auto cf = theta_mellin(eta, 1.0, ThetaMethod::ClosedForm);
  EXPECT_NEAR(q.real(), 0.125, 1e-6);
  EXPECT_NEAR(cf.real(), 0.125, 1e-6);
  // the symmetric functional equation gives the same value at 0
  EXPECT_NEAR(theta_mellin(eta, 0.0).real(), 0.125, 1e-6);
  EXPECT_EQ(code_of([] { theta_series(SchwartzProfile({1.0})); }), errc::precondition_violation);
}

TEST(Theta, ClosedFormAgainstQuadrature) {
  const auto eta = SchwartzProfile::fubini();
  const double g1 = zeros().gammas[0];
  const double scale = theta_scale(eta);
  const std::vector<cplx> points{1.0,           0.5,           cplx(0.5, g1), cplx(0.5, -g1), cplx(0.3, 2.0),
                                 cplx(0.8, -5), cplx(0.5, 21), cplx(2.0, 1),  cplx(-0.5, 3), 0.0};
  for (const auto& s : points) {
    const auto q = theta_mellin(eta, s, ThetaMethod::Quadrature);
    const auto c = theta_mellin(eta, s, ThetaMethod::ClosedForm);
    EXPECT_LE(std::abs(q - c), 1e-6 * std::max(1.0, std::abs(c))) << s;
  }
  // (s(s-1)/8) zeta*(s) for this profile
  const cplx s(0.3, 2.0);
  EXPECT_LE(rel(theta_mellin(eta, s, ThetaMethod::ClosedForm), s * (s - 1.0) / 8.0 * complete_zeta(s)), 1e-10);
  for (int j = 0; j < 50; ++j)
    EXPECT_LE(std::abs(theta_mellin(eta, cplx(0.5, zeros().gammas[j]))), 1e-8 * scale) << j;
}

TEST(Theta, AdjustDegree) {
  const auto f = TestFunction::bump(0.4, 0.3);
  for (double target : {0.0, 5.0, -2.5, degree(f)}) {
    const auto a = adjust_degree(f, target);
    EXPECT_NEAR(degree(a.function), target, 1e-8);
    // codegree moves by c * theta_hat(0)
    EXPECT_NEAR(codegree(a.function) - codegree(f), a.c * a.theta_hat0, 1e-10);
  }
  EXPECT_NEAR(adjust_degree(f, degree(f)).c, 0.0, 1e-12);
  const auto a = adjust_degree(f, 0.0);
  EXPECT_NEAR(a.theta_hat1, 0.125, 1e-6);
  EXPECT_NEAR(a.theta_hat0, 0.125, 1e-6);
}

TEST(Pairing, SpectralPositivityAndVanishingOnV) {
  ExplicitContext ctx{.zeros = &zeros(), .num_zeros = 500};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> c(-1.0, 1.5), w(0.1, 1.0), amp(-2.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    const auto f = TestFunction::bump(c(rng), w(rng), amp(rng));
    const auto p = positivity_check(f, ctx);
    EXPECT_TRUE(p.nonnegative);
    EXPECT_GE(p.value, -1e-12);
    // quadratic scaling
    EXPECT_NEAR(weil_pairing(cplx(2.0) * f, PairingMode::Spectral, ctx), 4 * p.value, 1e-12 + 1e-10 * p.value);
  }
  ExplicitContext c50{.zeros = &zeros(), .num_zeros = 50};
  const auto th = theta_series(SchwartzProfile::fubini());
  EXPECT_LE(std::abs(weil_pairing(th, PairingMode::Spectral, c50)), 1e-7);
}

TEST(Pairing, GeometricMatchesSpectral) {
  ExplicitContext ctx{.zeros = &zeros(), .num_zeros = 10000, .c_inf = calibrated()};
  const auto f = TestFunction::bump(std::log(3.0), 0.5);
  const double s = weil_pairing(f, PairingMode::Spectral, ctx);
  const double g = weil_pairing(f, PairingMode::Geometric, ctx);
  EXPECT_NEAR(s, g, 1e-4);
  const auto rh = rh_estimate_check(f, ctx);
  EXPECT_TRUE(rh.holds);
  EXPECT_NEAR(rh.margin, s, 1e-4);
  const auto rh2 = rh_estimate_check(cplx(2.0) * f, ctx);
  EXPECT_NEAR(rh2.lhs, 4 * rh.lhs, 1e-10);
  EXPECT_NEAR(rh2.rhs, 4 * rh.rhs, 1e-10);
  ExplicitContext raw{.zeros = &zeros(), .num_zeros = 100};
  EXPECT_EQ(code_of([&] { weil_pairing(f, PairingMode::Geometric, raw); }), errc::needs_calibration);
}
