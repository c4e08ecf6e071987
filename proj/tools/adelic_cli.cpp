// adelic_cli: command-line driver for the adelic library.
//
// Exit codes: 0 success, 1 mathematical inconsistency, 2 input or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adelic/adelic.hpp"

using namespace adelic;
using json = nlohmann::ordered_json;

namespace {

#ifdef ADELIC_DATA_DIR
const std::string default_zeros = std::string(ADELIC_DATA_DIR) + "/zeta_zeros_10k.txt";
#else
const std::string default_zeros = "data/zeta_zeros_10k.txt";
#endif

enum class Format { Csv, Json };

struct Globals {
  std::string format;
  std::string out;
  std::uint64_t seed = 0;
};

/// Raised when a result contradicts the mathematics (exit code 1).
struct inconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }

  std::string csv() const {
    std::ostringstream o;
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << csv_field(r[i]);
      o << "\r\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return o.str();
  }

  json rows_json() const {
    json a = json::array();
    for (const auto& r : rows_) {
      json obj;
      for (std::size_t i = 0; i < r.size(); ++i) obj[header_[i]] = r[i];
      a.push_back(obj);
    }
    return a;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) fail(errc::input_error, "cannot write '" + g.out + "'");
  f << text;
}

Format format_of(const Globals& g, Format fallback) {
  if (g.format.empty()) return fallback;
  return g.format == "csv" ? Format::Csv : Format::Json;
}

void emit_json(const Globals& g, const json& j) { emit(g, j.dump(2) + "\n"); }

void emit_table(const Globals& g, const Table& t, Format fallback, json meta = json::object()) {
  if (format_of(g, fallback) == Format::Csv) {
    emit(g, t.csv());
  } else {
    meta["rows"] = t.rows_json();
    emit_json(g, meta);
  }
}

std::string big(const Integer& v) { return v.str(); }

json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return json(v.convert_to<std::int64_t>());
  return json(v.str());
}

// ---------------------------------------------------------------------------
// thermo, digits

struct ThermoArgs {
  std::uint64_t p = 0;
  double beta = 0;
  int grid = 0;
  std::string lambda;
  int K = default_truncation;
  bool oracle = false;
};

void run_thermo(const ThermoArgs& a, const Globals& g) {
  require(a.p >= 2 && is_prime(a.p), errc::invalid_argument, "--p must be a prime");
  require(a.K >= 1, errc::invalid_argument, "--K must be positive");
  require(a.grid > 0 || !a.lambda.empty(), errc::invalid_argument, "give --grid N or --lambda R");
  std::vector<Rational> lambdas;
  if (!a.lambda.empty()) {
    lambdas.push_back(parse_rational(a.lambda));
  } else {
    for (int i = 1; i <= a.grid; ++i) lambdas.push_back(1 + Rational(static_cast<long>(a.p) - 1) * i / a.grid);
  }
  std::vector<std::string> header{"lambda_num", "lambda_den", "lambda", "beta", "Zp", "tail_bound", "zeta_p"};
  if (a.oracle) header.push_back("oracle");
  Table t(header);
  for (const auto& l : lambdas) {
    const auto z = Zp(l, a.p, a.beta, a.K);
    const double closed = Zp_closed(l, a.p, a.beta);
    if (std::abs(z.value - closed) > z.tail_bound)
      throw inconsistency("truncated Z_p at lambda " + to_string(l) + " misses the closed form by more than its bound");
    std::vector<std::string> r{big(numerator(l)), big(denominator(l)), num(to_double(l)), num(a.beta),
                               num(z.value),      num(z.tail_bound),  num(zeta_p(l, a.p, a.beta))};
    if (a.oracle) r.push_back(num(closed));
    t.row(r);
  }
  json meta{{"command", "thermo"}, {"p", a.p}, {"beta", a.beta}, {"K", a.K}};
  emit_table(g, t, Format::Csv, meta);
}

struct DigitsArgs {
  std::uint64_t p = 0;
  std::string lambda;
  int K = default_truncation;
};

void run_digits(const DigitsArgs& a, const Globals& g) {
  require(a.p >= 2 && is_prime(a.p), errc::invalid_argument, "--p must be a prime");
  const Rational l = parse_rational(a.lambda);
  const auto d = digits(l, a.p, a.K);
  Table t({"k", "digit"});
  for (std::size_t k = 0; k < d.coeffs.size(); ++k) t.row({std::to_string(k), big(d.coeffs[k])});
  json meta{{"command", "digits"}, {"p", a.p}, {"lambda", to_string(l)}, {"K", a.K}};
  emit_table(g, t, Format::Csv, meta);
}

// ---------------------------------------------------------------------------
// ff, points

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::input_error, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(errc::input_error, path + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) fail(errc::input_error, std::string("spec is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(errc::input_error, std::string("spec field '") + key + "' has the wrong type");
  }
}

/// {"p": 2, "modulus": [0, 1], "monomials": [[coeff, ex, ey, ez], ...]}
PlaneCurve parse_curve(const json& j) {
  PlaneCurve c;
  c.p = field<int>(j, "p");
  if (j.contains("modulus")) c.modulus = field<std::vector<int>>(j, "modulus");
  for (const auto& m : field<std::vector<std::vector<int>>>(j, "monomials")) {
    if (m.size() != 4) fail(errc::input_error, "a monomial is [coeff, ex, ey, ez]");
    c.monomials.push_back({m[0], m[1], m[2], m[3]});
  }
  require(c.p >= 2 && is_prime(static_cast<std::uint64_t>(c.p)), errc::input_error, "curve p must be a prime");
  return c;
}

std::int64_t field_size(const PlaneCurve& c) {
  std::int64_t q = 1;
  for (int i = 0; i < c.k(); ++i) q *= c.p;
  return q;
}

void run_ff(const std::string& spec_path, const Globals& g) {
  const json spec = read_json_file(spec_path);
  CurveCountData d;
  d.g = field<int>(spec, "genus");
  if (spec.contains("curve")) {
    const auto c = parse_curve(spec.at("curve"));
    const int n = spec.contains("n") ? field<int>(spec, "n") : std::max(1, d.g);
    const auto counts = count_points_series(c, n);
    d.q = field_size(c);
    d.counts.assign(counts.begin(), counts.end());
  } else {
    d.q = field<std::int64_t>(spec, "q");
    d.counts = field<std::vector<std::int64_t>>(spec, "counts");
  }
  ZetaPolynomial P;
  try {
    P = numerator_polynomial(d);
  } catch (const error& e) {
    if (e.code() == errc::inconsistent_counts) throw inconsistency(std::string(e.what()));
    throw;
  }
  const auto rh = rh_check(P);
  json out{{"command", "ff"}, {"q", d.q}, {"genus", d.g}, {"counts", d.counts}};
  json coeffs = json::array();
  for (const auto& c : P.coeffs) coeffs.push_back(integer_json(c));
  out["numerator"] = coeffs;
  json eig = json::array();
  for (const auto& l : P.eigenvalues) eig.push_back(json::array({l.real(), l.imag()}));
  out["eigenvalues"] = eig;
  out["rh_deviation"] = rh.max_deviation;
  out["rh_ok"] = rh.ok;
  if (d.g >= 1) out["psd"] = psd_check(d.g, d.q, d.counts.empty() ? d.q + 1 : d.counts[0]);
  json series = json::array();
  for (const auto& z : zeta_series(d, static_cast<int>(d.counts.size()))) series.push_back(to_string(z));
  out["zeta_series"] = series;
  json rec = json::array();
  for (int n = 1; n <= std::max<int>(4, static_cast<int>(d.counts.size())); ++n) rec.push_back(integer_json(recover_counts(P, n)));
  out["recovered_counts"] = rec;
  emit_json(g, out);
  if (!rh.ok) throw inconsistency("Frobenius eigenvalues are off the circle |lambda| = sqrt q");
}

void run_points(const std::string& spec_path, int n, const Globals& g) {
  const json spec = read_json_file(spec_path);
  const auto c = parse_curve(spec.contains("curve") ? spec.at("curve") : spec);
  require(n >= 1, errc::invalid_argument, "--n must be positive");
  const auto counts = count_points_series(c, n);
  Table t({"n", "q_n", "count"});
  std::int64_t qn = 1;
  for (int i = 1; i <= n; ++i) {
    qn *= field_size(c);
    t.row({std::to_string(i), std::to_string(qn), std::to_string(counts[i - 1])});
  }
  emit_table(g, t, Format::Csv, json{{"command", "points"}});
}

// ---------------------------------------------------------------------------
// explicit

struct ExplicitArgs {
  std::string zeros = default_zeros;
  std::size_t num_zeros = 10000;
  std::uint64_t prime_cutoff = 0;
  double center = std::log(4.0);
  double halfwidth = std::log(2.0);
  double amplitude = 1.0;
  double disc_log = 0.0;
  double tolerance = 1e-6;
  bool calibrate = false;
  bool sweep = false;
  bool positivity = false;
  bool fubini = false;
  int samples = 0;
};

std::string state_path(const std::string& zeros) { return zeros + ".calibration.json"; }

std::optional<double> load_calibration(const std::string& zeros) {
  std::ifstream in(state_path(zeros));
  if (!in) return std::nullopt;
  try {
    const auto j = json::parse(in);
    return j.at("c_inf").get<double>();
  } catch (const json::exception& e) {
    fail(errc::input_error, state_path(zeros) + ": " + e.what());
  }
}

json report_json(const FormulaReport& r) {
  json per = json::object();
  for (const auto& [p, v] : r.geom_per_prime) per[std::to_string(p)] = v;
  return json{{"spectral_side", r.spectral_side},
              {"spectral_tail", r.spectral_tail},
              {"geometric_side", r.geometric_side()},
              {"h_hat0", r.h_hat0},
              {"h_hat1", r.h_hat1},
              {"discriminant_term", r.discriminant_term},
              {"archimedean", r.geom_archimedean},
              {"per_prime", per},
              {"prime_cutoff", r.prime_cutoff},
              {"num_zeros", r.num_zeros},
              {"used_calibration", r.used_calibration},
              {"discrepancy", r.discrepancy()}};
}

void run_explicit(const ExplicitArgs& a, const Globals& g) {
  const ZeroTable zeros = load_zeros(a.zeros);
  require(a.num_zeros <= zeros.size(), errc::invalid_argument,
          "--num-zeros exceeds the " + std::to_string(zeros.size()) + " zeros in the table");
  ExplicitContext ctx{.zeros = &zeros, .num_zeros = a.num_zeros, .prime_cutoff = a.prime_cutoff,
                      .disc_log = a.disc_log, .c_inf = load_calibration(a.zeros)};
  const auto h = TestFunction::bump(a.center, a.halfwidth, a.amplitude);

  if (a.sweep) {
    std::vector<std::size_t> sizes;
    for (std::size_t n = 10; n < a.num_zeros; n *= 2) sizes.push_back(n);
    sizes.push_back(a.num_zeros);
    Table t({"N", "discrepancy"});
    for (auto [n, d] : convergence_table(h, ctx, sizes)) t.row({std::to_string(n), num(d)});
    emit_table(g, t, Format::Csv, json{{"command", "explicit"}, {"mode", "sweep"}});
    return;
  }

  json out{{"command", "explicit"},
           {"zeros", a.zeros},
           {"bump", {{"center", a.center}, {"halfwidth", a.halfwidth}, {"amplitude", a.amplitude}}}};
  bool consistent = true;
  if (a.calibrate) {
    const double c = calibrate_c_inf(TestFunction::bump(0.0, 1.0), ctx);
    std::ofstream f(state_path(a.zeros), std::ios::binary);
    if (!f) fail(errc::input_error, "cannot write calibration state next to the zeros file");
    f << json{{"c_inf", c}, {"num_zeros", a.num_zeros}, {"reference", {{"center", 0.0}, {"halfwidth", 1.0}}}}.dump(2)
      << "\n";
    ctx.c_inf = c;
    out["calibration"] = {{"c_inf", c}, {"state_file", state_path(a.zeros)}};
  }
  if (a.fubini) {
    const auto eta = SchwartzProfile::fubini();
    const auto per = fubini_term_integrals(eta, 5);
    const double total = theta_mellin(eta, 1.0).real();
    out["fubini"] = {{"per_term_integrals", per},
                     {"summed_integral", total},
                     {"closed_form", theta_mellin(eta, 1.0, ThetaMethod::ClosedForm).real()}};
    for (double v : per) consistent = consistent && std::abs(v) <= 1e-10;
    consistent = consistent && std::abs(total - 0.125) <= 1e-6;
  } else {
    const auto r = explicit_formula_report(h, ctx);
    out["report"] = report_json(r);
    out["tolerance"] = a.tolerance;
    consistent = consistent && r.discrepancy() <= a.tolerance;
  }
  if (a.positivity) {
    std::vector<std::pair<std::string, TestFunction>> fs{{"bump", h}};
    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> c(-1.0, 2.0), w(0.1, 1.0);
    for (int i = 0; i < a.samples; ++i) fs.emplace_back("random_" + std::to_string(i), TestFunction::bump(c(rng), w(rng)));
    json arr = json::array();
    for (const auto& [name, f] : fs) {
      const auto sp = positivity_check(f, ctx, PairingMode::Spectral);
      json e{{"function", name}, {"spectral", sp.value}, {"nonnegative", sp.nonnegative}};
      consistent = consistent && sp.nonnegative;
      if (ctx.c_inf) {
        const double geo = weil_pairing(f, PairingMode::Geometric, ctx);
        e["geometric"] = geo;
        const auto rh = rh_estimate_check(f, ctx);
        e["rh_estimate"] = {{"lhs", rh.lhs}, {"rhs", rh.rhs}, {"holds", rh.holds}};
      } else {
        e["geometric"] = "needs-calibration";
      }
      arr.push_back(e);
    }
    out["positivity"] = arr;
  }
  emit_json(g, out);
  if (!consistent) throw inconsistency("explicit formula check failed; see the report");
}

// ---------------------------------------------------------------------------
// bc, semilocal

std::string residue(long i, long M) { return to_string(Rational(i, M)); }

void run_bc(long n, long level, const Globals& g) {
  require(n >= 1 && level >= 1, errc::invalid_argument, "--n and --level must be positive");
  require(n * level <= 100000, errc::invalid_argument, "level * n too large for a table");
  json images = json::array();
  for (long i = 0; i < level; ++i) {
    const auto img = rho_n(GroupRingElement::basis(Rational(i, level), level), n);
    json terms = json::object();
    for (const auto& [j, c] : img.coeffs()) terms[residue(j, img.level())] = to_string(c);
    images.push_back({{"e", residue(i, level)}, {"rho_n", terms}});
  }
  const auto e = rho_n(GroupRingElement::one(), n);
  json orbit = json::array();
  if (level >= 2)
    for (const auto& v : galois_orbit(Rational(1, level))) orbit.push_back(json::array({v.real(), v.imag()}));
  json poly = json::array();
  if (level >= 2)
    for (const auto& c : orbit_polynomial(galois_orbit(Rational(1, level)))) poly.push_back(json::array({c.real(), c.imag()}));
  const bool idem = gr_mul(e, e) == e;
  emit_json(g, json{{"command", "bc"},
                    {"n", n},
                    {"level", level},
                    {"images", images},
                    {"rho_n_of_one_idempotent", idem},
                    {"psi_galois_orbit", orbit},
                    {"orbit_polynomial", poly}});
  if (!idem) throw inconsistency("rho_n(1) is not idempotent");
}

struct SemilocalArgs {
  std::string mode = "quad";
  std::vector<double> point;
  std::uint64_t p = 0;
  long xval = 0;
  std::string xunit = "1";
  double y = 0;
};

std::string fiber_text(const FiberLabel& f) {
  if (const auto* gnc = std::get_if<fiber::Generic>(&f)) {
    std::ostringstream o;
    o << "Generic(" << gnc->value << ")";
    return o.str();
  }
  return fiber_name(f);
}

void run_semilocal(const SemilocalArgs& a, const Globals& g) {
  if (a.mode == "quad") {
    require(a.point.size() == 2, errc::invalid_argument, "--point takes two coordinates");
    const QuadPoint P{a.point[0], a.point[1]};
    const auto label = quad_fiber(P);
    json out{{"command", "semilocal"}, {"mode", "quad"}, {"point", a.point}, {"fiber", fiber_text(label)}};
    if (P.x != 0.0 && P.y != 0.0) {
      const auto r = quad_reduce(P);
      const auto again = quad_reduce(r.point);
      out["reduced"] = {{"x", r.point.x}, {"y", r.point.y}, {"n", r.n}, {"s", r.s}};
      out["idempotent"] = again.n == 0 && again.point.x == r.point.x;
      out["invariant"] = quad_invariant(P);
      emit_json(g, out);
      if (!out["idempotent"].get<bool>()) throw inconsistency("reduction is not idempotent");
    } else {
      out["reduced"] = nullptr;
      emit_json(g, out);
    }
    return;
  }
  require(a.mode == "padic", errc::invalid_argument, "--mode is quad or padic");
  require(a.p >= 2 && is_prime(a.p), errc::invalid_argument, "--p must be a prime");
  PadicRealPoint P{a.xval, parse_rational(a.xunit), a.y};
  P.validate(a.p);
  const auto r = padic_real_reduce(P, a.p);
  const double hol = holonomy_class(P, a.p);
  const auto inv = invariant_class(P, a.p);
  const bool holds = hol == inv.rep;
  emit_json(g, json{{"command", "semilocal"},
                    {"mode", "padic"},
                    {"p", a.p},
                    {"point", {{"xval", a.xval}, {"xunit", to_string(*P.xunit)}, {"y", a.y}}},
                    {"reduced", {{"xval", *r.xval}, {"xunit", to_string(*r.xunit)}, {"y", r.y}}},
                    {"holonomy_class", hol},
                    {"invariant_class", {{"rep", inv.rep}, {"exponent", inv.exponent}}},
                    {"holonomy_identity", holds}});
  if (!holds) throw inconsistency("holonomy class differs from the invariant class");
}

int exit_code_for(errc e) {
  switch (e) {
    case errc::inconsistent_counts:
    case errc::numerical_failure:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adelic: number-theoretic experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--seed", g.seed, "seed for randomized samples")->default_val(0);

  ThermoArgs ta;
  auto* thermo = app.add_subcommand("thermo", "partition function Z_p(lambda, beta) on a grid");
  thermo->add_option("--p", ta.p, "prime")->required();
  thermo->add_option("--beta", ta.beta, "inverse temperature > 1")->required();
  auto* grid = thermo->add_option("--grid", ta.grid, "N grid points 1 + (p - 1) i / N");
  thermo->add_option("--lambda", ta.lambda, "single rational lambda in (1, p]")->excludes(grid);
  thermo->add_option("--K", ta.K, "truncation level")->default_val(default_truncation);
  thermo->add_flag("--oracle", ta.oracle, "add the closed-form value");

  DigitsArgs da;
  auto* dig = app.add_subcommand("digits", "base-p digits of lambda");
  dig->add_option("--p", da.p, "prime")->required();
  dig->add_option("--lambda", da.lambda, "rational in (1, p]")->required();
  dig->add_option("--K", da.K, "number of digits after the first")->default_val(default_truncation);

  std::string ff_spec;
  auto* ff = app.add_subcommand("ff", "zeta function of a curve from a JSON spec");
  ff->add_option("--spec", ff_spec, "JSON file with counts or a curve")->required();

  std::string pts_spec;
  int pts_n = 4;
  auto* points = app.add_subcommand("points", "point counts of a plane curve");
  points->add_option("--spec", pts_spec, "JSON curve file")->required();
  points->add_option("--n", pts_n, "largest extension degree")->default_val(4);

  ExplicitArgs ea;
  auto* expl = app.add_subcommand("explicit", "explicit formula on a bump test function");
  expl->add_option("--zeros", ea.zeros, "zeros file")->default_val(default_zeros);
  expl->add_option("--num-zeros", ea.num_zeros, "zeros summed")->default_val(10000);
  expl->add_option("--prime-cutoff", ea.prime_cutoff, "prime power bound (0: from the support)")->default_val(0);
  expl->add_option("--center", ea.center, "bump center in log u");
  expl->add_option("--halfwidth", ea.halfwidth, "bump halfwidth in log u");
  expl->add_option("--amplitude", ea.amplitude, "bump amplitude");
  expl->add_option("--disc-log", ea.disc_log, "discriminant term coefficient")->default_val(0.0);
  expl->add_option("--tolerance", ea.tolerance, "allowed discrepancy")->default_val(1e-6);
  expl->add_flag("--calibrate", ea.calibrate, "solve for the archimedean constant and store it");
  expl->add_flag("--sweep", ea.sweep, "CSV of discrepancy against N");
  expl->add_flag("--positivity", ea.positivity, "Weil pairing in both modes");
  expl->add_option("--samples", ea.samples, "extra random bumps for --positivity")->default_val(0);
  expl->add_flag("--fubini", ea.fubini, "theta-series demo");

  long bc_n = 2, bc_level = 1;
  auto* bc = app.add_subcommand("bc", "group-ring endomorphism tables");
  bc->add_option("--n", bc_n, "endomorphism index")->default_val(2);
  bc->add_option("--level", bc_level, "level M")->default_val(1);

  SemilocalArgs sa;
  auto* semi = app.add_subcommand("semilocal", "orbit reductions and holonomy");
  semi->add_option("--mode", sa.mode, "quad or padic")->check(CLI::IsMember({"quad", "padic"}))->default_val("quad");
  semi->add_option("--point", sa.point, "x y")->expected(2);
  semi->add_option("--p", sa.p, "prime");
  semi->add_option("--xval", sa.xval, "valuation of the p-adic coordinate");
  semi->add_option("--xunit", sa.xunit, "unit part (rational)")->default_val("1");
  semi->add_option("--y", sa.y, "real coordinate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*thermo) run_thermo(ta, g);
    if (*dig) run_digits(da, g);
    if (*ff) run_ff(ff_spec, g);
    if (*points) run_points(pts_spec, pts_n, g);
    if (*expl) run_explicit(ea, g);
    if (*bc) run_bc(bc_n, bc_level, g);
    if (*semi) run_semilocal(sa, g);
  } catch (const inconsistency& e) {
    std::cerr << "inconsistent: " << e.what() << "\n";
    return 1;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return 0;
}
