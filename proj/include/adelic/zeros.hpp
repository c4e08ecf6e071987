#pragma once

// Tables of ordinates of nontrivial zeta zeros, read from text files.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/special.hpp"

namespace adelic {

struct ZeroTable {
  std::vector<double> gammas;
  std::string source_path;

  std::size_t size() const { return gammas.size(); }
};

/// One positive decimal per line, strictly ascending; '#' starts a comment.
inline ZeroTable parse_zeros(std::istream& in, const std::string& name = "<stream>") {
  ZeroTable t{{}, name};
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string token;
    if (!(ls >> token)) continue;
    std::string extra;
    if (ls >> extra) fail(errc::input_error, name + ":" + std::to_string(lineno) + ": more than one value on a line");
    double v = 0;
    std::size_t used = 0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || !std::isfinite(v) || v <= 0)
      fail(errc::input_error, name + ":" + std::to_string(lineno) + ": not a positive decimal: '" + token + "'");
    if (!t.gammas.empty() && v <= t.gammas.back())
      fail(errc::input_error, name + ":" + std::to_string(lineno) + ": values are not strictly ascending");
    t.gammas.push_back(v);
  }
  if (t.gammas.empty()) fail(errc::input_error, name + ": no zeros found");
  return t;
}

inline ZeroTable load_zeros(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::input_error, "cannot open zeros file '" + path + "'");
  return parse_zeros(in, path);
}

struct SpotCheck {
  std::size_t checked = 0;
  std::size_t sign_changes_found = 0;  // Z changes sign across each checked ordinate
  std::size_t grid_sign_changes = 0;   // sign changes of Z on a grid over (10, t_max]
  std::size_t table_zeros_below = 0;
  bool ok = false;
};

/// Independent recomputation at desk scale: Hardy's Z changes sign across every
/// tabulated ordinate up to t_max, and the number of sign changes on a fine grid
/// matches the number of tabulated zeros.
inline SpotCheck spot_check(const ZeroTable& t, double t_max = 100.0, double delta = 1e-6, double grid_step = 0.005) {
  SpotCheck r;
  for (double g : t.gammas) {
    if (g > t_max) break;
    ++r.checked;
    if (hardy_z(g - delta) * hardy_z(g + delta) < 0) ++r.sign_changes_found;
  }
  r.table_zeros_below = r.checked;
  double prev = hardy_z(10.0);
  for (double x = 10.0 + grid_step; x <= t_max; x += grid_step) {
    const double cur = hardy_z(x);
    if (prev * cur < 0) ++r.grid_sign_changes;
    prev = cur;
  }
  r.ok = r.checked > 0 && r.sign_changes_found == r.checked && r.grid_sign_changes == r.table_zeros_below;
  return r;
}

}  // namespace adelic
