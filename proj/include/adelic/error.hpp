#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adelic {

/// Failure categories shared by every module. The CLI maps these onto exit codes.
enum class errc {
  invalid_argument,
  not_an_idele,
  composition_undefined,
  model_incomplete,
  invalid_measure,
  precondition_violation,
  out_of_domain,
  insufficient_counts,
  inconsistent_counts,
  numerical_failure,
  invalid_field,
  regrid_required,
  input_error,
  needs_calibration,
  pole,
  undefined_on_stratum,
};

inline std::string_view to_string(errc e) {
  switch (e) {
    case errc::invalid_argument: return "invalid-argument";
    case errc::not_an_idele: return "not-an-idele";
    case errc::composition_undefined: return "composition-undefined";
    case errc::model_incomplete: return "model-incomplete";
    case errc::invalid_measure: return "invalid-measure";
    case errc::precondition_violation: return "precondition-violation";
    case errc::out_of_domain: return "out-of-domain";
    case errc::insufficient_counts: return "insufficient-counts";
    case errc::inconsistent_counts: return "inconsistent-counts";
    case errc::numerical_failure: return "numerical-failure";
    case errc::invalid_field: return "invalid-field";
    case errc::regrid_required: return "regrid-required";
    case errc::input_error: return "input-error";
    case errc::needs_calibration: return "needs-calibration";
    case errc::pole: return "pole";
    case errc::undefined_on_stratum: return "undefined-on-stratum";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace adelic
