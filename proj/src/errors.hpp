#pragma once

#include <stdexcept>
#include <string>

namespace pmclt {

enum class errc {
  ok = 0,
  invalid_argument,
  parse_error,
  spec_invalid,
  quadrature_failure,
  divergent_moment,
  sign_localization_failure,
  nu_out_of_range,
  n_out_of_range,
  overflow,
  atoms_present,
  truncation_too_large,
  root_not_bracketed,
  io_error,
  internal_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::ok: return "ok";
    case errc::invalid_argument: return "invalid_argument";
    case errc::parse_error: return "parse_error";
    case errc::spec_invalid: return "spec_invalid";
    case errc::quadrature_failure: return "quadrature_failure";
    case errc::divergent_moment: return "divergent_moment";
    case errc::sign_localization_failure: return "sign_localization_failure";
    case errc::nu_out_of_range: return "nu_out_of_range";
    case errc::n_out_of_range: return "n_out_of_range";
    case errc::overflow: return "overflow";
    case errc::atoms_present: return "atoms_present";
    case errc::truncation_too_large: return "truncation_too_large";
    case errc::root_not_bracketed: return "root_not_bracketed";
    case errc::io_error: return "io_error";
    case errc::internal_error: return "internal_error";
  }
  return "unknown";
}

/// Library error type. Every failure mode carries a stable code so the C API
/// can translate exceptions into status values without string matching.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace pmclt
