#pragma once

#include <stdexcept>
#include <string>

namespace minsurf {

enum class ErrorKind {
  domain_error,
  unsupported_point,
  requires_exact_mode,
  parse_error,
  infeasible_sampling,
  exponent_undefined,
  invalid_path,
  bad_stencil,
  constant_map,
  flat_surface,
  degenerate_frame,
  multivalued_immersion,
  degenerate,
  condition_c_violated,
  period_obstruction,
  k_search_exhausted,
  invalid_cover,
  config_error,
  stage_failed,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a machine-readable kind so
// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace minsurf
