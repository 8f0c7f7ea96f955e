#include "minsurf/errors.hpp"

namespace minsurf {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain_error: return "domain-error";
    case ErrorKind::unsupported_point: return "unsupported-point";
    case ErrorKind::requires_exact_mode: return "requires-exact-mode";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::infeasible_sampling: return "infeasible-sampling";
    case ErrorKind::exponent_undefined: return "exponent-undefined";
    case ErrorKind::invalid_path: return "invalid-path";
    case ErrorKind::bad_stencil: return "bad-stencil";
    case ErrorKind::constant_map: return "constant-map";
    case ErrorKind::flat_surface: return "flat-surface";
    case ErrorKind::degenerate_frame: return "degenerate-frame";
    case ErrorKind::multivalued_immersion: return "multivalued-immersion";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::condition_c_violated: return "condition-c-violated";
    case ErrorKind::period_obstruction: return "period-obstruction";
    case ErrorKind::k_search_exhausted: return "k-search-exhausted";
    case ErrorKind::invalid_cover: return "invalid-cover";
    case ErrorKind::config_error: return "config-error";
    case ErrorKind::stage_failed: return "stage-failed";
  }
  return "unknown";
}

}  // namespace minsurf
