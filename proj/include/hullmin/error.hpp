#pragma once

#include <stdexcept>
#include <string>

namespace hullmin {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  unbounded_support,
  radius_unavailable,
  unbounded_polygon,
  near_parallel,
  empty_body,
  invalid_m,
  invalid_dim,
  invalid_s,
  empty_targets,
  direction_not_tabulated,
  degenerate_sample,
  invalid_parameters,
  round_limit,
  mesh_too_coarse,
  negative_inflation,
  hypotheses_unmet,
  solver_failed,
  parse_error,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hullmin
