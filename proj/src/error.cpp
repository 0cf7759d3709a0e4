#include "hullmin/error.hpp"

namespace hullmin {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::unbounded_support: return "UnboundedSupport";
    case ErrorCode::radius_unavailable: return "RadiusUnavailable";
    case ErrorCode::unbounded_polygon: return "UnboundedPolygon";
    case ErrorCode::near_parallel: return "NearParallel";
    case ErrorCode::empty_body: return "EmptyBody";
    case ErrorCode::invalid_m: return "InvalidM";
    case ErrorCode::invalid_dim: return "InvalidDim";
    case ErrorCode::invalid_s: return "InvalidS";
    case ErrorCode::empty_targets: return "EmptyTargets";
    case ErrorCode::direction_not_tabulated: return "DirectionNotTabulated";
    case ErrorCode::degenerate_sample: return "DegenerateSample";
    case ErrorCode::invalid_parameters: return "InvalidParameters";
    case ErrorCode::round_limit: return "RoundLimit";
    case ErrorCode::mesh_too_coarse: return "MeshTooCoarse";
    case ErrorCode::negative_inflation: return "NegativeInflation";
    case ErrorCode::hypotheses_unmet: return "HypothesesUnmet";
    case ErrorCode::solver_failed: return "SolverFailed";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace hullmin
