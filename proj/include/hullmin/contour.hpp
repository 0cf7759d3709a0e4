#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hullmin/geometry.hpp"
#include "hullmin/lpcore.hpp"
#include "hullmin/quadrature.hpp"
#include "hullmin/requirement.hpp"

namespace hullmin {

enum class Formulation { general, two_d };

const char* to_string(Formulation f) noexcept;
Formulation formulation_from_string(const std::string& name);

struct DiscreteProblem {
  Quadrature quadrature;
  std::vector<double> values;  // C(u_i), aligned with quadrature.directions
  Formulation formulation = Formulation::two_d;
  double lipschitz = 0.0;
  double sup_norm = 0.0;
  bool lipschitz_certified = true;

  std::size_t dim() const noexcept { return quadrature.dim; }
  std::size_t size() const noexcept { return quadrature.size(); }
  void validate() const;
};

/// Evaluates req on the quadrature directions.
DiscreteProblem make_problem(const Quadrature& q, const Requirement& req, Formulation f);

// ---- general formulation ----------------------------------------------------

enum class CouplingMode { full, lazy };

const char* to_string(CouplingMode c) noexcept;

/// Variables: p_i in R^N at i*N + k, then B_j at m*N + j.
struct GeneralModel {
  lp::LinearProgram lp;
  std::size_t m = 0;
  std::size_t dim = 0;
  std::size_t p_var(std::size_t i, std::size_t k) const noexcept { return i * dim + k; }
  std::size_t b_var(std::size_t j) const noexcept { return m * dim + j; }
  /// Coupling rows <p_i,u_j> <= B_j that the current point violates by more
  /// than tol; at most `per_direction` (most violated first) for each j.
  std::vector<lp::Constraint> violated_coupling(std::span<const double> x, double tol, std::size_t per_direction) const;
  std::vector<Direction> directions;
};

/// full: every coupling row. lazy: <p_i,u_i> <= B_i plus the `neighbours`
/// nearest directions of each u_i (0 selects 2N); the rest come from the oracle.
/// B_j >= C(u_j) is added as a variable bound; it is implied by the rows.
GeneralModel build_general(const DiscreteProblem& dp, CouplingMode mode = CouplingMode::lazy, std::size_t neighbours = 0);

// ---- 2D formulation ---------------------------------------------------------

struct TwoDModel {
  lp::LinearProgram lp;
  std::vector<std::size_t> order;  // variable k is quadrature direction order[k]
};

/// Variables B_k in increasing angle; bounds B_k >= C and rows L_k >= 0.
/// Throws MeshTooCoarse (gap >= pi) or NearParallel (gap < 1e-8 rad).
TwoDModel build_2d(const DiscreteProblem& dp);

/// Angle-sorted permutation of 2D directions with the same gap checks as build_2d.
std::vector<std::size_t> angle_order_2d(std::span<const Direction> dirs);

/// Edge lengths L_i of the polygon with support values B at angle-sorted
/// directions (cyclic).
std::vector<double> side_lengths_2d(std::span<const Direction> sorted_dirs, std::span<const double> sorted_b);

// ---- solving ----------------------------------------------------------------

struct SolveOptions {
  CouplingMode coupling = CouplingMode::lazy;
  std::size_t neighbours = 0;
  std::size_t max_rounds = 500;
  std::size_t cuts_per_direction = 3;
  lp::SolverOptions lp;
};

struct SolverStats {
  std::size_t iterations = 0;
  std::size_t rounds = 0;
  std::size_t added_constraints = 0;
  std::size_t rows = 0;
  std::size_t columns = 0;
  double seconds = 0.0;
};

struct ContourSolution {
  std::size_t dim = 0;
  Formulation formulation = Formulation::two_d;
  std::vector<double> B;               // per quadrature direction
  std::vector<Point> witness_points;   // general formulation only
  std::optional<ConvexBody> body_star; // convex hull of the witness points
  std::optional<ConvexBody> body_prime;
  double objective = 0.0;              // sum w_i B_i
  double radius_bound = 0.0;
  SolverStats stats;

  const ConvexBody& prime() const { return body_prime.value(); }
};

/// Throws SolverFailed when the LP does not reach an optimum.
ContourSolution solve_contour(const DiscreteProblem& dp, const SolveOptions& options = {});

/// B from the LP point (in quadrature order); witness points for general.
ContourSolution assemble_solution(const DiscreteProblem& dp, const GeneralModel& model, const lp::LpSolution& sol);
ContourSolution assemble_solution(const DiscreteProblem& dp, const TwoDModel& model, const lp::LpSolution& sol);

/// Intersection of half-spaces (v, B(body, v) + e) over dirs. Throws
/// NegativeInflation.
ConvexBody inflate(const ConvexBody& body, std::span<const Direction> dirs, double e);

struct FineGrid {
  std::vector<Direction> directions;
  double dispersion;
};

/// Stand-in for "all directions": uniform 4096 in 2D, cubed s = 64 in 3D,
/// cubed s = 8 above.
FineGrid fine_grid(std::size_t dim);

// ---- certified bounds -------------------------------------------------------

struct BoundInputs {
  std::size_t dim = 2;
  double eps = 0.0;
  double delta = 0.0;
  double lipschitz = 0.0;
  double sup_norm = 0.0;
};

BoundInputs bound_inputs(const DiscreteProblem& dp);

struct CertifiedBounds {
  double e_inflation = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double R_bound = 0.0;
  double vcp_vdp_gap_upper = 0.0;
  double vdp_vcp_gap_upper = 0.0;
};

/// Which hypothesis eps, delta <= 1/(10 sqrt N) fails, if any.
std::optional<std::string> hypotheses_failure(const BoundInputs& in);

/// Throws HypothesesUnmet when hypotheses_failure reports something.
CertifiedBounds certified_bounds(const BoundInputs& in, double gamma);
CertifiedBounds certified_bounds(const DiscreteProblem& dp, double gamma);

/// gamma passed to certified_bounds by the pipeline: user gamma plus the LP
/// feasibility tolerance.
inline constexpr double kSolverGamma = 1e-7;

// ---- diagnostics ------------------------------------------------------------

struct ViolationReport {
  double max_violation = 0.0;  // max over probes of C(u) - B(body, u)
  std::size_t argmax = 0;
  double probe_dispersion = 0.0;
  double correction = 0.0;     // (L_C + R) * probe_dispersion
};

ViolationReport violation(const ConvexBody& body, const Requirement& req, std::span<const Direction> probes,
                          double probe_dispersion);

struct MeanWidth {
  double halved = 0.0;       // sum w_i B(body, u_i)
  double error_bound = 0.0;  // eps * 2R
  std::optional<double> perimeter;  // 2D: 2 pi * halved
};

MeanWidth mean_width(const ConvexBody& body, const Quadrature& q);

/// Intersection of the half-spaces (u_i, C(u_i)).
ConvexBody naive_body(const DiscreteProblem& dp);

enum class StudyMetric { violation, perimeter_gap };

struct StudyOptions {
  Formulation formulation = Formulation::two_d;
  std::size_t probe_factor = 10;
  /// Defaults to the requirement's known optimum, else the largest-m solution.
  std::optional<double> reference_perimeter;
  /// Defaults to violation for requirements with a nonzero violation trend
  /// (spikes) and perimeter_gap otherwise.
  std::optional<StudyMetric> metric;
  SolveOptions solve;
};

struct StudyRow {
  std::size_t m = 0;
  double violation = 0.0;
  double objective = 0.0;
  double perimeter_gap = 0.0;
  double slope_partial = 0.0;  // NaN until two usable rows exist
};

std::vector<StudyRow> convergence_study(const Requirement& req, std::span<const std::size_t> m_values,
                                        const StudyOptions& options = {});

/// Least-squares slope of log y against log x using pairs with y > 1e-12;
/// NaN with fewer than two such pairs.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace hullmin
