#pragma once

// Dense bounded-variable simplex engine.
//
// Models are stated as "minimize c.x subject to rows a_r.x {<=,>=,=} b_r and
// per-variable bounds". Internally every row gets a logical variable
// s_r = a_r.x whose bounds encode the relation, so the tableau is homogeneous
// and all data lives in the bounds.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hullmin::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { less_equal, greater_equal, equal };

struct Term {
  std::size_t var;
  double coeff;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation;
  double rhs;
};

class LinearProgram {
 public:
  LinearProgram() = default;
  explicit LinearProgram(std::size_t n_vars);

  /// Adds a variable and returns its index. Variables are free by default.
  std::size_t add_variable(double cost = 0.0, double lower = -kInf, double upper = kInf);
  void add_constraint(Constraint c);
  void add_constraint(std::vector<Term> terms, Relation relation, double rhs);

  void set_cost(std::size_t var, double cost);
  void set_bounds(std::size_t var, double lower, double upper);

  std::size_t num_variables() const noexcept { return cost_.size(); }
  std::size_t num_constraints() const noexcept { return rows_.size(); }

  std::span<const double> objective() const noexcept { return cost_; }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  const std::vector<Constraint>& constraints() const noexcept { return rows_; }

  /// Throws Error(invalid_parameters) on bad indices, NaN/Inf coefficients or
  /// crossed bounds.
  void validate() const;

 private:
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Constraint> rows_;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(Status s) noexcept;

struct LpSolution {
  Status status = Status::iteration_limit;
  std::vector<double> x;
  double objective_value = 0.0;
  std::size_t iterations = 0;
  /// One multiplier per constraint of the model that was solved (lazy rows
  /// appended after the base rows). Zero for rows whose logical is basic.
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  std::size_t rounds = 0;
  std::size_t added_constraints = 0;
};

struct SolverOptions {
  double feasibility_tol = 1e-7;
  double pivot_tol = 1e-10;
  std::size_t max_iterations = 5'000'000;
};

/// Two-phase primal simplex (or dual simplex when the slack basis is already
/// dual feasible). Dantzig pricing with Harris ratio test; switches to Bland's
/// rule after 3*(rows+cols) iterations. Never throws for infeasible or
/// unbounded models: the status carries the outcome.
LpSolution solve(const LinearProgram& lp, const SolverOptions& options = {});

using ViolationOracle = std::function<std::vector<Constraint>(std::span<const double> x)>;

/// Cutting-plane loop: solve, ask the oracle for violated rows, append them to
/// the live tableau and re-optimize with the dual simplex. Throws
/// Error(round_limit) once more than max_rounds augmentations would be needed.
LpSolution solve_lazy(const LinearProgram& base, const ViolationOracle& oracle, std::size_t max_rounds,
                      const SolverOptions& options = {});

/// Largest violation of any row or bound of lp at x.
double max_violation(const LinearProgram& lp, std::span<const double> x);
double constraint_violation(const Constraint& c, std::span<const double> x);

/// Human-readable dump, one constraint per line. Debugging aid only.
std::string to_text(const LinearProgram& lp);

}  // namespace hullmin::lp
