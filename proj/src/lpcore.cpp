#include "hullmin/lpcore.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "hullmin/error.hpp"

namespace hullmin::lp {

LinearProgram::LinearProgram(std::size_t n_vars)
    : cost_(n_vars, 0.0), lower_(n_vars, -kInf), upper_(n_vars, kInf) {}

std::size_t LinearProgram::add_variable(double cost, double lower, double upper) {
  cost_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return cost_.size() - 1;
}

void LinearProgram::add_constraint(Constraint c) { rows_.push_back(std::move(c)); }

void LinearProgram::add_constraint(std::vector<Term> terms, Relation relation, double rhs) {
  rows_.push_back(Constraint{std::move(terms), relation, rhs});
}

void LinearProgram::set_cost(std::size_t var, double cost) { cost_.at(var) = cost; }

void LinearProgram::set_bounds(std::size_t var, double lower, double upper) {
  lower_.at(var) = lower;
  upper_.at(var) = upper;
}

void LinearProgram::validate() const {
  const std::size_t n = num_variables();
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(cost_[j])) throw Error(ErrorCode::invalid_parameters, "non-finite objective coefficient");
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) || lower_[j] > upper_[j] || lower_[j] == kInf ||
        upper_[j] == -kInf) {
      throw Error(ErrorCode::invalid_parameters, "invalid bounds on variable " + std::to_string(j));
    }
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const auto& c = rows_[r];
    if (!std::isfinite(c.rhs)) throw Error(ErrorCode::invalid_parameters, "non-finite rhs in row " + std::to_string(r));
    for (const auto& t : c.terms) {
      if (t.var >= n) throw Error(ErrorCode::invalid_parameters, "row " + std::to_string(r) + " references unknown variable");
      if (!std::isfinite(t.coeff)) throw Error(ErrorCode::invalid_parameters, "non-finite coefficient in row " + std::to_string(r));
    }
  }
}

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

double constraint_violation(const Constraint& c, std::span<const double> x) {
  double lhs = 0.0;
  for (const auto& t : c.terms) lhs += t.coeff * x[t.var];
  switch (c.relation) {
    case Relation::less_equal: return std::max(0.0, lhs - c.rhs);
    case Relation::greater_equal: return std::max(0.0, c.rhs - lhs);
    case Relation::equal: return std::abs(lhs - c.rhs);
  }
  return 0.0;
}

double max_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    worst = std::max(worst, lp.lower()[j] - x[j]);
    worst = std::max(worst, x[j] - lp.upper()[j]);
  }
  for (const auto& c : lp.constraints()) worst = std::max(worst, constraint_violation(c, x));
  return worst;
}

namespace {

enum class NbState : unsigned char { lower, upper, free_zero, fixed };

std::vector<Term> normalized_terms(const std::vector<Term>& terms) {
  std::vector<Term> out = terms;
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(out.size());
  for (const auto& t : out) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0.0; });
  return merged;
}

// Dictionary-form simplex: x_B = T x_N with T stored densely (rows x n).
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const std::vector<Constraint>& rows, const SolverOptions& opt)
      : opt_(opt), n_(lp.num_variables()) {
    const std::size_t m = rows.size();
    lo_.assign(lp.lower().begin(), lp.lower().end());
    hi_.assign(lp.upper().begin(), lp.upper().end());
    cost_.assign(lp.objective().begin(), lp.objective().end());
    val_.assign(n_, 0.0);
    col_var_.resize(n_);
    state_.resize(n_);
    basic_row_.assign(n_, kNone);
    nonbasic_col_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      col_var_[j] = j;
      nonbasic_col_[j] = j;
      state_[j] = initial_state(j);
      val_[j] = bound_value(j, state_[j]);
    }
    d_.assign(cost_.begin(), cost_.end());
    tab_.reserve(m * n_);
    for (const auto& c : rows) append_row(c);
  }

  Status optimize() {
    bland_after_ = iter_ + 3 * (rows() + n_);
    if (primal_feasible()) return primal(false);
    if (dual_feasible()) {
      Status s = dual();
      if (s != Status::optimal) return s;
      return primal(false);
    }
    Status s = primal(true);
    if (s != Status::optimal) return s;
    return primal(false);
  }

  void add_rows(const std::vector<Constraint>& rows) {
    for (const auto& c : rows) append_row(c);
  }

  // Rebuilds T, reduced costs and basic values from the original rows for the
  // current basis; used when accumulated round-off breaks feasibility.
  bool reinvert() {
    const std::size_t m = rows();
    const std::size_t width = m + n_;
    std::vector<double> aug(m * width, 0.0);
    // Column of variable v in [A | -I]: structural j -> A[:, j]; logical r -> -e_r.
    auto fill_column = [&](std::size_t v, std::size_t dest) {
      if (v < n_) {
        for (std::size_t r = 0; r < m; ++r) {
          for (const auto& t : orig_rows_[r]) {
            if (t.var == v) aug[r * width + dest] += t.coeff;
          }
        }
      } else {
        aug[(v - n_) * width + dest] = -1.0;
      }
    };
    for (std::size_t r = 0; r < m; ++r) fill_column(head_[r], r);
    for (std::size_t k = 0; k < n_; ++k) fill_column(col_var_[k], m + k);
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t best = c;
      double best_abs = std::abs(aug[c * width + c]);
      for (std::size_t r = c + 1; r < m; ++r) {
        const double a = std::abs(aug[r * width + c]);
        if (a > best_abs) {
          best_abs = a;
          best = r;
        }
      }
      if (best_abs < 1e-14) return false;
      if (best != c) {
        for (std::size_t j = 0; j < width; ++j) std::swap(aug[c * width + j], aug[best * width + j]);
      }
      const double inv = 1.0 / aug[c * width + c];
      for (std::size_t j = c; j < width; ++j) aug[c * width + j] *= inv;
      for (std::size_t r = 0; r < m; ++r) {
        if (r == c) continue;
        const double f = aug[r * width + c];
        if (f == 0.0) continue;
        for (std::size_t j = c; j < width; ++j) aug[r * width + j] -= f * aug[c * width + j];
      }
    }
    // M x_B + N x_N = 0  =>  x_B = -(M^-1 N) x_N.
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t k = 0; k < n_; ++k) tab_[r * n_ + k] = -aug[r * width + m + k];
    }
    recompute_reduced_costs();
    recompute_basic_values();
    return true;
  }

  void recompute_basic_values() {
    for (std::size_t r = 0; r < rows(); ++r) {
      const double* tr = &tab_[r * n_];
      double s = 0.0;
      for (std::size_t k = 0; k < n_; ++k) {
        if (tr[k] != 0.0) s += tr[k] * val_[col_var_[k]];
      }
      val_[head_[r]] = s;
    }
  }

  std::vector<double> structural_values() const { return {val_.begin(), val_.begin() + static_cast<std::ptrdiff_t>(n_)}; }

  std::size_t iterations() const noexcept { return iter_; }

  void fill_solution(LpSolution& sol) const {
    sol.x = structural_values();
    sol.duals.assign(rows(), 0.0);
    for (std::size_t r = 0; r < rows(); ++r) {
      const std::size_t v = n_ + r;
      if (basic_row_[v] == kNone) sol.duals[r] = d_[nonbasic_col_[v]];
    }
    sol.reduced_costs.assign(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (basic_row_[j] == kNone) sol.reduced_costs[j] = d_[nonbasic_col_[j]];
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < n_; ++j) obj += cost_[j] * sol.x[j];
    sol.objective_value = obj;
    sol.iterations = iter_;
  }

  const std::vector<std::vector<Term>>& original_rows() const { return orig_rows_; }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  static constexpr double kPrimalTol = 1e-9;
  static constexpr double kDualTol = 1e-9;

  std::size_t rows() const noexcept { return head_.size(); }

  NbState initial_state(std::size_t v) const {
    const bool has_lo = std::isfinite(lo_[v]);
    const bool has_hi = std::isfinite(hi_[v]);
    if (has_lo && has_hi && lo_[v] == hi_[v]) return NbState::fixed;
    if (has_lo) return NbState::lower;
    if (has_hi) return NbState::upper;
    return NbState::free_zero;
  }

  double bound_value(std::size_t v, NbState s) const {
    switch (s) {
      case NbState::lower:
      case NbState::fixed: return lo_[v];
      case NbState::upper: return hi_[v];
      case NbState::free_zero: return 0.0;
    }
    return 0.0;
  }

  void append_row(const Constraint& c) {
    const std::size_t v = lo_.size();
    double lo = -kInf;
    double hi = kInf;
    switch (c.relation) {
      case Relation::less_equal: hi = c.rhs; break;
      case Relation::greater_equal: lo = c.rhs; break;
      case Relation::equal: lo = hi = c.rhs; break;
    }
    lo_.push_back(lo);
    hi_.push_back(hi);
    cost_.push_back(0.0);
    const std::size_t r = rows();
    tab_.resize(tab_.size() + n_, 0.0);
    double* tr = &tab_[r * n_];
    double value = 0.0;
    auto terms = normalized_terms(c.terms);
    for (const auto& t : terms) {
      value += t.coeff * val_[t.var];
      if (basic_row_[t.var] == kNone) {
        tr[nonbasic_col_[t.var]] += t.coeff;
      } else {
        const double* src = &tab_[basic_row_[t.var] * n_];
        for (std::size_t k = 0; k < n_; ++k) tr[k] += t.coeff * src[k];
      }
    }
    val_.push_back(value);
    head_.push_back(v);
    basic_row_.push_back(r);
    nonbasic_col_.push_back(kNone);
    orig_rows_.push_back(std::move(terms));
  }

  bool primal_feasible() const {
    for (std::size_t r = 0; r < rows(); ++r) {
      const std::size_t v = head_[r];
      if (val_[v] < lo_[v] - kPrimalTol || val_[v] > hi_[v] + kPrimalTol) return false;
    }
    return true;
  }

  bool dual_feasible() const {
    for (std::size_t k = 0; k < n_; ++k) {
      switch (state_[k]) {
        case NbState::lower:
          if (d_[k] < -kDualTol) return false;
          break;
        case NbState::upper:
          if (d_[k] > kDualTol) return false;
          break;
        case NbState::free_zero:
          if (std::abs(d_[k]) > kDualTol) return false;
          break;
        case NbState::fixed: break;
      }
    }
    return true;
  }

  void recompute_reduced_costs() {
    for (std::size_t k = 0; k < n_; ++k) d_[k] = cost_[col_var_[k]];
    for (std::size_t r = 0; r < rows(); ++r) {
      const double c = cost_[head_[r]];
      if (c == 0.0) continue;
      const double* tr = &tab_[r * n_];
      for (std::size_t k = 0; k < n_; ++k) d_[k] += c * tr[k];
    }
  }

  bool use_bland() const noexcept { return iter_ >= bland_after_; }

  // Returns the column that should enter for pricing vector d, or kNone.
  std::size_t choose_entering(const std::vector<double>& d) const {
    std::size_t best = kNone;
    double best_score = 0.0;
    const bool bland = use_bland();
    for (std::size_t k = 0; k < n_; ++k) {
      const double dk = d[k];
      bool eligible = false;
      switch (state_[k]) {
        case NbState::lower: eligible = dk < -kDualTol; break;
        case NbState::upper: eligible = dk > kDualTol; break;
        case NbState::free_zero: eligible = std::abs(dk) > kDualTol; break;
        case NbState::fixed: break;
      }
      if (!eligible) continue;
      if (bland) {
        if (best == kNone || col_var_[k] < col_var_[best]) best = k;
      } else if (std::abs(dk) > best_score) {
        best_score = std::abs(dk);
        best = k;
      }
    }
    return best;
  }

  struct RatioResult {
    std::size_t row = kNone;
    double step = kInf;
    bool to_upper = false;  // bound the leaving basic variable lands on
    bool flip = false;
  };

  // phase1: infeasible basics may move toward (and stop at) the bound they violate.
  RatioResult primal_ratio(std::size_t k, double dir, bool phase1) const {
    RatioResult res;
    const double pt = opt_.pivot_tol;
    struct Cand {
      std::size_t row;
      double exact;
      double alpha;
      bool to_upper;
    };
    std::vector<Cand> cands;
    double relaxed_min = kInf;
    for (std::size_t r = 0; r < rows(); ++r) {
      const double alpha = tab_[r * n_ + k] * dir;
      if (std::abs(alpha) <= pt) continue;
      const std::size_t v = head_[r];
      const double x = val_[v];
      const bool below = x < lo_[v] - kPrimalTol;
      const bool above = x > hi_[v] + kPrimalTol;
      double target;
      bool to_upper;
      if (phase1 && below) {
        if (alpha < 0.0) continue;
        target = lo_[v];
        to_upper = false;
      } else if (phase1 && above) {
        if (alpha > 0.0) continue;
        target = hi_[v];
        to_upper = true;
      } else if (alpha > 0.0) {
        if (!std::isfinite(hi_[v])) continue;
        target = hi_[v];
        to_upper = true;
      } else {
        if (!std::isfinite(lo_[v])) continue;
        target = lo_[v];
        to_upper = false;
      }
      const double exact = std::max(0.0, (target - x) / alpha);
      const double relaxed = (target - x + (alpha > 0.0 ? kPrimalTol : -kPrimalTol)) / alpha;
      relaxed_min = std::min(relaxed_min, std::max(0.0, relaxed));
      cands.push_back({r, exact, alpha, to_upper});
    }
    const std::size_t v_in = col_var_[k];
    const double range = hi_[v_in] - lo_[v_in];
    if (!cands.empty()) {
      if (use_bland()) {
        double best = kInf;
        for (const auto& c : cands) best = std::min(best, c.exact);
        for (const auto& c : cands) {
          if (c.exact <= best + 1e-12 * (1.0 + best)) {
            if (res.row == kNone || head_[c.row] < head_[res.row]) {
              res.row = c.row;
              res.step = c.exact;
              res.to_upper = c.to_upper;
            }
          }
        }
      } else {
        double best_alpha = 0.0;
        for (const auto& c : cands) {
          if (c.exact <= relaxed_min && std::abs(c.alpha) > best_alpha) {
            best_alpha = std::abs(c.alpha);
            res.row = c.row;
            res.step = c.exact;
            res.to_upper = c.to_upper;
          }
        }
      }
    }
    if (std::isfinite(range) && range <= res.step) {
      res.row = kNone;
      res.step = range;
      res.flip = true;
    }
    return res;
  }

  void pivot(std::size_t r, std::size_t k) {
    double* pr = &tab_[r * n_];
    const double inv = 1.0 / pr[k];
    nz_.clear();
    for (std::size_t j = 0; j < n_; ++j) {
      if (pr[j] != 0.0) {
        pr[j] = -pr[j] * inv;
        nz_.push_back(j);
      }
    }
    pr[k] = inv;
    const bool sparse = nz_.size() * 3 < n_;
    auto update = [&](double* row) {
      const double f = row[k];
      if (f == 0.0) return;
      row[k] = 0.0;
      if (sparse) {
        for (std::size_t j : nz_) row[j] += f * pr[j];
      } else {
        for (std::size_t j = 0; j < n_; ++j) row[j] += f * pr[j];
      }
    };
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i != r) update(&tab_[i * n_]);
    }
    update(d_.data());

    const std::size_t entering = col_var_[k];
    const std::size_t leaving = head_[r];
    head_[r] = entering;
    col_var_[k] = leaving;
    basic_row_[entering] = r;
    nonbasic_col_[entering] = kNone;
    basic_row_[leaving] = kNone;
    nonbasic_col_[leaving] = k;
  }

  void move_entering(std::size_t k, double delta) {
    if (delta == 0.0) return;
    val_[col_var_[k]] += delta;
    for (std::size_t r = 0; r < rows(); ++r) {
      const double a = tab_[r * n_ + k];
      if (a != 0.0) val_[head_[r]] += a * delta;
    }
  }

  void settle_leaving(std::size_t k, bool to_upper) {
    const std::size_t v = col_var_[k];
    if (lo_[v] == hi_[v]) {
      state_[k] = NbState::fixed;
    } else {
      state_[k] = to_upper ? NbState::upper : NbState::lower;
    }
    val_[v] = to_upper ? hi_[v] : lo_[v];
  }

  Status primal(bool phase1) {
    std::vector<double> d1;
    while (true) {
      if (iter_ >= opt_.max_iterations) return Status::iteration_limit;
      const std::vector<double>* pricing = &d_;
      if (phase1) {
        d1.assign(n_, 0.0);
        bool any = false;
        for (std::size_t r = 0; r < rows(); ++r) {
          const std::size_t v = head_[r];
          double sign = 0.0;
          if (val_[v] < lo_[v] - kPrimalTol) sign = -1.0;
          if (val_[v] > hi_[v] + kPrimalTol) sign = 1.0;
          if (sign == 0.0) continue;
          any = true;
          const double* tr = &tab_[r * n_];
          for (std::size_t k = 0; k < n_; ++k) d1[k] += sign * tr[k];
        }
        if (!any) return Status::optimal;
        pricing = &d1;
      }
      const std::size_t k = choose_entering(*pricing);
      if (k == kNone) return phase1 ? Status::infeasible : Status::optimal;
      const double dir = (*pricing)[k] < 0.0 ? 1.0 : -1.0;
      const RatioResult rr = primal_ratio(k, dir, phase1);
      if (rr.row == kNone && !rr.flip) {
        // Phase 1 always has a breakpoint in exact arithmetic; treat its absence as stalled.
        return phase1 ? Status::infeasible : Status::unbounded;
      }
      move_entering(k, dir * rr.step);
      ++iter_;
      if (rr.flip) {
        state_[k] = state_[k] == NbState::lower ? NbState::upper : NbState::lower;
        val_[col_var_[k]] = state_[k] == NbState::upper ? hi_[col_var_[k]] : lo_[col_var_[k]];
        continue;
      }
      pivot(rr.row, k);
      settle_leaving(k, rr.to_upper);
    }
  }

  Status dual() {
    while (true) {
      if (iter_ >= opt_.max_iterations) return Status::iteration_limit;
      const bool bland = use_bland();
      std::size_t r_out = kNone;
      double worst = 0.0;
      for (std::size_t r = 0; r < rows(); ++r) {
        const std::size_t v = head_[r];
        double infeas = 0.0;
        if (val_[v] < lo_[v] - kPrimalTol) infeas = lo_[v] - val_[v];
        if (val_[v] > hi_[v] + kPrimalTol) infeas = val_[v] - hi_[v];
        if (infeas <= 0.0) continue;
        if (bland) {
          if (r_out == kNone || v < head_[r_out]) r_out = r;
        } else if (infeas > worst) {
          worst = infeas;
          r_out = r;
        }
      }
      if (r_out == kNone) return Status::optimal;
      const std::size_t v_out = head_[r_out];
      const bool to_upper = val_[v_out] > hi_[v_out];
      const double target = to_upper ? hi_[v_out] : lo_[v_out];
      const double delta = target - val_[v_out];
      const double s = delta > 0.0 ? 1.0 : -1.0;
      const double* tr = &tab_[r_out * n_];

      std::size_t k_in = kNone;
      double relaxed_min = kInf;
      for (std::size_t k = 0; k < n_; ++k) {
        const double a = tr[k];
        if (std::abs(a) <= opt_.pivot_tol) continue;
        double dk;
        switch (state_[k]) {
          case NbState::lower:
            if (a * s <= 0.0) continue;
            dk = std::max(d_[k], 0.0);
            break;
          case NbState::upper:
            if (a * s >= 0.0) continue;
            dk = std::max(-d_[k], 0.0);
            break;
          case NbState::free_zero: dk = std::abs(d_[k]); break;
          default: continue;
        }
        relaxed_min = std::min(relaxed_min, (dk + kDualTol) / std::abs(a));
      }
      if (!std::isfinite(relaxed_min)) return Status::infeasible;
      double best_a = 0.0;
      double best_ratio = kInf;
      for (std::size_t k = 0; k < n_; ++k) {
        const double a = tr[k];
        if (std::abs(a) <= opt_.pivot_tol) continue;
        double dk;
        switch (state_[k]) {
          case NbState::lower:
            if (a * s <= 0.0) continue;
            dk = std::max(d_[k], 0.0);
            break;
          case NbState::upper:
            if (a * s >= 0.0) continue;
            dk = std::max(-d_[k], 0.0);
            break;
          case NbState::free_zero: dk = std::abs(d_[k]); break;
          default: continue;
        }
        const double ratio = dk / std::abs(a);
        if (bland) {
          if (ratio < best_ratio - 1e-12 * (1.0 + best_ratio) ||
              (ratio <= best_ratio + 1e-12 * (1.0 + best_ratio) && col_var_[k] < col_var_[k_in])) {
            if (k_in == kNone || ratio < best_ratio + 1e-12 * (1.0 + best_ratio)) {
              best_ratio = std::min(best_ratio, ratio);
              k_in = k;
            }
          }
        } else if (ratio <= relaxed_min && std::abs(a) > best_a) {
          best_a = std::abs(a);
          k_in = k;
        }
      }
      if (k_in == kNone) return Status::infeasible;
      move_entering(k_in, delta / tr[k_in]);
      ++iter_;
      pivot(r_out, k_in);
      settle_leaving(k_in, to_upper);
    }
  }

  SolverOptions opt_;
  std::size_t n_;
  std::vector<double> tab_;
  std::vector<double> lo_, hi_, cost_, val_;
  std::vector<std::size_t> head_;
  std::vector<std::size_t> col_var_;
  std::vector<NbState> state_;
  std::vector<std::size_t> basic_row_;
  std::vector<std::size_t> nonbasic_col_;
  std::vector<double> d_;
  std::vector<std::vector<Term>> orig_rows_;
  std::vector<std::size_t> nz_;
  std::size_t iter_ = 0;
  std::size_t bland_after_ = 0;
};

double max_row_violation(const Simplex& sx, const LinearProgram& lp, const std::vector<Constraint>& rows,
                         std::span<const double> x) {
  (void)sx;
  double worst = 0.0;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    worst = std::max(worst, lp.lower()[j] - x[j]);
    worst = std::max(worst, x[j] - lp.upper()[j]);
  }
  for (const auto& c : rows) worst = std::max(worst, constraint_violation(c, x));
  return worst;
}

// Runs optimize() and, if round-off left the point infeasible against the
// original rows, rebuilds the tableau once and continues.
Status optimize_checked(Simplex& sx, const LinearProgram& lp, const std::vector<Constraint>& rows,
                        const SolverOptions& opt, bool warm) {
  (void)warm;
  Status st = sx.optimize();
  if (st != Status::optimal) return st;
  sx.recompute_basic_values();
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto x = sx.structural_values();
    if (max_row_violation(sx, lp, rows, x) <= 0.5 * opt.feasibility_tol) return st;
    if (!sx.reinvert()) return Status::iteration_limit;
    st = sx.optimize();
    if (st != Status::optimal) return st;
    sx.recompute_basic_values();
  }
  const auto x = sx.structural_values();
  return max_row_violation(sx, lp, rows, x) <= opt.feasibility_tol ? st : Status::iteration_limit;
}

struct Deduped {
  std::vector<Constraint> rows;
  std::vector<std::size_t> origin;  // kept row -> original index
};

Deduped dedupe(const std::vector<Constraint>& rows) {
  using Key = std::tuple<std::vector<std::pair<std::size_t, double>>, int, double>;
  std::map<Key, std::size_t> seen;
  Deduped out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto terms = normalized_terms(rows[r].terms);
    std::vector<std::pair<std::size_t, double>> flat;
    flat.reserve(terms.size());
    for (const auto& t : terms) flat.emplace_back(t.var, t.coeff);
    Key key{std::move(flat), static_cast<int>(rows[r].relation), rows[r].rhs};
    if (seen.emplace(std::move(key), out.rows.size()).second) {
      out.rows.push_back(rows[r]);
      out.origin.push_back(r);
    }
  }
  return out;
}

}  // namespace

LpSolution solve(const LinearProgram& lp, const SolverOptions& options) {
  lp.validate();
  Deduped dd = dedupe(lp.constraints());
  Simplex sx(lp, dd.rows, options);
  LpSolution sol;
  sol.status = optimize_checked(sx, lp, dd.rows, options, false);
  LpSolution raw;
  sx.fill_solution(raw);
  sol.x = std::move(raw.x);
  sol.objective_value = raw.objective_value;
  sol.iterations = raw.iterations;
  sol.reduced_costs = std::move(raw.reduced_costs);
  sol.duals.assign(lp.num_constraints(), 0.0);
  for (std::size_t r = 0; r < dd.origin.size(); ++r) sol.duals[dd.origin[r]] = raw.duals[r];
  return sol;
}

LpSolution solve_lazy(const LinearProgram& base, const ViolationOracle& oracle, std::size_t max_rounds,
                      const SolverOptions& options) {
  base.validate();
  Deduped dd = dedupe(base.constraints());
  std::vector<Constraint> rows = dd.rows;
  Simplex sx(base, rows, options);
  LpSolution sol;
  sol.status = optimize_checked(sx, base, rows, options, false);
  std::size_t rounds = 0;
  std::size_t added = 0;
  while (sol.status == Status::optimal) {
    const auto x = sx.structural_values();
    std::vector<Constraint> cuts;
    for (auto& c : oracle(x)) {
      for (const auto& t : c.terms) {
        if (t.var >= base.num_variables()) throw Error(ErrorCode::invalid_parameters, "oracle row references unknown variable");
      }
      if (constraint_violation(c, x) > options.feasibility_tol) cuts.push_back(std::move(c));
    }
    if (cuts.empty()) break;
    if (rounds >= max_rounds) {
      throw Error(ErrorCode::round_limit, "lazy constraint loop exceeded " + std::to_string(max_rounds) + " rounds");
    }
    ++rounds;
    added += cuts.size();
    sx.add_rows(cuts);
    rows.insert(rows.end(), cuts.begin(), cuts.end());
    sol.status = optimize_checked(sx, base, rows, options, true);
  }
  LpSolution raw;
  sx.fill_solution(raw);
  raw.status = sol.status;
  raw.rounds = rounds;
  raw.added_constraints = added;
  // Base rows keep their original indexing; appended rows follow.
  std::vector<double> duals(base.num_constraints() + added, 0.0);
  for (std::size_t r = 0; r < dd.origin.size(); ++r) duals[dd.origin[r]] = raw.duals[r];
  for (std::size_t r = dd.origin.size(); r < raw.duals.size(); ++r) {
    duals[base.num_constraints() + (r - dd.origin.size())] = raw.duals[r];
  }
  raw.duals = std::move(duals);
  return raw;
}

std::string to_text(const LinearProgram& lp) {
  std::ostringstream os;
  os.precision(17);
  auto term_list = [&](const std::vector<Term>& terms) {
    bool first = true;
    for (const auto& t : terms) {
      if (!first) os << (t.coeff < 0 ? " - " : " + ");
      else if (t.coeff < 0) os << "-";
      os << std::abs(t.coeff) << " x" << t.var;
      first = false;
    }
    if (first) os << "0";
  };
  os << "minimize:";
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    if (lp.objective()[j] != 0.0) os << " " << (lp.objective()[j] < 0 ? "-" : "+") << " " << std::abs(lp.objective()[j]) << " x" << j;
  }
  os << "\n";
  for (std::size_t r = 0; r < lp.num_constraints(); ++r) {
    const auto& c = lp.constraints()[r];
    os << "r" << r << ": ";
    term_list(c.terms);
    switch (c.relation) {
      case Relation::less_equal: os << " <= "; break;
      case Relation::greater_equal: os << " >= "; break;
      case Relation::equal: os << " = "; break;
    }
    os << c.rhs << "\n";
  }
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const double lo = lp.lower()[j];
    const double hi = lp.upper()[j];
    if (std::isinf(lo) && std::isinf(hi)) {
      os << "x" << j << " free\n";
    } else {
      os << (std::isinf(lo) ? std::string("-inf") : std::to_string(lo)) << " <= x" << j
         << " <= " << (std::isinf(hi) ? std::string("inf") : std::to_string(hi)) << "\n";
    }
  }
  return os.str();
}

}  // namespace hullmin::lp
