#include "hullmin/contour.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "hullmin/error.hpp"
#include "hullmin/parallel.hpp"

namespace hullmin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ConvexBody prime_body(const DiscreteProblem& dp, const std::vector<double>& b) {
  std::vector<HalfSpace> hs;
  hs.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) hs.push_back({dp.quadrature.directions[i], b[i]});
  return ConvexBody::from_halfspaces(dp.dim(), std::move(hs));
}

double objective_of(const DiscreteProblem& dp, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) s += dp.quadrature.weights[i] * b[i];
  return s;
}

}  // namespace

const char* to_string(Formulation f) noexcept { return f == Formulation::general ? "general" : "two_d"; }

Formulation formulation_from_string(const std::string& name) {
  if (name == "general") return Formulation::general;
  if (name == "two_d" || name == "2d") return Formulation::two_d;
  throw Error(ErrorCode::parse_error, "unknown formulation '" + name + "'");
}

const char* to_string(CouplingMode c) noexcept { return c == CouplingMode::full ? "full" : "lazy"; }

void DiscreteProblem::validate() const {
  quadrature.validate();
  if (values.size() != quadrature.size()) {
    throw Error(ErrorCode::dimension_mismatch, "requirement values do not match the quadrature size");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "non-finite requirement value");
  }
  if (!(lipschitz >= 0.0) || !(sup_norm >= 0.0)) throw Error(ErrorCode::invalid_parameters, "L_C and |C| must be >= 0");
  if (formulation == Formulation::two_d && dim() != 2) {
    throw Error(ErrorCode::dimension_mismatch, "the 2D formulation needs a 2D quadrature");
  }
}

DiscreteProblem make_problem(const Quadrature& q, const Requirement& req, Formulation f) {
  if (req.dim != q.dim) throw Error(ErrorCode::dimension_mismatch, "requirement and quadrature dimensions differ");
  DiscreteProblem dp;
  dp.quadrature = q;
  dp.formulation = f;
  dp.values.reserve(q.size());
  double sup = req.sup_norm;
  for (const auto& u : q.directions) {
    dp.values.push_back(req(u));
    sup = std::max(sup, std::abs(dp.values.back()));
  }
  dp.lipschitz = req.lipschitz;
  dp.sup_norm = sup;
  dp.lipschitz_certified = req.lipschitz_certified;
  dp.validate();
  return dp;
}

// ---- general formulation ----------------------------------------------------

std::vector<lp::Constraint> GeneralModel::violated_coupling(std::span<const double> x, double tol,
                                                            std::size_t per_direction) const {
  std::vector<lp::Constraint> out;
  std::vector<std::pair<double, std::size_t>> worst;
  for (std::size_t j = 0; j < m; ++j) {
    const auto u = directions[j].coords();
    const double bj = x[b_var(j)];
    worst.clear();
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += x[p_var(i, k)] * u[k];
      const double excess = s - bj;
      if (excess > tol) worst.emplace_back(excess, i);
    }
    if (worst.empty()) continue;
    const std::size_t keep = std::min(per_direction, worst.size());
    std::partial_sort(worst.begin(), worst.begin() + static_cast<std::ptrdiff_t>(keep), worst.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
    for (std::size_t t = 0; t < keep; ++t) {
      const std::size_t i = worst[t].second;
      lp::Constraint c;
      c.relation = lp::Relation::less_equal;
      c.rhs = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        if (u[k] != 0.0) c.terms.push_back({p_var(i, k), u[k]});
      }
      c.terms.push_back({b_var(j), -1.0});
      out.push_back(std::move(c));
    }
  }
  return out;
}

GeneralModel build_general(const DiscreteProblem& dp, CouplingMode mode, std::size_t neighbours) {
  dp.validate();
  GeneralModel g;
  g.m = dp.size();
  g.dim = dp.dim();
  g.directions = dp.quadrature.directions;
  const std::size_t m = g.m;
  const std::size_t n = g.dim;
  g.lp = lp::LinearProgram(m * n + m);
  for (std::size_t j = 0; j < m; ++j) {
    g.lp.set_cost(g.b_var(j), dp.quadrature.weights[j]);
    g.lp.set_bounds(g.b_var(j), dp.values[j], lp::kInf);
  }
  auto coupling = [&](std::size_t i, std::size_t j) {
    const auto u = g.directions[j].coords();
    std::vector<lp::Term> t;
    for (std::size_t k = 0; k < n; ++k) {
      if (u[k] != 0.0) t.push_back({g.p_var(i, k), u[k]});
    }
    t.push_back({g.b_var(j), -1.0});
    g.lp.add_constraint(std::move(t), lp::Relation::less_equal, 0.0);
  };
  for (std::size_t i = 0; i < m; ++i) {
    const auto u = g.directions[i].coords();
    std::vector<lp::Term> t;
    for (std::size_t k = 0; k < n; ++k) {
      if (u[k] != 0.0) t.push_back({g.p_var(i, k), u[k]});
    }
    g.lp.add_constraint(std::move(t), lp::Relation::greater_equal, dp.values[i]);
  }
  if (mode == CouplingMode::full) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) coupling(i, j);
    }
    return g;
  }
  if (neighbours == 0) neighbours = 2 * n;
  neighbours = std::min(neighbours, m - 1);
  std::vector<std::pair<double, std::size_t>> near(m);
  for (std::size_t i = 0; i < m; ++i) {
    coupling(i, i);
    if (neighbours == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      near[j] = {j == i ? std::numeric_limits<double>::infinity()
                        : distance(g.directions[i].coords(), g.directions[j].coords()),
                 j};
    }
    std::partial_sort(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(neighbours), near.end());
    for (std::size_t t = 0; t < neighbours; ++t) coupling(i, near[t].second);
  }
  return g;
}

// ---- 2D formulation ---------------------------------------------------------

std::vector<std::size_t> angle_order_2d(std::span<const Direction> dirs) {
  const std::size_t m = dirs.size();
  for (const auto& u : dirs) {
    if (u.dim() != 2) throw Error(ErrorCode::dimension_mismatch, "2D formulation needs 2D directions");
  }
  if (m < 3) throw Error(ErrorCode::mesh_too_coarse, "fewer than three directions leave a gap of at least pi");
  std::vector<double> theta(m);
  for (std::size_t i = 0; i < m; ++i) theta[i] = dirs[i].angle();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return theta[a] < theta[b]; });
  for (std::size_t k = 0; k < m; ++k) {
    const double prev = theta[order[(k + m - 1) % m]];
    double gap = theta[order[k]] - prev;
    if (k == 0) gap += kTwoPi;
    if (gap >= std::numbers::pi) throw Error(ErrorCode::mesh_too_coarse, "angular gap of at least pi between directions");
    if (gap < 1e-8) throw Error(ErrorCode::near_parallel, "directions closer than 1e-8 rad");
  }
  return order;
}

TwoDModel build_2d(const DiscreteProblem& dp) {
  dp.validate();
  if (dp.dim() != 2) throw Error(ErrorCode::dimension_mismatch, "the 2D formulation needs a 2D quadrature");
  TwoDModel t;
  t.order = angle_order_2d(dp.quadrature.directions);
  const std::size_t m = t.order.size();
  t.lp = lp::LinearProgram(m);
  std::vector<Direction> u;
  u.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    u.push_back(dp.quadrature.directions[t.order[k]]);
    t.lp.set_cost(k, dp.quadrature.weights[t.order[k]]);
    t.lp.set_bounds(k, dp.values[t.order[k]], lp::kInf);
  }
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t nx = (k + 1) % m;
    const std::size_t pv = (k + m - 1) % m;
    const double c_next = dot(u[nx].coords(), u[k].coords());
    const double c_prev = dot(u[pv].coords(), u[k].coords());
    // sin of the ccw angle from u_k to u_next, via the 2D cross product
    const double s_next = u[k][0] * u[nx][1] - u[k][1] * u[nx][0];
    const double s_prev = u[pv][0] * u[k][1] - u[pv][1] * u[k][0];
    std::vector<lp::Term> terms = {{nx, 1.0 / s_next}, {pv, 1.0 / s_prev}, {k, -c_next / s_next - c_prev / s_prev}};
    t.lp.add_constraint(std::move(terms), lp::Relation::greater_equal, 0.0);
  }
  return t;
}

std::vector<double> side_lengths_2d(std::span<const Direction> sorted_dirs, std::span<const double> sorted_b) {
  const std::size_t m = sorted_dirs.size();
  if (sorted_b.size() != m) throw Error(ErrorCode::dimension_mismatch, "support values and directions differ in length");
  std::vector<double> len(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& u = sorted_dirs[k];
    const auto& un = sorted_dirs[(k + 1) % m];
    const auto& up = sorted_dirs[(k + m - 1) % m];
    const double s_next = u[0] * un[1] - u[1] * un[0];
    const double s_prev = up[0] * u[1] - up[1] * u[0];
    len[k] = (sorted_b[(k + 1) % m] - dot(un.coords(), u.coords()) * sorted_b[k]) / s_next +
             (sorted_b[(k + m - 1) % m] - dot(up.coords(), u.coords()) * sorted_b[k]) / s_prev;
  }
  return len;
}

// ---- solving ----------------------------------------------------------------

ContourSolution assemble_solution(const DiscreteProblem& dp, const GeneralModel& model, const lp::LpSolution& sol) {
  if (sol.status != lp::Status::optimal) {
    throw Error(ErrorCode::solver_failed, std::string("LP finished with status ") + lp::to_string(sol.status));
  }
  ContourSolution out;
  out.dim = dp.dim();
  out.formulation = Formulation::general;
  const std::size_t m = model.m;
  out.B.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.B[j] = sol.x[model.b_var(j)];
  out.body_prime = prime_body(dp, out.B);
  out.witness_points.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    Point p(model.dim);
    for (std::size_t k = 0; k < model.dim; ++k) p[k] = sol.x[model.p_var(i, k)];
    out.witness_points[i] = std::move(p);
  }
  // In 2D the witnesses are moved to the midpoint of the face of B' they
  // certify, which picks a canonical member of the optimal face.
  if (out.dim == 2) {
    const auto& verts = out.body_prime->points();
    for (std::size_t i = 0; i < m; ++i) {
      const auto& u = dp.quadrature.directions[i];
      double h = -std::numeric_limits<double>::infinity();
      for (const auto& v : verts) h = std::max(h, v[0] * u[0] + v[1] * u[1]);
      const double tol = 1e-9 * std::max(1.0, std::abs(h));
      const Point* lo = nullptr;
      const Point* hi = nullptr;
      double tlo = 0.0, thi = 0.0;
      for (const auto& v : verts) {
        if (v[0] * u[0] + v[1] * u[1] < h - tol) continue;
        const double t = -v[0] * u[1] + v[1] * u[0];
        if (!lo || t < tlo) lo = &v, tlo = t;
        if (!hi || t > thi) hi = &v, thi = t;
      }
      if (lo) out.witness_points[i] = {0.5 * ((*lo)[0] + (*hi)[0]), 0.5 * ((*lo)[1] + (*hi)[1])};
    }
  }
  double r = 0.0;
  for (const auto& p : out.witness_points) r = std::max(r, norm(p));
  std::vector<Point> star = out.witness_points;
  if (out.dim == 2) star = convex_hull_2d(std::move(star));
  out.body_star = ConvexBody::from_points(std::move(star));
  out.objective = objective_of(dp, out.B);
  out.radius_bound = r;
  out.stats.iterations = sol.iterations;
  out.stats.rounds = sol.rounds;
  out.stats.added_constraints = sol.added_constraints;
  out.stats.rows = model.lp.num_constraints() + sol.added_constraints;
  out.stats.columns = model.lp.num_variables();
  return out;
}

ContourSolution assemble_solution(const DiscreteProblem& dp, const TwoDModel& model, const lp::LpSolution& sol) {
  if (sol.status != lp::Status::optimal) {
    throw Error(ErrorCode::solver_failed, std::string("LP finished with status ") + lp::to_string(sol.status));
  }
  ContourSolution out;
  out.dim = 2;
  out.formulation = Formulation::two_d;
  out.B.resize(model.order.size());
  for (std::size_t k = 0; k < model.order.size(); ++k) out.B[model.order[k]] = sol.x[k];
  out.body_prime = prime_body(dp, out.B);
  out.objective = objective_of(dp, out.B);
  out.radius_bound = *out.body_prime->radius();
  out.stats.iterations = sol.iterations;
  out.stats.rows = model.lp.num_constraints();
  out.stats.columns = model.lp.num_variables();
  return out;
}

ContourSolution solve_contour(const DiscreteProblem& dp, const SolveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  ContourSolution out;
  if (dp.formulation == Formulation::two_d) {
    const TwoDModel model = build_2d(dp);
    out = assemble_solution(dp, model, lp::solve(model.lp, options.lp));
  } else {
    const GeneralModel model = build_general(dp, options.coupling, options.neighbours);
    lp::LpSolution sol;
    if (options.coupling == CouplingMode::full) {
      sol = lp::solve(model.lp, options.lp);
    } else {
      const double tol = options.lp.feasibility_tol;
      const std::size_t per = options.cuts_per_direction;
      sol = lp::solve_lazy(
          model.lp, [&](std::span<const double> x) { return model.violated_coupling(x, tol, per); }, options.max_rounds,
          options.lp);
    }
    out = assemble_solution(dp, model, sol);
  }
  out.stats.seconds = seconds_since(t0);
  return out;
}

ConvexBody inflate(const ConvexBody& body, std::span<const Direction> dirs, double e) {
  if (!(e >= 0.0)) throw Error(ErrorCode::negative_inflation, "inflation distance must be >= 0");
  if (dirs.empty()) throw Error(ErrorCode::invalid_argument, "inflation needs at least one direction");
  std::vector<double> h(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) { h[i] = body.support(dirs[i]); });
  std::vector<HalfSpace> hs;
  hs.reserve(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) hs.push_back({dirs[i], h[i] + e});
  return ConvexBody::from_halfspaces(body.dim(), std::move(hs));
}

FineGrid fine_grid(std::size_t dim) {
  if (dim == 2) {
    const auto q = uniform_2d(4096);
    return {q.directions, q.dispersion_bound};
  }
  const auto q = cubed_hypersphere(dim, dim == 3 ? 64 : 8);
  return {q.directions, q.dispersion_bound};
}

// ---- certified bounds -------------------------------------------------------

BoundInputs bound_inputs(const DiscreteProblem& dp) {
  return {dp.dim(), dp.quadrature.eps_bound, dp.quadrature.dispersion_bound, dp.lipschitz, dp.sup_norm};
}

std::optional<std::string> hypotheses_failure(const BoundInputs& in) {
  const double limit = 1.0 / (10.0 * std::sqrt(static_cast<double>(in.dim)));
  if (in.eps > limit) return "eps = " + std::to_string(in.eps) + " exceeds 1/(10 sqrt N) = " + std::to_string(limit);
  if (in.delta > limit) return "delta = " + std::to_string(in.delta) + " exceeds 1/(10 sqrt N) = " + std::to_string(limit);
  return std::nullopt;
}

CertifiedBounds certified_bounds(const BoundInputs& in, double gamma) {
  if (!(gamma >= 0.0)) throw Error(ErrorCode::invalid_parameters, "gamma must be >= 0");
  if (auto why = hypotheses_failure(in)) throw Error(ErrorCode::hypotheses_unmet, *why);
  const double rn = std::sqrt(static_cast<double>(in.dim));
  const double cg = in.sup_norm + gamma;
  CertifiedBounds b;
  b.gamma = gamma;
  b.e_inflation = in.delta * (in.lipschitz + 12.0 * rn * cg);
  b.beta = 4.0 * b.e_inflation + 32.0 * rn * cg * in.eps;
  b.R_bound = 12.0 * rn * cg;
  b.vcp_vdp_gap_upper = 12.0 * rn * in.sup_norm * (2.0 * in.eps + in.delta) + in.lipschitz * in.delta;
  b.vdp_vcp_gap_upper = 8.0 * rn * in.sup_norm * in.eps;
  return b;
}

CertifiedBounds certified_bounds(const DiscreteProblem& dp, double gamma) { return certified_bounds(bound_inputs(dp), gamma); }

// ---- diagnostics ------------------------------------------------------------

ViolationReport violation(const ConvexBody& body, const Requirement& req, std::span<const Direction> probes,
                          double probe_dispersion) {
  if (probes.empty()) throw Error(ErrorCode::invalid_argument, "violation needs probe directions");
  std::vector<double> gap(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) { gap[i] = req(probes[i]) - body.support(probes[i]); });
  ViolationReport r;
  r.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < gap.size(); ++i) {
    if (gap[i] > r.max_violation) {
      r.max_violation = gap[i];
      r.argmax = i;
    }
  }
  r.probe_dispersion = probe_dispersion;
  const double radius = body.radius().value_or(std::numeric_limits<double>::infinity());
  r.correction = probe_dispersion == 0.0 ? 0.0 : (req.lipschitz + radius) * probe_dispersion;
  return r;
}

MeanWidth mean_width(const ConvexBody& body, const Quadrature& q) {
  if (body.dim() != q.dim) throw Error(ErrorCode::dimension_mismatch, "body and quadrature dimensions differ");
  std::vector<double> h(q.size());
  parallel_for(q.size(), [&](std::size_t i) { h[i] = body.support(q.directions[i]); });
  MeanWidth mw;
  for (std::size_t i = 0; i < q.size(); ++i) mw.halved += q.weights[i] * h[i];
  mw.error_bound = q.eps_bound * 2.0 * support_lipschitz_bound(body);
  if (q.dim == 2) mw.perimeter = 2.0 * std::numbers::pi * mw.halved;
  return mw;
}

ConvexBody naive_body(const DiscreteProblem& dp) {
  dp.validate();
  std::vector<HalfSpace> hs;
  hs.reserve(dp.size());
  for (std::size_t i = 0; i < dp.size(); ++i) hs.push_back({dp.quadrature.directions[i], dp.values[i]});
  return ConvexBody::from_halfspaces(dp.dim(), std::move(hs));
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (!(y[i] > 1e-12) || !(x[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double nn = static_cast<double>(n);
  const double den = nn * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (nn * sxy - sx * sy) / den;
}

std::vector<StudyRow> convergence_study(const Requirement& req, std::span<const std::size_t> m_values,
                                        const StudyOptions& options) {
  if (req.dim != 2) throw Error(ErrorCode::invalid_dim, "convergence studies are 2D only");
  if (m_values.empty()) throw Error(ErrorCode::invalid_argument, "no m values");
  if (options.probe_factor == 0) throw Error(ErrorCode::invalid_parameters, "probe_factor must be >= 1");
  struct Result {
    double violation;
    double objective;
    double perimeter;
  };
  std::vector<Result> res(m_values.size());
  parallel_for(m_values.size(), [&](std::size_t t) {
    const std::size_t m = m_values[t];
    const auto q = uniform_2d(m);
    const auto dp = make_problem(q, req, options.formulation);
    const auto sol = solve_contour(dp, options.solve);
    const std::size_t probes = options.probe_factor * m;
    const auto grid = uniform_2d(probes);
    const auto v = violation(sol.prime(), req, grid.directions, grid.dispersion_bound);
    res[t] = {v.max_violation, sol.objective, polygon_perimeter(sol.prime().points())};
  });
  double reference;
  if (options.reference_perimeter) {
    reference = *options.reference_perimeter;
  } else if (req.optimal_perimeter) {
    reference = *req.optimal_perimeter;
  } else {
    const auto it = std::max_element(m_values.begin(), m_values.end());
    reference = res[static_cast<std::size_t>(it - m_values.begin())].perimeter;
  }
  const StudyMetric metric = options.metric.value_or(req.name == "spikes" ? StudyMetric::violation : StudyMetric::perimeter_gap);
  std::vector<StudyRow> rows(m_values.size());
  std::vector<double> xs, ys;
  for (std::size_t t = 0; t < m_values.size(); ++t) {
    rows[t].m = m_values[t];
    rows[t].violation = res[t].violation;
    rows[t].objective = res[t].objective;
    rows[t].perimeter_gap = std::abs(res[t].perimeter - reference);
    xs.push_back(static_cast<double>(m_values[t]));
    ys.push_back(metric == StudyMetric::violation ? rows[t].violation : rows[t].perimeter_gap);
    rows[t].slope_partial = loglog_slope(xs, ys);
  }
  return rows;
}

}  // namespace hullmin
