#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hullmin/contour.hpp"
#include "hullmin/error.hpp"
#include "hullmin/geometry.hpp"
#include "hullmin/io.hpp"
#include "hullmin/quadrature.hpp"
#include "hullmin/render.hpp"
#include "hullmin/requirement.hpp"

namespace fs = std::filesystem;
using namespace hullmin;
using io::json;

namespace {

enum Exit { ok = 0, other = 1, bad_flags = 2, bad_spec = 3, solver = 4, invalid = 5, bad_dim = 6 };

struct CliFailure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliFailure{code, msg}; }

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_dim:
    case ErrorCode::invalid_m:
    case ErrorCode::invalid_s:
      return bad_flags;
    case ErrorCode::invalid_parameters:
    case ErrorCode::parse_error:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::direction_not_tabulated:
    case ErrorCode::hypotheses_unmet:
    case ErrorCode::mesh_too_coarse:
    case ErrorCode::near_parallel:
    case ErrorCode::empty_targets:
    case ErrorCode::degenerate_sample:
    case ErrorCode::negative_inflation:
      return bad_spec;
    case ErrorCode::solver_failed:
    case ErrorCode::round_limit:
    case ErrorCode::empty_body:
    case ErrorCode::unbounded_polygon:
    case ErrorCode::unbounded_support:
      return solver;
    default:
      return other;
  }
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void distinct_paths(const std::string& out, std::initializer_list<std::string> ins) {
  if (out.empty()) return;
  for (const auto& in : ins) {
    if (!in.empty() && fs::weakly_canonical(in) == fs::weakly_canonical(out)) fail(bad_flags, "output path equals an input path: " + out);
  }
}

// ---- requirement tables ----------------------------------------------------

struct LoadedRequirement {
  std::vector<TableRow> rows;
  io::RequirementMeta meta;
  Requirement table;                   // lookup at tabulated directions
  std::optional<Requirement> analytic; // evaluable everywhere
};

LoadedRequirement load_requirement(const std::string& path, std::optional<double> lipschitz_override) {
  LoadedRequirement r;
  r.rows = io::read_table_csv(path);
  const auto mp = io::meta_path(path);
  if (fs::exists(mp)) {
    r.meta = io::requirement_meta_from_json(io::read_json_file(mp));
  } else {
    r.meta.dim = r.rows.front().direction.dim();
    r.meta.kind = "table";
    r.meta.lipschitz = estimate_lipschitz(r.rows);
    r.meta.lipschitz_certified = false;
    for (const auto& row : r.rows) r.meta.sup_norm = std::max(r.meta.sup_norm, std::abs(row.value));
  }
  if (lipschitz_override) {
    r.meta.lipschitz = *lipschitz_override;
    r.meta.lipschitz_certified = true;
  }
  if (r.meta.dim != r.rows.front().direction.dim()) fail(bad_spec, "sidecar dimension differs from the table");
  r.table = from_table(r.rows, r.meta.lipschitz, r.meta.lipschitz_certified);
  r.table.sup_norm = std::max(r.table.sup_norm, r.meta.sup_norm);
  r.analytic = io::analytic_from_meta(r.meta);
  return r;
}

DiscreteProblem problem_for(const Quadrature& q, const LoadedRequirement& req, Formulation f) {
  if (q.dim != req.meta.dim) throw Error(ErrorCode::dimension_mismatch, "requirement and quadrature dimensions differ");
  return make_problem(q, req.table, f);
}

Formulation default_formulation(std::size_t dim, const std::string& flag) {
  if (flag.empty()) return dim == 2 ? Formulation::two_d : Formulation::general;
  try {
    return formulation_from_string(flag);
  } catch (const Error&) {
    fail(bad_flags, "unknown formulation '" + flag + "'");
  }
}

// ---- bodies on disk ---------------------------------------------------------

struct LoadedBody {
  ConvexBody body;
  std::optional<io::SolutionRecord> record;
};

/// Accepts a ContourSolution, an inflate output or a bare body.
LoadedBody load_body(const std::string& path) {
  const auto j = io::read_json_file(path);
  if (j.contains("body_prime")) {
    auto rec = io::solution_from_json(j);
    ConvexBody b = rec.solution.prime();
    return {std::move(b), std::move(rec)};
  }
  if (j.contains("body")) return {io::body_from_json(j.at("body")), std::nullopt};
  return {io::body_from_json(j), std::nullopt};
}

void print_bounds(const CertifiedBounds& b) {
  std::cout << "e_inflation " << g17(b.e_inflation) << "\n"
            << "beta " << g17(b.beta) << "\n"
            << "R_bound " << g17(b.R_bound) << "\n"
            << "vcp_vdp_gap_upper " << g17(b.vcp_vdp_gap_upper) << "\n"
            << "vdp_vcp_gap_upper " << g17(b.vdp_vcp_gap_upper) << "\n";
}

std::vector<std::size_t> parse_m_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 3) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      fail(bad_flags, "bad --m entry '" + item + "'");
    }
  }
  if (out.empty()) fail(bad_flags, "--m list is empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hullmin: minimal mean-width convex contours from outreach requirements"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hullmin 1.0");

  // quadrature
  auto* qc = app.add_subcommand("quadrature", "Write a quadrature rule as JSON");
  std::size_t q_dim = 0, q_m = 0, q_s = 0;
  std::string q_scheme, q_weighting = "sphere", q_out;
  qc->add_option("--dim", q_dim, "Dimension N >= 2")->required();
  qc->add_option("--scheme", q_scheme, "uniform (2D) or cubed; default uniform in 2D, cubed otherwise");
  qc->add_option("--m", q_m, "Number of directions (uniform)");
  qc->add_option("--s", q_s, "Subdivisions per face edge (cubed)");
  qc->add_option("--weighting", q_weighting, "Cubed weights: sphere (normalized measure) or face")
      ->check(CLI::IsMember({"sphere", "face"}));
  qc->add_option("-o,--output", q_out, "Output JSON (default stdout)");

  // requirement
  auto* rc = app.add_subcommand("requirement", "Tabulate a requirement on a quadrature");
  std::string r_quad, r_kind, r_preset, r_spec, r_out;
  double r_radius = 1.0;
  SpikeParams r_spikes;
  std::optional<std::uint64_t> r_seed;
  std::optional<std::size_t> r_samples;
  std::optional<double> r_lipschitz;
  rc->add_option("--quadrature", r_quad, "Quadrature JSON")->required();
  rc->add_option("--kind", r_kind, "circle, triangle, spikes or montecarlo")
      ->required()
      ->check(CLI::IsMember({"circle", "triangle", "spikes", "montecarlo"}));
  rc->add_option("--r", r_radius, "Circle radius");
  rc->add_option("--base", r_spikes.base, "Spike base level");
  rc->add_option("--height", r_spikes.height, "Spike height");
  rc->add_option("--slope", r_spikes.slope, "Spike slope per radian");
  rc->add_option("--angles", r_spikes.angles, "Spike angles in [0, 2pi)");
  rc->add_option("--preset", r_preset, "Monte Carlo preset: wave_ht or wave_htu")
      ->check(CLI::IsMember({"wave_ht", "wave_htu"}));
  rc->add_option("--spec", r_spec, "Monte Carlo spec JSON");
  rc->add_option("--seed", r_seed, "Override the Monte Carlo seed");
  rc->add_option("--samples", r_samples, "Override the Monte Carlo sample count");
  rc->add_option("--lipschitz", r_lipschitz, "Declared Lipschitz constant for sampled tables");
  rc->add_option("-o,--output", r_out, "Output CSV; the sidecar goes to <output>.meta.json")->required();

  // solve
  auto* sc = app.add_subcommand("solve", "Solve the discretized problem");
  std::string s_quad, s_req, s_form, s_coupling = "lazy", s_out;
  double s_gamma = 0.0;
  std::size_t s_rounds = 500;
  std::optional<double> s_lipschitz;
  sc->add_option("--quadrature", s_quad, "Quadrature JSON")->required();
  sc->add_option("--requirement", s_req, "Requirement CSV")->required();
  sc->add_option("--formulation", s_form, "general or two_d (default two_d in 2D)");
  sc->add_option("--coupling", s_coupling, "general formulation coupling rows: lazy or full")
      ->check(CLI::IsMember({"lazy", "full"}));
  sc->add_option("--gamma", s_gamma, "Optimality slack of the reported solution")->check(CLI::NonNegativeNumber);
  sc->add_option("--max-rounds", s_rounds, "Lazy constraint rounds");
  sc->add_option("--lipschitz", s_lipschitz, "Override the requirement Lipschitz constant");
  sc->add_option("-o,--output", s_out, "Solution JSON")->required();

  // naive
  auto* nc = app.add_subcommand("naive", "Intersect the half-spaces (u, C(u))");
  std::string n_quad, n_req, n_out;
  nc->add_option("--quadrature", n_quad, "Quadrature JSON")->required();
  nc->add_option("--requirement", n_req, "Requirement CSV")->required();
  nc->add_option("-o,--output", n_out, "Body JSON")->required();

  // inflate
  auto* ic = app.add_subcommand("inflate", "Inflate a solved body so it is valid in unseen directions");
  std::string i_sol, i_dirs = "quadrature", i_out;
  std::optional<double> i_e;
  ic->add_option("--solution", i_sol, "Solution JSON")->required();
  ic->add_option("--e", i_e, "Inflation amount (default: the certified e)")->check(CLI::NonNegativeNumber);
  ic->add_option("--dirs", i_dirs, "quadrature or all (fine grid)")->check(CLI::IsMember({"quadrature", "all"}));
  ic->add_option("-o,--output", i_out, "Inflated body JSON")->required();

  // validate
  auto* vc = app.add_subcommand("validate", "Check a body against a requirement");
  std::string v_body, v_req;
  std::size_t v_factor = 10;
  double v_tol = 1e-9;
  vc->add_option("--body", v_body, "Body, inflated body or solution JSON")->required();
  vc->add_option("--requirement", v_req, "Requirement CSV")->required();
  vc->add_option("--probe-factor", v_factor, "Probe grid size as a multiple of the table size")->check(CLI::PositiveNumber);
  vc->add_option("--tolerance", v_tol, "Largest accepted violation");

  // study
  auto* tc = app.add_subcommand("study", "Convergence study on an analytic 2D requirement");
  std::string t_kind = "spikes", t_m = "30,100,300,1000,3000", t_form, t_metric, t_out;
  std::size_t t_factor = 10;
  tc->add_option("--kind", t_kind, "circle, triangle or spikes")->check(CLI::IsMember({"circle", "triangle", "spikes"}));
  tc->add_option("--m", t_m, "Comma-separated quadrature sizes");
  tc->add_option("--formulation", t_form, "general or two_d");
  tc->add_option("--metric", t_metric, "violation or perimeter_gap")->check(CLI::IsMember({"violation", "perimeter_gap"}));
  tc->add_option("--probe-factor", t_factor, "Probe grid size as a multiple of m")->check(CLI::PositiveNumber);
  tc->add_option("--r", r_radius, "Circle radius");
  tc->add_option("--base", r_spikes.base, "Spike base level");
  tc->add_option("--height", r_spikes.height, "Spike height");
  tc->add_option("--slope", r_spikes.slope, "Spike slope per radian");
  tc->add_option("--angles", r_spikes.angles, "Spike angles in [0, 2pi)");
  tc->add_option("-o,--output", t_out, "Study CSV")->required();

  // render
  auto* wc = app.add_subcommand("render", "Draw a 2D contour as SVG or a 3D contour as OBJ");
  std::string w_in, w_req, w_out;
  wc->add_option("--solution,--body", w_in, "Solution, inflated body or body JSON")->required();
  wc->add_option("--requirement", w_req, "Requirement CSV to overlay (2D)");
  wc->add_option("-o,--output", w_out, "Output .svg (2D) or .obj (3D)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : bad_flags;
  }

  try {
    if (*qc) {
      if (q_dim < 2) fail(bad_flags, "--dim must be at least 2");
      if (q_scheme.empty()) q_scheme = q_dim == 2 ? "uniform" : "cubed";
      Quadrature q;
      if (q_scheme == "uniform") {
        if (q_dim != 2) fail(bad_flags, "the uniform scheme is 2D only");
        if (q_m == 0) fail(bad_flags, "--m is required for the uniform scheme");
        q = uniform_2d(q_m);
      } else if (q_scheme == "cubed") {
        if (q_s == 0) fail(bad_flags, "--s is required for the cubed scheme");
        q = cubed_hypersphere(q_dim, q_s, q_weighting == "face" ? CubedWeighting::face_measure : CubedWeighting::sphere_measure);
      } else {
        fail(bad_flags, "unknown scheme '" + q_scheme + "'");
      }
      const auto text = io::to_json(q).dump(1) + "\n";
      if (q_out.empty()) {
        std::cout << text;
      } else {
        io::write_text_file(q_out, text);
        std::cout << "m " << q.size() << "\neps_bound " << g17(q.eps_bound) << "\ndispersion_bound "
                  << g17(q.dispersion_bound) << "\n";
      }
      return ok;
    }

    if (*rc) {
      distinct_paths(r_out, {r_quad, r_spec});
      const auto q = io::quadrature_from_json(io::read_json_file(r_quad));
      io::RequirementMeta meta;
      meta.dim = q.dim;
      meta.kind = r_kind;
      std::vector<TableRow> rows;
      if (r_kind == "montecarlo") {
        MonteCarloSpec spec;
        if (!r_spec.empty() && !r_preset.empty()) fail(bad_flags, "give either --spec or --preset");
        if (!r_spec.empty()) {
          spec = io::montecarlo_from_json(io::read_json_file(r_spec));
        } else if (r_preset == "wave_ht") {
          spec = wave_ht_spec(1);
        } else if (r_preset == "wave_htu") {
          spec = wave_htu_spec(1);
        } else {
          fail(bad_flags, "montecarlo needs --spec or --preset");
        }
        if (r_seed) spec.seed = *r_seed;
        if (r_samples) spec.n_samples = *r_samples;
        spec.validate();
        if (spec.dim() != q.dim) throw Error(ErrorCode::dimension_mismatch, "model and quadrature dimensions differ");
        rows = montecarlo_estimate(spec, q.directions);
        meta.params = io::to_json(spec);
        if (r_lipschitz) {
          meta.lipschitz = *r_lipschitz;
        } else {
          meta.lipschitz = estimate_lipschitz(rows);
          meta.lipschitz_certified = false;
        }
        for (const auto& row : rows) meta.sup_norm = std::max(meta.sup_norm, std::abs(row.value));
      } else {
        Requirement req;
        if (r_kind == "circle") {
          req = analytic_circle(r_radius, q.dim);
          meta.params = {{"r", r_radius}};
        } else {
          if (q.dim != 2) fail(bad_spec, r_kind + " is a 2D requirement");
          if (r_kind == "triangle") {
            req = analytic_triangle();
          } else {
            req = analytic_spikes(r_spikes);
            meta.params = {{"base", r_spikes.base}, {"height", r_spikes.height}, {"slope", r_spikes.slope}, {"angles", r_spikes.angles}};
          }
        }
        for (const auto& u : q.directions) rows.push_back({u, req(u)});
        meta.lipschitz = req.lipschitz;
        meta.lipschitz_certified = req.lipschitz_certified;
        meta.sup_norm = req.sup_norm;
        if (r_lipschitz) meta.lipschitz = *r_lipschitz;
      }
      io::write_table_csv(r_out, rows);
      io::write_json_file(io::meta_path(r_out), io::to_json(meta));
      std::cout << "rows " << rows.size() << "\nlipschitz " << g17(meta.lipschitz)
                << (meta.lipschitz_certified ? " (declared)" : " (estimated, uncertified)") << "\nsup_norm "
                << g17(meta.sup_norm) << "\n";
      return ok;
    }

    if (*sc) {
      distinct_paths(s_out, {s_quad, s_req});
      const auto q = io::quadrature_from_json(io::read_json_file(s_quad));
      const auto req = load_requirement(s_req, s_lipschitz);
      const auto f = default_formulation(q.dim, s_form);
      const auto dp = problem_for(q, req, f);
      SolveOptions opts;
      opts.coupling = s_coupling == "full" ? CouplingMode::full : CouplingMode::lazy;
      opts.max_rounds = s_rounds;
      io::SolutionRecord rec;
      rec.quadrature = q;
      rec.solution = solve_contour(dp, opts);
      rec.bound_inputs = bound_inputs(dp);
      if (auto why = hypotheses_failure(rec.bound_inputs)) {
        rec.hypotheses = *why;
      } else {
        rec.bounds = certified_bounds(rec.bound_inputs, s_gamma + kSolverGamma);
      }
      io::write_json_file(s_out, io::to_json(rec));
      const auto& s = rec.solution;
      std::cout << "formulation " << to_string(f) << "\nobjective " << g17(s.objective) << "\nradius_bound "
                << g17(s.radius_bound) << "\niterations " << s.stats.iterations << "\nrounds " << s.stats.rounds
                << "\nadded_constraints " << s.stats.added_constraints << "\n";
      if (s.dim == 2) std::cout << "perimeter " << g17(polygon_perimeter(s.prime().points())) << "\n";
      if (!req.meta.lipschitz_certified) std::cout << "lipschitz estimated, uncertified\n";
      if (rec.bounds) {
        print_bounds(*rec.bounds);
      } else {
        std::cout << "bounds withheld: " << rec.hypotheses << "\n";
      }
      return ok;
    }

    if (*nc) {
      distinct_paths(n_out, {n_quad, n_req});
      const auto q = io::quadrature_from_json(io::read_json_file(n_quad));
      const auto req = load_requirement(n_req, std::nullopt);
      const auto dp = problem_for(q, req, Formulation::two_d);
      const auto body = naive_body(dp);
      io::write_json_file(n_out, io::to_json(body));
      if (body.dim() == 2) std::cout << "perimeter " << g17(polygon_perimeter(body.points())) << "\n";
      return ok;
    }

    if (*ic) {
      distinct_paths(i_out, {i_sol});
      const auto rec = io::solution_from_json(io::read_json_file(i_sol));
      double e = 0.0;
      if (i_e) {
        e = *i_e;
      } else if (rec.bounds) {
        e = rec.bounds->e_inflation;
      } else {
        throw Error(ErrorCode::hypotheses_unmet, rec.hypotheses + "; pass --e to inflate anyway");
      }
      json out;
      std::optional<FineGrid> grid;
      if (i_dirs == "all") {
        grid = fine_grid(rec.solution.dim);
        out["grid_dispersion"] = grid->dispersion;
      }
      const auto body = inflate(rec.solution.prime(), grid ? grid->directions : rec.quadrature.directions, e);
      out["e"] = e;
      out["dirs"] = i_dirs;
      out["body"] = io::to_json(body);
      if (rec.bounds) out["bounds"] = io::to_json(*rec.bounds);
      io::write_json_file(i_out, out);
      std::cout << "e " << g17(e) << "\n";
      if (body.dim() == 2) std::cout << "perimeter " << g17(polygon_perimeter(body.points())) << "\n";
      if (rec.bounds) print_bounds(*rec.bounds);
      return ok;
    }

    if (*vc) {
      const auto lb = load_body(v_body);
      const auto req = load_requirement(v_req, std::nullopt);
      if (lb.body.dim() != req.meta.dim) throw Error(ErrorCode::dimension_mismatch, "body and requirement dimensions differ");
      ViolationReport rep;
      if (req.analytic) {
        const std::size_t probes = v_factor * req.rows.size();
        const auto dirs = probe_directions(req.meta.dim, probes);
        rep = violation(lb.body, *req.analytic, dirs, probe_dispersion(req.meta.dim, probes));
        std::cout << "probes " << dirs.size() << "\n";
      } else {
        // only the tabulated directions are known
        std::vector<Direction> dirs;
        for (const auto& r : req.rows) dirs.push_back(r.direction);
        rep = violation(lb.body, req.table, dirs, 0.0);
        std::cout << "probes " << dirs.size() << " (table directions)\n";
      }
      std::cout << "violation " << g17(rep.max_violation) << "\n";
      if (req.analytic) std::cout << "probe_correction " << g17(rep.correction) << "\n";
      bool pass = rep.max_violation <= v_tol;
      if (lb.record) {
        const auto& rec = *lb.record;
        double obj = 0.0;
        for (std::size_t i = 0; i < rec.solution.B.size(); ++i) obj += rec.quadrature.weights[i] * rec.solution.B[i];
        const double diff = std::abs(obj - rec.solution.objective);
        std::cout << "objective " << g17(rec.solution.objective) << "\nobjective_recomputed " << g17(obj) << "\n";
        if (diff > 1e-12) {
          std::cout << "objective mismatch " << g17(diff) << "\n";
          pass = false;
        }
      }
      std::cout << (pass ? "valid" : "INVALID") << "\n";
      return pass ? ok : invalid;
    }

    if (*tc) {
      const auto ms = parse_m_list(t_m);
      Requirement req = t_kind == "circle" ? analytic_circle(r_radius) : t_kind == "triangle" ? analytic_triangle() : analytic_spikes(r_spikes);
      StudyOptions opts;
      opts.formulation = default_formulation(2, t_form);
      opts.probe_factor = t_factor;
      if (!t_metric.empty()) opts.metric = t_metric == "violation" ? StudyMetric::violation : StudyMetric::perimeter_gap;
      const auto rows = convergence_study(req, ms, opts);
      std::ostringstream os;
      os << "m,violation,objective,perimeter_gap,slope_partial\n";
      for (const auto& r : rows) {
        os << r.m << "," << g17(r.violation) << "," << g17(r.objective) << "," << g17(r.perimeter_gap) << ","
           << g17(r.slope_partial) << "\n";
      }
      io::write_text_file(t_out, os.str());
      std::cout << os.str();
      std::cout << "slope " << g17(rows.back().slope_partial) << "\n";
      return ok;
    }

    if (*wc) {
      distinct_paths(w_out, {w_in, w_req});
      const auto lb = load_body(w_in);
      const std::size_t dim = lb.body.dim();
      if (dim == 2) {
        SvgScene scene;
        scene.title = fs::path(w_in).filename().string();
        if (!lb.body.has_vrep()) fail(other, "2D body without vertices");
        scene.body_prime = convex_hull_2d(lb.body.points());
        if (lb.record && lb.record->solution.body_star) scene.body_star = convex_hull_2d(lb.record->solution.body_star->points());
        if (!w_req.empty()) {
          const auto req = load_requirement(w_req, std::nullopt);
          if (req.meta.dim != 2) throw Error(ErrorCode::dimension_mismatch, "requirement is not 2D");
          std::vector<Direction> dirs;
          if (req.analytic) {
            for (const auto& u : uniform_2d(720).directions) dirs.push_back(u);
          } else {
            for (const auto& r : req.rows) dirs.push_back(r.direction);
          }
          std::sort(dirs.begin(), dirs.end(), [](const Direction& a, const Direction& b) { return a.angle() < b.angle(); });
          const Requirement& c = req.analytic ? *req.analytic : req.table;
          for (const auto& u : dirs) {
            const double v = c(u);
            scene.requirement_curve.push_back({v * u[0], v * u[1]});
          }
        }
        io::write_text_file(w_out, render_svg(scene));
        std::cout << "svg " << w_out << "\n";
        return ok;
      }
      if (dim == 3) {
        std::vector<Direction> dirs;
        std::vector<Point> witness;
        if (lb.record) {
          dirs = lb.record->quadrature.directions;
          witness = lb.record->solution.witness_points;
        } else {
          dirs = cubed_hypersphere(3, 10).directions;
        }
        const auto pts = contact_points(lb.body, dirs, witness);
        const auto mesh = contact_mesh(pts);
        io::write_text_file(w_out, render_obj(mesh, "contact points " + std::to_string(pts.size())));
        std::cout << "obj " << w_out << "\nvertices " << mesh.vertices.size() << "\nfaces " << mesh.faces.size() << "\n";
        return ok;
      }
      fail(bad_dim, "render supports 2D and 3D only (got " + std::to_string(dim) + "D)");
    }
  } catch (const CliFailure& f) {
    std::cerr << "hullmin: " << f.message << "\n";
    return f.code;
  } catch (const Error& e) {
    std::cerr << "hullmin: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "hullmin: " << e.what() << "\n";
    return other;
  }
  return other;
}
