// Acceptance run: one PASS/FAIL line per criterion.
// usage: acceptance <path to hullmin CLI> <work dir>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hullmin/contour.hpp"
#include "hullmin/error.hpp"
#include "hullmin/io.hpp"
#include "hullmin/render.hpp"

using namespace hullmin;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_work;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Smooth random requirement with a chord-metric Lipschitz constant.
Requirement random_requirement(std::mt19937& g) {
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  std::vector<std::array<double, 3>> terms;
  double lip = 0.0, sup = 1.0;
  for (int k = 1; k <= 4; ++k) {
    const double a = 0.4 * ud(g) / k;
    terms.push_back({a, static_cast<double>(k), 2 * pi * ud(g)});
    lip += a * k;
    sup += a;
  }
  Requirement r;
  r.dim = 2;
  r.evaluator = [terms](const Direction& u) {
    double v = 1.0;
    for (const auto& t : terms) v += t[0] * std::cos(t[1] * u.angle() - t[2]);
    return v;
  };
  r.lipschitz = lip * pi / 2;
  r.sup_norm = sup;
  return r;
}

Outcome circle_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto dp = make_problem(uniform_2d(360), analytic_circle(1.0), Formulation::two_d);
  const auto s = solve_contour(dp);
  const double perim = polygon_perimeter(s.prime().points());
  const double closed = 720.0 * std::tan(pi / 360.0);
  const auto probes = probe_directions(2, 3600);
  const auto v = violation(s.prime(), analytic_circle(1.0), probes, probe_dispersion(2, 3600));
  const double secs = seconds_since(t0);
  // B' contains the disk exactly; its vertices carry a few ulps of rounding
  const double roundoff = 64 * std::numeric_limits<double>::epsilon();
  Outcome o;
  o.pass = std::abs(s.objective - 1.0) <= 1e-6 && std::abs(perim - closed) <= 1e-9 && v.max_violation <= roundoff &&
           probes.size() >= 3600 && secs < 1.0;
  o.detail = "objective-1=" + fmt("%.2e", s.objective - 1.0) + " perimeter err=" + fmt("%.2e", perim - closed) +
             " violation=" + fmt("%.2e", v.max_violation) + " (rounding allowance " + fmt("%.1e", roundoff) + ")" +
             " time=" + fmt("%.3fs", secs);
  return o;
}

Outcome formulation_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 g(2024);
  double worst_obj = 0.0, worst_id = 0.0;
  int count = 0;
  for (std::size_t m : {16, 48, 90}) {
    const auto q = uniform_2d(m);
    const double d = 2 * pi / static_cast<double>(m);
    const double factor = 2.0 * m * (1 - std::cos(d)) / std::sin(d);
    const auto order = angle_order_2d(q.directions);
    std::vector<Direction> dirs;
    for (auto k : order) dirs.push_back(q.directions[k]);
    for (int t = 0; t < 50; ++t) {
      const auto req = random_requirement(g);
      std::vector<TableRow> rows;
      for (const auto& u : q.directions) rows.push_back({u, req(u)});
      const auto table = from_table(rows, req.lipschitz);
      const auto a = solve_contour(make_problem(q, table, Formulation::two_d));
      const auto b = solve_contour(make_problem(q, table, Formulation::general));
      worst_obj = std::max(worst_obj, std::abs(a.objective - b.objective));
      for (const auto* sol : {&a, &b}) {
        std::vector<double> bs;
        for (auto k : order) bs.push_back(sol->B[k]);
        double sl = 0.0, sb = 0.0;
        for (double x : side_lengths_2d(dirs, bs)) sl += x;
        for (double x : bs) sb += x;
        worst_id = std::max(worst_id, std::abs(sl - factor * sb / static_cast<double>(m)) / std::max(1.0, std::abs(sl)));
      }
      ++count;
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = worst_obj <= 1e-6 && worst_id <= 1e-9 && secs < 30.0;
  o.detail = std::to_string(count) + " tables, max |general-2D|=" + fmt("%.2e", worst_obj) + " max identity residual=" +
             fmt("%.2e", worst_id) + " time=" + fmt("%.1fs", secs);
  return o;
}

Outcome convergence_rates() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::size_t> ms{30, 100, 300, 1000, 3000};
  const auto spikes = convergence_study(analytic_spikes(), ms);
  const auto tri = convergence_study(analytic_triangle(), ms);
  double tri_viol = 0.0;
  for (const auto& r : tri) tri_viol = std::max(tri_viol, r.violation);
  const double s_slope = spikes.back().slope_partial;
  const double t_slope = tri.back().slope_partial;
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = s_slope >= -1.3 && s_slope <= -0.7 && t_slope >= -2.5 && t_slope <= -1.5 && tri_viol <= 1e-9 && secs < 120.0;
  o.detail = "spikes violation slope=" + fmt("%.3f", s_slope) + " triangle perimeter-gap slope=" + fmt("%.3f", t_slope) +
             " triangle max violation=" + fmt("%.1e", tri_viol) + " time=" + fmt("%.1fs", secs);
  return o;
}

Outcome inflation_certificates() {
  std::mt19937 g(77);
  std::uniform_int_distribution<std::size_t> md(60, 240);
  const auto grid = fine_grid(2);
  const auto check = uniform_2d(2000);
  int done = 0, bad_valid = 0, bad_haus = 0;
  double worst_margin = -1e9, worst_haus = 0.0;
  while (done < 100) {
    const auto req = random_requirement(g);
    const auto q = uniform_2d(md(g));
    const auto dp = make_problem(q, req, Formulation::two_d);
    if (hypotheses_failure(bound_inputs(dp))) continue;
    const auto s = solve_contour(dp);
    const auto b = certified_bounds(dp, kSolverGamma);
    const auto be = inflate(s.prime(), q.directions, b.e_inflation);
    const std::size_t n_probe = 10 * q.size();
    const auto probes = probe_directions(2, n_probe);
    const auto v = violation(be, req, probes, probe_dispersion(2, n_probe));
    worst_margin = std::max(worst_margin, v.max_violation - v.correction);
    if (v.max_violation > v.correction) ++bad_valid;

    const auto all = inflate(s.prime(), grid.directions, b.e_inflation);
    const auto h = hausdorff_distance(s.prime(), all, check.directions, check.dispersion_bound);
    const double err = std::abs(h.estimate - b.e_inflation);
    worst_haus = std::max(worst_haus, err / h.error_bound);
    if (err > h.error_bound) ++bad_haus;
    ++done;
  }
  Outcome o;
  o.pass = bad_valid == 0 && bad_haus == 0;
  o.detail = std::to_string(done) + " instances, validity failures=" + std::to_string(bad_valid) +
             " (max violation-correction=" + fmt("%.2e", worst_margin) + "), Hausdorff failures=" + std::to_string(bad_haus) +
             " (max |d_H-e|/grid bound=" + fmt("%.3f", worst_haus) + ")";
  return o;
}

Outcome naive_failure() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto w = g_work / "c5";
  fs::create_directories(w);
  const std::string q = (w / "q.json").string(), c = (w / "c.csv").string();
  int rc = run_cli("quadrature --dim 2 --scheme uniform --m 360 -o " + q);
  rc |= run_cli("requirement --quadrature " + q + " --kind montecarlo --preset wave_ht --seed 1 -o " + c);
  rc |= run_cli("naive --quadrature " + q + " --requirement " + c + " -o " + (w / "naive.json").string());
  const int naive_rc = run_cli("validate --body " + (w / "naive.json").string() + " --requirement " + c);
  rc |= run_cli("solve --quadrature " + q + " --requirement " + c + " -o " + (w / "sol.json").string());
  rc |= run_cli("inflate --solution " + (w / "sol.json").string() + " -o " + (w / "inflated.json").string());
  const int solved_rc = run_cli("validate --body " + (w / "inflated.json").string() + " --requirement " + c);

  // the sign of the naive violation, computed in-process
  const auto rows = io::read_table_csv(c);
  const auto table = from_table(rows, 0.0, false);
  const auto naive = io::body_from_json(io::read_json_file(w / "naive.json"));
  std::vector<Direction> dirs;
  for (const auto& r : rows) dirs.push_back(r.direction);
  const auto v = violation(naive, table, dirs, 0.0);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = rc == 0 && naive_rc == 5 && solved_rc == 0 && v.max_violation > 0.0 && secs < 60.0;
  o.detail = "naive violation=" + fmt("%.4f", v.max_violation) + " validate exit naive=" + std::to_string(naive_rc) +
             " inflated=" + std::to_string(solved_rc) + " time=" + fmt("%.1fs", secs);
  return o;
}

Outcome pipeline_3d() {
  Outcome o;
  std::string detail;
  for (std::size_t s : {4, 6}) {
    const auto q = cubed_hypersphere(3, s);
    const auto rows = montecarlo_estimate(wave_htu_spec(1), q.directions);
    const auto table = from_table(rows, estimate_lipschitz(rows), false);
    const auto dp = make_problem(q, table, Formulation::general);
    const auto a = solve_contour(dp);
    const auto b = solve_contour(dp);
    const bool deterministic = a.B == b.B && a.witness_points == b.witness_points;
    double feas = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      feas = std::max(feas, dp.values[i] - dot(a.witness_points[i], q.directions[i].coords()));
      for (std::size_t j = 0; j < q.size(); ++j) feas = std::max(feas, dot(a.witness_points[i], q.directions[j].coords()) - a.B[j]);
    }
    double sandwich = 0.0, touch = 0.0;
    for (const auto& u : probe_directions(3, 1000)) sandwich = std::max(sandwich, a.body_star->support(u) - a.prime().support(u));
    for (std::size_t i = 0; i < q.size(); ++i) touch = std::max(touch, std::abs(a.body_star->support(q.directions[i]) - a.B[i]));
    const bool ok = feas <= 1e-7 && sandwich <= 1e-7 && touch <= 1e-7 && deterministic;
    o.pass = o.pass && ok;
    detail += "s=" + std::to_string(s) + " m=" + std::to_string(q.size()) + " obj=" + fmt("%.6f", a.objective) +
              " feas=" + fmt("%.1e", feas) + " sandwich=" + fmt("%.1e", sandwich) + (deterministic ? "" : " NONDETERMINISTIC") + "; ";
  }

  // full size through the CLI, with the OBJ
  const auto t0 = std::chrono::steady_clock::now();
  const auto w = g_work / "c6";
  fs::create_directories(w);
  const std::string q = (w / "q.json").string(), c = (w / "c.csv").string(), sol = (w / "sol.json").string();
  int rc = run_cli("quadrature --dim 3 --scheme cubed --s 10 -o " + q);
  rc |= run_cli("requirement --quadrature " + q + " --kind montecarlo --preset wave_htu --seed 1 -o " + c);
  rc |= run_cli("solve --quadrature " + q + " --requirement " + c + " -o " + sol);
  const double secs = seconds_since(t0);
  rc |= run_cli("validate --body " + sol + " --requirement " + c);
  rc |= run_cli("render --solution " + sol + " -o " + (w / "contour.obj").string());
  const auto first = file_bytes(sol);
  rc |= run_cli("solve --quadrature " + q + " --requirement " + c + " -o " + (w / "sol2.json").string());
  const bool same = first == file_bytes(w / "sol2.json");
  std::size_t verts = 0;
  {
    std::ifstream in(w / "contour.obj");
    std::string line;
    while (std::getline(in, line)) verts += line.rfind("v ", 0) == 0;
  }
  o.pass = o.pass && rc == 0 && same && verts == 600 && secs < 600.0;
  detail += "s=10 m=600 via CLI time=" + fmt("%.1fs", secs) + " obj vertices=" + std::to_string(verts) +
            (same ? " byte-identical rerun" : " RERUN DIFFERS");
  o.detail = detail;
  return o;
}

Outcome quadrature_certification() {
  Outcome o;
  auto f = [](const Direction& u) { return u[0] * u[0]; };
  std::string detail;
  for (std::size_t dim : {2, 3}) {
    std::vector<double> ss, errs;
    bool within = true;
    for (std::size_t s : {4, 8, 16}) {
      const auto q = cubed_hypersphere(dim, s);
      const double err = std::abs(integrate(q, f) - 1.0 / static_cast<double>(dim));
      within = within && err <= q.eps_bound * (2.0 + 1.0);
      ss.push_back(static_cast<double>(s));
      errs.push_back(err);
    }
    const bool decreasing = errs[0] > errs[1] && errs[1] > errs[2];
    const double slope = loglog_slope(ss, errs);
    o.pass = o.pass && within && decreasing && slope <= -0.9;
    detail += "N=" + std::to_string(dim) + " errors " + fmt("%.2e", errs[0]) + "," + fmt("%.2e", errs[1]) + "," +
              fmt("%.2e", errs[2]) + " slope=" + fmt("%.2f", slope) + (within ? "" : " OUTSIDE BOUND") + "; ";
  }
  // 3-Lipschitz test function on the uniform rule: 3|u_1|, mean 6/pi
  auto g = [](const Direction& u) { return 3.0 * std::abs(u[0]); };
  double worst = 0.0;
  for (std::size_t m : {5, 8, 30, 101, 360}) {
    const auto q = uniform_2d(m);
    const double err = std::abs(integrate(q, g) - 6.0 / pi);
    const double bound = pi / (2.0 * m) * (3.0 + 3.0);
    worst = std::max(worst, err / bound);
  }
  o.pass = o.pass && worst <= 1.0;
  detail += "uniform 2D worst error/bound=" + fmt("%.3f", worst);
  o.detail = detail;
  return o;
}

Outcome bound_regression() {
  std::mt19937 g(8);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 4;
    const double cap = 1.0 / (10.0 * std::sqrt(static_cast<double>(n)));
    const BoundInputs in{n, cap * ud(g), cap * ud(g), 10 * ud(g), 5 * ud(g)};
    const double gamma = 1e-3 * ud(g);
    const auto b = certified_bounds(in, gamma);
    const double rn = std::sqrt(static_cast<double>(n));
    const double c = in.sup_norm;
    const double e = in.delta * (in.lipschitz + 12.0 * rn * (c + gamma));
    const double beta = 4.0 * e + 32.0 * rn * (c + gamma) * in.eps;
    const double r = 12.0 * rn * (c + gamma);
    const double up = 12.0 * rn * c * (2.0 * in.eps + in.delta) + in.lipschitz * in.delta;
    const double down = 8.0 * rn * c * in.eps;
    for (auto [got, want] : {std::pair{b.e_inflation, e}, {b.beta, beta}, {b.R_bound, r}, {b.vcp_vdp_gap_upper, up},
                             {b.vdp_vcp_gap_upper, down}}) {
      worst = std::max(worst, std::abs(got - want));
    }
  }
  bool threw = false;
  try {
    certified_bounds(BoundInputs{2, 0.2, 0.01, 0.0, 1.0}, 0.0);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::hypotheses_unmet;
  }
  Outcome o;
  o.pass = worst <= 1e-12 && threw;
  o.detail = "200 random inputs, max abs difference=" + fmt("%.1e", worst) + (threw ? ", eps=0.2 rejected" : ", eps=0.2 NOT rejected");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <hullmin cli> <work dir>\n");
    return 2;
  }
  g_cli = argv[1];
  g_work = argv[2];
  fs::create_directories(g_work);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"circle exactness", circle_exactness},
      {"formulation equivalence", formulation_equivalence},
      {"convergence rates", convergence_rates},
      {"inflation certificates", inflation_certificates},
      {"naive-method failure", naive_failure},
      {"3D pipeline", pipeline_3d},
      {"quadrature certification", quadrature_certification},
      {"bound formula regression", bound_regression},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %zu %s: %s - %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
