#include "doctest.h"

#include <cmath>
#include <random>

#include "hullmin/error.hpp"
#include "hullmin/lpcore.hpp"

using namespace hullmin;
using namespace hullmin::lp;

namespace {

// Minimum of c.x over every vertex of a bounded polyhedron, by trying each
// choice of n tight constraints. Returns NaN when no vertex is feasible.
double brute_force_min(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& c : lp.constraints()) {
    std::vector<double> a(n, 0.0);
    for (const auto& t : c.terms) a[t.var] += t.coeff;
    rows.push_back(a);
    rhs.push_back(c.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> a(n, 0.0);
    a[j] = 1.0;
    if (std::isfinite(lp.lower()[j])) rows.push_back(a), rhs.push_back(lp.lower()[j]);
    if (std::isfinite(lp.upper()[j])) rows.push_back(a), rhs.push_back(lp.upper()[j]);
  }
  const std::size_t k = rows.size();
  double best = NAN;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == n) {
      std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r][c] = rows[pick[r]][c];
        a[r][n] = rhs[pick[r]];
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-9) return;
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == c) continue;
          const double f = a[r][c] / a[c][c];
          for (std::size_t q = c; q <= n; ++q) a[r][q] -= f * a[c][q];
        }
      }
      std::vector<double> x(n);
      for (std::size_t c = 0; c < n; ++c) x[c] = a[c][n] / a[c][c];
      if (max_violation(lp, x) > 1e-7) return;
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += lp.objective()[j] * x[j];
      if (std::isnan(best) || v < best) best = v;
      return;
    }
    for (std::size_t i = start; i < k; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

LinearProgram random_lp(std::mt19937& g, std::size_t n, std::size_t m, bool feasible) {
  std::normal_distribution<double> nd;
  LinearProgram lp(n);
  std::vector<double> x0(n);
  for (auto& v : x0) v = nd(g);
  for (std::size_t j = 0; j < n; ++j) {
    lp.set_cost(j, nd(g));
    lp.set_bounds(j, -5.0, 5.0);
  }
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<Term> ts;
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = nd(g);
      ts.push_back({j, a});
      ax += a * x0[j];
    }
    const double slack = std::abs(nd(g));
    if (r % 3 == 2) {
      lp.add_constraint(ts, Relation::equal, ax);
    } else if (r % 2 == 0) {
      lp.add_constraint(ts, Relation::less_equal, feasible ? ax + slack : ax - 20.0);
    } else {
      lp.add_constraint(ts, Relation::greater_equal, feasible ? ax - slack : ax + 20.0);
    }
  }
  return lp;
}

double dual_bound(const LinearProgram& lp, const LpSolution& s) {
  double db = 0.0;
  for (std::size_t r = 0; r < lp.num_constraints(); ++r) db += s.duals[r] * lp.constraints()[r].rhs;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const double d = s.reduced_costs[j];
    if (d > 0) db += d * lp.lower()[j];
    if (d < 0) db += d * lp.upper()[j];
  }
  return db;
}

}  // namespace

TEST_CASE("two lower bounds give the optimum at their corner") {
  LinearProgram lp(2);
  lp.set_cost(0, 1);
  lp.set_cost(1, 1);
  lp.add_constraint({{0, 1}}, Relation::greater_equal, 1);
  lp.add_constraint({{1, 1}}, Relation::greater_equal, 2);
  const auto s = solve(lp);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.objective_value == doctest::Approx(3.0));
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.x[1] == doctest::Approx(2.0));
}

TEST_CASE("unbounded and infeasible models report status") {
  LinearProgram a(1);
  a.set_cost(0, -1);
  a.add_constraint({{0, 1}}, Relation::greater_equal, 0);
  CHECK(solve(a).status == Status::unbounded);

  LinearProgram b(1);
  b.add_constraint({{0, 1}}, Relation::less_equal, -1);
  b.add_constraint({{0, 1}}, Relation::greater_equal, 1);
  CHECK(solve(b).status == Status::infeasible);
}

TEST_CASE("validate rejects bad models") {
  LinearProgram lp(1);
  lp.add_constraint({{3, 1.0}}, Relation::less_equal, 1);
  CHECK_THROWS_AS(lp.validate(), Error);
  LinearProgram nan_lp(1);
  nan_lp.add_constraint({{0, NAN}}, Relation::less_equal, 1);
  CHECK_THROWS_AS(nan_lp.validate(), Error);
  LinearProgram crossed(1);
  crossed.set_bounds(0, 2.0, 1.0);
  CHECK_THROWS_AS(crossed.validate(), Error);
}

TEST_CASE("random bounded LPs match vertex enumeration") {
  std::mt19937 g(7);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + t % 2;
    const std::size_t m = 2 + t % 5;
    const bool feasible = t % 10 != 9;
    const auto lp = random_lp(g, n, m, feasible);
    const auto s = solve(lp);
    const double oracle = brute_force_min(lp);
    CAPTURE(t);
    if (std::isnan(oracle)) {
      CHECK(s.status == Status::infeasible);
      continue;
    }
    REQUIRE(s.status == Status::optimal);
    CHECK(s.objective_value == doctest::Approx(oracle).epsilon(1e-7));
    CHECK(max_violation(lp, s.x) <= 1e-7);
  }
}

TEST_CASE("phase-2 multipliers give a dual bound equal to the optimum") {
  std::mt19937 g(11);
  for (int t = 0; t < 200; ++t) {
    const auto lp = random_lp(g, 2 + t % 7, 3 + t % 9, true);
    const auto s = solve(lp);
    REQUIRE(s.status == Status::optimal);
    CAPTURE(t);
    CHECK(max_violation(lp, s.x) <= 1e-7);
    CHECK(dual_bound(lp, s) <= s.objective_value + 1e-6);
    CHECK(dual_bound(lp, s) == doctest::Approx(s.objective_value).epsilon(1e-6));
  }
}

TEST_CASE("identical models give identical solutions") {
  std::mt19937 g(3);
  const auto lp = random_lp(g, 6, 10, true);
  const auto a = solve(lp);
  const auto b = solve(lp);
  CHECK(a.x == b.x);
  CHECK(a.duals == b.duals);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("degenerate model terminates") {
  // many constraints through the optimal vertex
  LinearProgram lp(2);
  lp.set_cost(0, -1);
  lp.set_cost(1, -1);
  for (int k = 0; k < 40; ++k) {
    const double a = std::cos(k * 0.01), b = std::sin(k * 0.01) + 1.0;
    lp.add_constraint({{0, a}, {1, b}}, Relation::less_equal, 0.0);
  }
  lp.add_constraint({{0, 1}}, Relation::greater_equal, 0);
  lp.add_constraint({{1, 1}}, Relation::greater_equal, 0);
  const auto s = solve(lp);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.objective_value == doctest::Approx(0.0));
}

TEST_CASE("duplicate rows are harmless") {
  LinearProgram lp(2);
  lp.set_cost(0, 1);
  lp.set_cost(1, 2);
  for (int k = 0; k < 3; ++k) lp.add_constraint({{0, 1}, {1, 1}}, Relation::greater_equal, 4);
  lp.add_constraint({{0, 1}}, Relation::less_equal, 3);
  const auto s = solve(lp);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.objective_value == doctest::Approx(5.0));
  CHECK(s.duals.size() == 4);
}

TEST_CASE("lazy solve with an empty oracle equals the plain solve") {
  std::mt19937 g(5);
  const auto lp = random_lp(g, 4, 6, true);
  const auto a = solve(lp);
  const auto b = solve_lazy(lp, [](std::span<const double>) { return std::vector<Constraint>{}; }, 10);
  REQUIRE(b.status == Status::optimal);
  CHECK(b.rounds == 0);
  CHECK(b.objective_value == doctest::Approx(a.objective_value).epsilon(1e-12));
}

TEST_CASE("lazy solve recovers a polygon from separated cuts") {
  // min -x-y over the regular 64-gon of apothem 1, cuts added on demand
  const std::size_t k = 64;
  std::vector<Constraint> all;
  for (std::size_t i = 0; i < k; ++i) {
    const double t = 2.0 * 3.14159265358979323846 * static_cast<double>(i) / k;
    all.push_back({{{0, std::cos(t)}, {1, std::sin(t)}}, Relation::less_equal, 1.0});
  }
  LinearProgram base(2);
  base.set_cost(0, -1);
  base.set_cost(1, -1);
  base.set_bounds(0, -10, 10);
  base.set_bounds(1, -10, 10);
  LinearProgram full = base;
  for (const auto& c : all) full.add_constraint(c);
  auto oracle = [&](std::span<const double> x) {
    std::vector<Constraint> out;
    for (const auto& c : all) if (constraint_violation(c, x) > 1e-7) out.push_back(c);
    return out;
  };
  const auto lazy = solve_lazy(base, oracle, 100);
  const auto ref = solve(full);
  REQUIRE(lazy.status == Status::optimal);
  CHECK(lazy.objective_value == doctest::Approx(ref.objective_value).epsilon(1e-9));
  CHECK(lazy.rounds > 0);
  for (const auto& c : all) CHECK(constraint_violation(c, lazy.x) <= 1e-7);
}

TEST_CASE("lazy solve stops at the round limit") {
  LinearProgram base(1);
  base.set_cost(0, -1);
  base.set_bounds(0, 0, 100);
  double cap = 100.0;
  auto oracle = [&](std::span<const double> x) {
    std::vector<Constraint> out;
    if (x[0] > 1.0) {
      cap = x[0] - 1.0;
      out.push_back({{{0, 1.0}}, Relation::less_equal, cap});
    }
    return out;
  };
  CHECK_THROWS_AS(solve_lazy(base, oracle, 1), Error);
}

TEST_CASE("text dump lists one constraint per line") {
  LinearProgram lp(2);
  lp.add_constraint({{0, 1}, {1, -2}}, Relation::less_equal, 3);
  lp.add_constraint({{1, 1}}, Relation::equal, 1);
  const auto text = to_text(lp);
  CHECK(text.find("<=") != std::string::npos);
  CHECK(text.find("=") != std::string::npos);
}
