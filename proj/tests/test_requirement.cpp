#include "doctest.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hullmin/error.hpp"
#include "hullmin/quadrature.hpp"
#include "hullmin/requirement.hpp"

using namespace hullmin;
using std::numbers::pi;

#ifndef HULLMIN_TEST_DATA
#define HULLMIN_TEST_DATA "."
#endif

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invalid_argument;
}

// Largest |C(u)-C(v)|/|u-v| over all pairs of a k-point circle grid.
double pairwise_lipschitz(const Requirement& req, std::size_t k) {
  std::vector<double> c(k);
  std::vector<Direction> u;
  for (std::size_t i = 0; i < k; ++i) {
    u.push_back(Direction::from_angle(2 * pi * i / k));
    c[i] = req(u.back());
  }
  double best = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) best = std::max(best, std::abs(c[i] - c[j]) / distance(u[i].coords(), u[j].coords()));
  }
  return best;
}

}  // namespace

TEST_CASE("circle requirement") {
  const auto c = analytic_circle(1.0);
  CHECK(c(Direction::from_angle(0.7)) == 1.0);
  CHECK(c.lipschitz == 0.0);
  CHECK(analytic_circle(0.0)(Direction({0.0, 1.0})) == 0.0);
  CHECK(analytic_circle(-1.0)(Direction({0.0, 1.0})) == -1.0);
  CHECK(analytic_circle(2.0, 3).dim == 3);
  CHECK(*analytic_circle(1.0).optimal_perimeter == doctest::Approx(2 * pi));
}

TEST_CASE("triangle requirement") {
  const auto t = analytic_triangle();
  CHECK(t(Direction::from_angle(0.0)) == doctest::Approx(1.0));
  CHECK(t(Direction::from_angle(pi / 3)) == doctest::Approx(0.5));
  CHECK(t(Direction::from_angle(pi)) == doctest::Approx(0.5));
  const double oracle = pairwise_lipschitz(t, 1500);
  CHECK(oracle <= t.lipschitz + 1e-9);
  CHECK(oracle >= 0.99 * t.lipschitz);
  CHECK(*t.optimal_perimeter == doctest::Approx(3 * std::sqrt(3.0)));
}

TEST_CASE("spike requirement") {
  const auto flat = analytic_spikes(0.5, 1.0, 0.0, {0.0});
  CHECK(flat(Direction::from_angle(0.0)) == 0.5);
  CHECK(flat(Direction::from_angle(2.0)) == 0.5);
  CHECK(flat.lipschitz == 0.0);

  const auto one = analytic_spikes(0.5, 1.0, 3.0, {0.0});
  CHECK(one(Direction::from_angle(0.0)) == doctest::Approx(1.0));
  CHECK(one(Direction::from_angle(0.1)) == doctest::Approx(0.7));

  const auto three = analytic_spikes();
  const double mid = 0.3 + pi / 3;
  CHECK(three(Direction::from_angle(mid)) == doctest::Approx(std::max(0.5, 1 - 3 * pi / 3)));
  CHECK(three(Direction::from_angle(0.3)) == doctest::Approx(1.0));
  CHECK(three.sup_norm == doctest::Approx(1.0));

  // chord-metric constant: at least the angular slope, and attained
  CHECK(three.lipschitz >= 3.0);
  CHECK(three.lipschitz == doctest::Approx(spike_chord_lipschitz(0.5, 1.0, 3.0)));
  const double oracle = pairwise_lipschitz(three, 1800);
  CHECK(oracle <= three.lipschitz + 1e-9);
  CHECK(oracle >= 0.995 * three.lipschitz);
  REQUIRE(three.optimal_perimeter);
  CHECK(*three.optimal_perimeter == doctest::Approx(3 * std::sqrt(3.0)));

  CHECK_THROWS_AS(analytic_spikes(0.5, 1.0, -1.0, {0.0}), Error);
  CHECK_THROWS_AS(analytic_spikes(0.5, 1.0, 3.0, {7.0}), Error);
}

TEST_CASE("tables") {
  const auto t = from_table({{Direction({1.0, 0.0}), 2.0}}, 0.0);
  CHECK(t(Direction({1.0, 0.0})) == 2.0);
  CHECK(code_of([&] { t(Direction({0.0, 1.0})); }) == ErrorCode::direction_not_tabulated);

  const auto q = uniform_2d(360);
  std::vector<TableRow> rows;
  const auto c = analytic_circle(1.0);
  for (const auto& u : q.directions) rows.push_back({u, c(u)});
  const auto tab = from_table(rows, 0.0);
  for (const auto& u : q.directions) CHECK(tab(u) == 1.0);
  CHECK(estimate_lipschitz(rows) == 0.0);
  CHECK_FALSE(from_table(rows, 1.0, false).lipschitz_certified);
}

TEST_CASE("Philox4x32-10 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  const auto u = uniform_pair(1, 2, 0);
  CHECK(u[0] > 0.0);
  CHECK(u[0] < 1.0);
  CHECK(u == uniform_pair(1, 2, 0));
  CHECK(u != uniform_pair(1, 2, 1));
}

TEST_CASE("samplers") {
  const Weibull3 w{2.259, 1.285, 0.701};
  CHECK(sample_weibull3(w, std::exp(-1.0)) == doctest::Approx(0.701 + 2.259));
  const ConditionalLognormal ln{0, PowerLaw{0.3, 0.0, 1.0}, ExpLaw{0.0, 0.0, 0.0}};
  CHECK(sample_conditional_lognormal(ln, 5.0, 1.7) == doctest::Approx(std::exp(0.3)));
  const auto& uw = std::get<ConditionalWeibull2>(wave_htu_spec(1).model[2]);
  CHECK(uw.scale(0.0) == doctest::Approx(2.58));
  CHECK(uw.shape(0.0) == doctest::Approx(4.6));
  CHECK(sample_conditional_weibull2(uw, 0.0, std::exp(-1.0)) == doctest::Approx(2.58));
  // Box-Muller cosine branch
  CHECK(standard_normal(std::exp(-0.5), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("upper quantile index") {
  CHECK(upper_quantile_index(4000, 0.25) == 3000);
  CHECK(upper_quantile_index(300000, 1.0 / 29200) == 300000 - 10);
  CHECK(upper_quantile_index(10, 0.0) == 10);
}

TEST_CASE("empirical quantiles of hand-built clouds") {
  const std::vector<Direction> dirs{Direction({1.0, 0.0})};
  SampleCloud point{2, 50, {}};
  for (int i = 0; i < 50; ++i) point.data.insert(point.data.end(), {1.0, 0.0});
  CHECK(empirical_upper_quantiles(point, dirs, 0.1).front() == 1.0);

  SampleCloud two{2, 4000, {}};
  for (int i = 0; i < 4000; ++i) two.data.insert(two.data.end(), {i % 2 ? 2.0 : 0.0, 0.0});
  CHECK(empirical_upper_quantiles(two, dirs, 0.25).front() == 2.0);
}

TEST_CASE("Monte Carlo specs are validated") {
  auto s = wave_ht_spec(1);
  CHECK_NOTHROW(s.validate());
  s.n_samples = 1000;  // n p_e < 10
  CHECK(code_of([&] { s.validate(); }) == ErrorCode::invalid_parameters);
  auto bad_parent = wave_ht_spec(1);
  std::get<ConditionalLognormal>(bad_parent.model[1]).parent = 1;
  CHECK(code_of([&] { bad_parent.validate(); }) == ErrorCode::invalid_parameters);
  auto bad_sd = wave_ht_spec(1);
  std::get<ConditionalLognormal>(bad_sd.model[1]).log_sd = ExpLaw{-1.0, 0.1, 0.0};
  CHECK(code_of([&] { bad_sd.validate(); }) == ErrorCode::invalid_parameters);
  auto bad_scale = wave_ht_spec(1);
  std::get<Weibull3>(bad_scale.model[0]).scale = -1.0;
  CHECK(code_of([&] { bad_scale.validate(); }) == ErrorCode::invalid_parameters);
}

TEST_CASE("Monte Carlo estimate is deterministic and matches the golden table") {
  const auto q = uniform_2d(360);
  const auto rows = montecarlo_estimate(wave_ht_spec(1), q.directions);
  REQUIRE(rows.size() == 360);
  const auto again = montecarlo_estimate(wave_ht_spec(1), q.directions);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].value == again[i].value);
  const auto other = montecarlo_estimate(wave_ht_spec(2), q.directions);
  CHECK(other[0].value != rows[0].value);

  std::ifstream in(std::string(HULLMIN_TEST_DATA) + "/golden/wave_ht_seed1_m360.csv");
  REQUIRE(in);
  std::string line;
  std::getline(in, line);
  std::size_t i = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string a, b, c;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    std::getline(ss, c, ',');
    REQUIRE(i < rows.size());
    CHECK(rows[i].direction[0] == doctest::Approx(std::stod(a)).epsilon(1e-12));
    CHECK(rows[i].value == doctest::Approx(std::stod(c)).epsilon(1e-12));
    ++i;
  }
  CHECK(i == 360);
}

TEST_CASE("degenerate clouds are rejected") {
  MonteCarloSpec s;
  s.model = {Weibull3{1e-300, 1.0, 2.0}, ConditionalLognormal{0, PowerLaw{0.0, 0.0, 1.0}, ExpLaw{1e-300, 0.0, 0.0}}};
  s.n_samples = 1000;
  s.exceedance = 0.05;
  s.seed = 3;
  const std::vector<Direction> dirs{Direction({1.0, 0.0})};
  CHECK(code_of([&] { montecarlo_estimate(s, dirs); }) == ErrorCode::degenerate_sample);
}
