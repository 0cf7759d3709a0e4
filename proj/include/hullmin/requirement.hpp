#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hullmin/geometry.hpp"

namespace hullmin {

enum class Provenance { analytic, table, montecarlo };

const char* to_string(Provenance p) noexcept;

/// Outreach requirement C on the unit sphere with its Lipschitz constant (in
/// the chord metric |u - v|) and a bound on |C|.
struct Requirement {
  std::size_t dim = 2;
  std::function<double(const Direction&)> evaluator;
  double lipschitz = 0.0;
  double sup_norm = 0.0;
  Provenance provenance = Provenance::analytic;
  /// False when lipschitz is an estimate (tables without a declared constant).
  bool lipschitz_certified = true;
  std::string name;
  /// Perimeter of the minimal valid contour when it is known in closed form
  /// (2D analytic requirements only).
  std::optional<double> optimal_perimeter;

  double operator()(const Direction& u) const { return evaluator(u); }
};

/// C(u) = r in any dimension.
Requirement analytic_circle(double r, std::size_t dim = 2);

/// C(theta) = max_k cos(theta - 2 pi k / 3): the support function of the
/// triangle with vertices on the unit circle.
Requirement analytic_triangle();

struct SpikeParams {
  double base = 0.5;
  double height = 1.0;
  double slope = 3.0;  // per radian of angular distance
  std::vector<double> angles = {0.3, 0.3 + 2.0943951023931953, 0.3 + 4.1887902047863905};
};

/// C(theta) = max(base, max_k height - slope * d(theta, angle_k)) where d is
/// the angular distance; with slope 0 there are no spikes and C = base.
Requirement analytic_spikes(const SpikeParams& params = {});
Requirement analytic_spikes(double base, double spike_height, double spike_slope, std::vector<double> spike_angles);

/// Lipschitz constant of the spike requirement in the chord metric.
double spike_chord_lipschitz(double base, double height, double slope);

struct TableRow {
  Direction direction;
  double value;
};

/// Requirement known only at tabulated directions (match within 1e-12).
Requirement from_table(std::vector<TableRow> rows, double lipschitz, bool lipschitz_certified = true);

/// Largest |C(u) - C(v)| / |u - v| over nearest-neighbour pairs of the table.
/// A heuristic, not a certified constant.
double estimate_lipschitz(std::span<const TableRow> rows);

// ---- environmental models -------------------------------------------------

/// a + b h^c
struct PowerLaw {
  double a = 0.0, b = 0.0, c = 1.0;
  double operator()(double h) const;
};

/// a + b e^(c h)
struct ExpLaw {
  double a = 0.0, b = 0.0, c = 0.0;
  double operator()(double h) const;
};

struct Weibull3 {
  double scale = 1.0, shape = 1.0, location = 0.0;
};

/// ln X ~ Normal(log_mean(h), log_sd(h)) with h the value of variable `parent`.
struct ConditionalLognormal {
  std::size_t parent = 0;
  PowerLaw log_mean;
  ExpLaw log_sd;
};

/// X ~ Weibull(scale(h), shape(h)), location 0.
struct ConditionalWeibull2 {
  std::size_t parent = 0;
  PowerLaw scale;
  PowerLaw shape;
};

using EnvironmentalModel = std::variant<Weibull3, ConditionalLognormal, ConditionalWeibull2>;

struct MonteCarloSpec {
  std::vector<EnvironmentalModel> model;  // one entry per coordinate of W
  std::size_t n_samples = 0;
  double exceedance = 0.0;
  std::uint64_t seed = 0;

  std::size_t dim() const noexcept { return model.size(); }
  /// Throws InvalidParameters.
  void validate() const;
};

/// Wave height / period model with p_e = 1/29200 and 3e5 samples.
MonteCarloSpec wave_ht_spec(std::uint64_t seed);
/// Wave height / period / wind speed model with p_e = 1/29200 and 1e6 samples.
MonteCarloSpec wave_htu_spec(std::uint64_t seed);

/// Philox4x32-10 (Salmon et al., SC'11): a counter-based generator, so every
/// (key, counter) pair yields an independent block without shared state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Two uniforms in (0,1) for sample `index` and variable `var`: the stream
/// key is the seed, the counter is (index lo, index hi, var, 0).
std::array<double, 2> uniform_pair(std::uint64_t seed, std::uint64_t index, std::uint32_t var);

double sample_weibull3(const Weibull3& p, double u);
/// z is a standard normal variate.
double sample_conditional_lognormal(const ConditionalLognormal& p, double parent_value, double z);
double sample_conditional_weibull2(const ConditionalWeibull2& p, double parent_value, double u);
/// Box-Muller, cosine branch.
double standard_normal(double u1, double u2);

struct SampleCloud {
  std::size_t dim = 0;
  std::size_t n = 0;
  std::vector<double> data;  // n rows of dim values

  std::span<const double> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
};

SampleCloud draw_samples(const MonteCarloSpec& spec);

/// 1-based order statistic used for the upper p_e quantile: ceil(n (1 - p_e)).
std::size_t upper_quantile_index(std::size_t n, double exceedance);

/// Upper empirical p_e quantile of <W, u> for each direction.
std::vector<double> empirical_upper_quantiles(const SampleCloud& cloud, std::span<const Direction> dirs, double exceedance);

/// Draws one shared cloud and tabulates its quantiles. Throws DegenerateSample
/// when every projection in some direction is identical.
std::vector<TableRow> montecarlo_estimate(const MonteCarloSpec& spec, std::span<const Direction> dirs);

}  // namespace hullmin
