#include "hullmin/requirement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>

#include "hullmin/error.hpp"
#include "hullmin/parallel.hpp"

namespace hullmin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return d > std::numbers::pi ? kTwoPi - d : d;
}

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

// Limit of a + b h^c as h -> infinity.
double power_limit(const PowerLaw& f) {
  if (f.b == 0.0 || f.c < 0.0) return f.a;
  if (f.c == 0.0) return f.a + f.b;
  return f.b > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

double exp_limit(const ExpLaw& f) {
  if (f.b == 0.0 || f.c < 0.0) return f.a;
  if (f.c == 0.0) return f.a + f.b;
  return f.b > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

// Both laws are monotone in h, so positivity on [lo, inf) only needs the ends.
template <class Law, class Limit>
void require_positive(const Law& f, double lo, Limit limit, const std::string& what) {
  if (!finite_all({f.a, f.b, f.c})) throw Error(ErrorCode::invalid_parameters, what + " has non-finite coefficients");
  const double at_lo = f(lo);
  if (!(at_lo > 0.0) || !(limit(f) >= 0.0)) {
    throw Error(ErrorCode::invalid_parameters, what + " is not positive on the support of its parent");
  }
}

double support_lower(const std::vector<EnvironmentalModel>& model, std::size_t k) {
  if (const auto* w = std::get_if<Weibull3>(&model[k])) return w->location;
  return 0.0;
}

}  // namespace

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::table: return "table";
    case Provenance::montecarlo: return "montecarlo";
  }
  return "analytic";
}

Requirement analytic_circle(double r, std::size_t dim) {
  if (dim < 2) throw Error(ErrorCode::invalid_dim, "requirements need N >= 2");
  Requirement req;
  req.dim = dim;
  req.evaluator = [r](const Direction&) { return r; };
  req.lipschitz = 0.0;
  req.sup_norm = std::abs(r);
  req.name = "circle";
  // a point is optimal for r <= 0
  if (dim == 2) req.optimal_perimeter = 2.0 * std::numbers::pi * std::max(r, 0.0);
  return req;
}

Requirement analytic_triangle() {
  Requirement req;
  req.dim = 2;
  req.evaluator = [](const Direction& u) {
    const double t = u.angle();
    return std::max({std::cos(t), std::cos(t - kTwoPi / 3.0), std::cos(t - 2.0 * kTwoPi / 3.0)});
  };
  req.lipschitz = std::sqrt(3.0) / 2.0;
  req.sup_norm = 1.0;
  req.name = "triangle";
  req.optimal_perimeter = 3.0 * std::sqrt(3.0);
  return req;
}

double spike_chord_lipschitz(double base, double height, double slope) {
  if (slope <= 0.0 || height <= base) return 0.0;
  // |C(u)-C(v)| <= min(slope d, height - base); divided by the chord 2 sin(d/2)
  // this peaks where the two branches meet.
  const double d = std::min((height - base) / slope, std::numbers::pi);
  return slope * d / (2.0 * std::sin(d / 2.0));
}

Requirement analytic_spikes(const SpikeParams& p) {
  if (!(p.slope >= 0.0)) throw Error(ErrorCode::invalid_parameters, "spike slope must be >= 0");
  for (double a : p.angles) {
    if (!(a >= 0.0 && a < kTwoPi)) throw Error(ErrorCode::invalid_parameters, "spike angles must lie in [0, 2pi)");
  }
  Requirement req;
  req.dim = 2;
  const bool spikes = p.slope > 0.0 && !p.angles.empty();
  req.evaluator = [p, spikes](const Direction& u) {
    double c = p.base;
    if (!spikes) return c;
    const double t = u.angle();
    for (double a : p.angles) c = std::max(c, p.height - p.slope * angular_distance(t, a));
    return c;
  };
  req.lipschitz = spikes ? spike_chord_lipschitz(p.base, p.height, p.slope) : 0.0;
  req.sup_norm = spikes ? std::max(std::abs(p.base), std::abs(p.height)) : std::abs(p.base);
  req.name = "spikes";
  // Three equally spaced spikes dominated by the triangle on their peaks: that
  // triangle is then the unique minimal contour.
  if (spikes && p.angles.size() == 3 && p.height > 0.0 && p.base <= p.height / 2.0 &&
      p.slope >= p.height * 0.5 / (std::numbers::pi / 3.0)) {
    std::vector<double> a = p.angles;
    std::sort(a.begin(), a.end());
    const double third = kTwoPi / 3.0;
    if (std::abs(a[1] - a[0] - third) < 1e-9 && std::abs(a[2] - a[1] - third) < 1e-9) {
      req.optimal_perimeter = 3.0 * std::sqrt(3.0) * p.height;
    }
  }
  return req;
}

Requirement analytic_spikes(double base, double spike_height, double spike_slope, std::vector<double> spike_angles) {
  return analytic_spikes(SpikeParams{base, spike_height, spike_slope, std::move(spike_angles)});
}

Requirement from_table(std::vector<TableRow> rows, double lipschitz, bool lipschitz_certified) {
  if (rows.empty()) throw Error(ErrorCode::invalid_argument, "requirement table is empty");
  if (!(lipschitz >= 0.0)) throw Error(ErrorCode::invalid_parameters, "Lipschitz constant must be >= 0");
  const std::size_t dim = rows.front().direction.dim();
  double sup = 0.0;
  for (const auto& r : rows) {
    if (r.direction.dim() != dim) throw Error(ErrorCode::dimension_mismatch, "table rows of mixed dimension");
    if (!std::isfinite(r.value)) throw Error(ErrorCode::invalid_argument, "non-finite table value");
    sup = std::max(sup, std::abs(r.value));
  }
  auto table = std::make_shared<std::vector<TableRow>>(std::move(rows));
  std::sort(table->begin(), table->end(), [](const TableRow& a, const TableRow& b) { return a.direction[0] < b.direction[0]; });
  Requirement req;
  req.dim = dim;
  req.evaluator = [table](const Direction& u) {
    auto it = std::lower_bound(table->begin(), table->end(), u[0] - 1e-12,
                               [](const TableRow& r, double x) { return r.direction[0] < x; });
    for (; it != table->end() && it->direction[0] <= u[0] + 1e-12; ++it) {
      if (distance(it->direction.coords(), u.coords()) <= 1e-12) return it->value;
    }
    throw Error(ErrorCode::direction_not_tabulated, "requirement is not tabulated at the queried direction");
  };
  req.lipschitz = lipschitz;
  req.sup_norm = sup;
  req.provenance = Provenance::table;
  req.lipschitz_certified = lipschitz_certified;
  req.name = "table";
  return req;
}

double estimate_lipschitz(std::span<const TableRow> rows) {
  double best = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    double ratio = 0.0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i == j) continue;
      const double d = distance(rows[i].direction.coords(), rows[j].direction.coords());
      if (d < nearest && d > 0.0) {
        nearest = d;
        ratio = std::abs(rows[i].value - rows[j].value) / d;
      }
    }
    best = std::max(best, ratio);
  }
  return best;
}

double PowerLaw::operator()(double h) const { return a + b * std::pow(h, c); }
double ExpLaw::operator()(double h) const { return a + b * std::exp(c * h); }

void MonteCarloSpec::validate() const {
  if (model.size() < 2) throw Error(ErrorCode::invalid_parameters, "environmental model needs at least two variables");
  if (n_samples == 0) throw Error(ErrorCode::invalid_parameters, "n_samples must be positive");
  if (!(exceedance > 0.0 && exceedance < 1.0)) throw Error(ErrorCode::invalid_parameters, "exceedance must lie in (0,1)");
  if (static_cast<double>(n_samples) * exceedance < 10.0) {
    throw Error(ErrorCode::invalid_parameters, "n_samples * exceedance must be at least 10");
  }
  for (std::size_t k = 0; k < model.size(); ++k) {
    const std::string name = "variable " + std::to_string(k);
    if (const auto* w = std::get_if<Weibull3>(&model[k])) {
      if (!finite_all({w->scale, w->shape, w->location}) || !(w->scale > 0.0) || !(w->shape > 0.0)) {
        throw Error(ErrorCode::invalid_parameters, name + ": Weibull scale and shape must be positive");
      }
      continue;
    }
    const std::size_t parent = std::visit(
        [](const auto& m) -> std::size_t {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Weibull3>) {
            return 0;
          } else {
            return m.parent;
          }
        },
        model[k]);
    if (parent >= k) throw Error(ErrorCode::invalid_parameters, name + ": parent must precede the variable");
    const double lo = support_lower(model, parent);
    if (const auto* ln = std::get_if<ConditionalLognormal>(&model[k])) {
      if (!finite_all({ln->log_mean.a, ln->log_mean.b, ln->log_mean.c})) {
        throw Error(ErrorCode::invalid_parameters, name + ": non-finite log-mean coefficients");
      }
      require_positive(ln->log_sd, lo, exp_limit, name + " log-sd");
    } else if (const auto* w2 = std::get_if<ConditionalWeibull2>(&model[k])) {
      require_positive(w2->scale, lo, power_limit, name + " scale");
      require_positive(w2->shape, lo, power_limit, name + " shape");
    }
  }
}

MonteCarloSpec wave_ht_spec(std::uint64_t seed) {
  MonteCarloSpec s;
  s.model = {Weibull3{2.259, 1.285, 0.701}, ConditionalLognormal{0, PowerLaw{1.069, 0.898, 0.243}, ExpLaw{0.025, 0.263, -0.148}}};
  s.n_samples = 300000;
  s.exceedance = 1.0 / 29200.0;
  s.seed = seed;
  return s;
}

MonteCarloSpec wave_htu_spec(std::uint64_t seed) {
  MonteCarloSpec s;
  s.model = {Weibull3{1.798, 1.214, 0.856},
             ConditionalLognormal{0, PowerLaw{-1.010, 2.847, 0.075}, ExpLaw{0.161, 0.146, -0.683}},
             ConditionalWeibull2{0, PowerLaw{2.58, 0.12, 1.6}, PowerLaw{4.6, 2.05, 1.0}}};
  s.n_samples = 1000000;
  s.exceedance = 1.0 / 29200.0;
  s.seed = seed;
  return s;
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  constexpr std::uint64_t kM0 = 0xD2511F53u;
  constexpr std::uint64_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = kM0 * ctr[0];
    const std::uint64_t p1 = kM1 * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

std::array<double, 2> uniform_pair(std::uint64_t seed, std::uint64_t index, std::uint32_t var) {
  const auto out = philox4x32({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), var, 0u},
                              {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  const std::uint64_t a = ((static_cast<std::uint64_t>(out[0]) << 32) | out[1]) >> 11;
  const std::uint64_t b = ((static_cast<std::uint64_t>(out[2]) << 32) | out[3]) >> 11;
  return {(static_cast<double>(a) + 0.5) * kScale, (static_cast<double>(b) + 0.5) * kScale};
}

double sample_weibull3(const Weibull3& p, double u) { return p.location + p.scale * std::pow(-std::log(u), 1.0 / p.shape); }

double sample_conditional_lognormal(const ConditionalLognormal& p, double parent_value, double z) {
  return std::exp(p.log_mean(parent_value) + p.log_sd(parent_value) * z);
}

double sample_conditional_weibull2(const ConditionalWeibull2& p, double parent_value, double u) {
  return p.scale(parent_value) * std::pow(-std::log(u), 1.0 / p.shape(parent_value));
}

double standard_normal(double u1, double u2) { return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2); }

SampleCloud draw_samples(const MonteCarloSpec& spec) {
  spec.validate();
  SampleCloud cloud;
  cloud.dim = spec.dim();
  cloud.n = spec.n_samples;
  cloud.data.assign(cloud.n * cloud.dim, 0.0);
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (cloud.n + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(cloud.n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      double* row = &cloud.data[i * cloud.dim];
      for (std::size_t k = 0; k < cloud.dim; ++k) {
        const auto u = uniform_pair(spec.seed, i, static_cast<std::uint32_t>(k));
        row[k] = std::visit(
            [&](const auto& m) -> double {
              using T = std::decay_t<decltype(m)>;
              if constexpr (std::is_same_v<T, Weibull3>) {
                return sample_weibull3(m, u[0]);
              } else if constexpr (std::is_same_v<T, ConditionalLognormal>) {
                return sample_conditional_lognormal(m, row[m.parent], standard_normal(u[0], u[1]));
              } else {
                return sample_conditional_weibull2(m, row[m.parent], u[0]);
              }
            },
            spec.model[k]);
      }
    }
  });
  return cloud;
}

std::size_t upper_quantile_index(std::size_t n, double exceedance) {
  const auto tail = static_cast<std::size_t>(std::floor(static_cast<double>(n) * exceedance));
  return std::max<std::size_t>(1, n - std::min(tail, n - 1));
}

std::vector<double> empirical_upper_quantiles(const SampleCloud& cloud, std::span<const Direction> dirs, double exceedance) {
  if (cloud.n == 0) throw Error(ErrorCode::invalid_argument, "empty sample cloud");
  if (!(exceedance > 0.0 && exceedance < 1.0)) throw Error(ErrorCode::invalid_parameters, "exceedance must lie in (0,1)");
  for (const auto& u : dirs) {
    if (u.dim() != cloud.dim) throw Error(ErrorCode::dimension_mismatch, "direction dimension differs from sample dimension");
  }
  const std::size_t k = upper_quantile_index(cloud.n, exceedance) - 1;
  std::vector<double> out(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t d) {
    std::vector<double> proj(cloud.n);
    for (std::size_t i = 0; i < cloud.n; ++i) proj[i] = dot(cloud.row(i), dirs[d].coords());
    std::nth_element(proj.begin(), proj.begin() + static_cast<std::ptrdiff_t>(k), proj.end());
    out[d] = proj[k];
  });
  return out;
}

std::vector<TableRow> montecarlo_estimate(const MonteCarloSpec& spec, std::span<const Direction> dirs) {
  if (dirs.empty()) throw Error(ErrorCode::invalid_argument, "no directions to estimate");
  const SampleCloud cloud = draw_samples(spec);
  for (const auto& u : dirs) {
    if (u.dim() != cloud.dim) throw Error(ErrorCode::dimension_mismatch, "direction dimension differs from model dimension");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < cloud.n; ++i) {
      const double p = dot(cloud.row(i), u.coords());
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    if (lo == hi) throw Error(ErrorCode::degenerate_sample, "all projections identical in some direction");
  }
  const auto q = empirical_upper_quantiles(cloud, dirs, spec.exceedance);
  std::vector<TableRow> rows;
  rows.reserve(dirs.size());
  for (std::size_t d = 0; d < dirs.size(); ++d) rows.push_back({dirs[d], q[d]});
  return rows;
}

}  // namespace hullmin
