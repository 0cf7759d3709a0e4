#include "hullmin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "hullmin/error.hpp"

namespace hullmin {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < e; ++k) r *= b;
  return r;
}

std::size_t cubed_s_for(std::size_t dim, std::size_t min_count) {
  std::size_t s = 1;
  while (cubed_size(dim, s) < min_count) ++s;
  return s;
}

}  // namespace

const char* to_string(QuadratureScheme s) noexcept {
  switch (s) {
    case QuadratureScheme::uniform2d: return "uniform2d";
    case QuadratureScheme::cubed_hypersphere: return "cubed_hypersphere";
    case QuadratureScheme::reweighted: return "reweighted";
    case QuadratureScheme::external: return "external";
  }
  return "external";
}

QuadratureScheme scheme_from_string(const std::string& name) {
  if (name == "uniform2d") return QuadratureScheme::uniform2d;
  if (name == "cubed_hypersphere") return QuadratureScheme::cubed_hypersphere;
  if (name == "reweighted") return QuadratureScheme::reweighted;
  if (name == "external") return QuadratureScheme::external;
  throw Error(ErrorCode::parse_error, "unknown quadrature scheme '" + name + "'");
}

double Quadrature::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

bool Quadrature::weight_sum_certified() const { return std::abs(weight_sum() - 1.0) <= eps_bound; }

void Quadrature::validate() const {
  if (directions.empty()) throw Error(ErrorCode::invalid_argument, "quadrature has no directions");
  if (directions.size() != weights.size()) throw Error(ErrorCode::invalid_argument, "directions and weights differ in length");
  for (const auto& u : directions) {
    if (u.dim() != dim) throw Error(ErrorCode::dimension_mismatch, "quadrature direction of wrong dimension");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::invalid_argument, "quadrature weights must be finite and >= 0");
  }
  if (!(eps_bound >= 0.0) || !(dispersion_bound >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "quadrature bounds must be >= 0");
  }
  // Any pair closer than 1e-12 also differs by at most 1e-12 in coordinate 0.
  std::vector<std::size_t> order(directions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return directions[a][0] < directions[b][0]; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto& a = directions[order[i]];
      const auto& b = directions[order[j]];
      if (b[0] - a[0] > 1e-12) break;
      if (distance(a.coords(), b.coords()) <= 1e-12) throw Error(ErrorCode::invalid_argument, "repeated quadrature direction");
    }
  }
}

Quadrature uniform_2d(std::size_t m) {
  if (m < 3) throw Error(ErrorCode::invalid_m, "uniform 2D quadrature needs m >= 3");
  Quadrature q;
  q.dim = 2;
  q.scheme = QuadratureScheme::uniform2d;
  q.directions.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    q.directions.push_back(Direction::from_angle(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m)));
  }
  q.weights.assign(m, 1.0 / static_cast<double>(m));
  q.eps_bound = std::numbers::pi / (2.0 * static_cast<double>(m));
  q.dispersion_bound = 2.0 * std::sin(std::numbers::pi / (2.0 * static_cast<double>(m)));
  return q;
}

std::size_t cubed_size(std::size_t dim, std::size_t s) { return 2 * dim * ipow(s, dim - 1); }

double sphere_area(std::size_t dim) {
  const double n = static_cast<double>(dim);
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

Quadrature cubed_hypersphere(std::size_t dim, std::size_t s, CubedWeighting weighting) {
  if (dim < 2) throw Error(ErrorCode::invalid_dim, "cubed hypersphere needs N >= 2");
  if (s < 1) throw Error(ErrorCode::invalid_s, "cubed hypersphere needs s >= 1");
  const std::size_t face_pts = ipow(s, dim - 1);
  const double h = 2.0 / static_cast<double>(s);
  const double cell = std::pow(h, static_cast<double>(dim - 1));
  const double area = sphere_area(dim);
  Quadrature q;
  q.dim = dim;
  q.scheme = QuadratureScheme::cubed_hypersphere;
  q.directions.reserve(2 * dim * face_pts);
  q.weights.reserve(2 * dim * face_pts);
  std::vector<std::size_t> idx(dim - 1);
  std::vector<double> v(dim);
  for (std::size_t axis = 0; axis < dim; ++axis) {
    for (double sign : {1.0, -1.0}) {
      for (std::size_t flat = 0; flat < face_pts; ++flat) {
        std::size_t rest = flat;
        for (std::size_t k = 0; k + 1 < dim; ++k) {
          idx[k] = rest % s;
          rest /= s;
        }
        std::size_t g = 0;
        for (std::size_t k = 0; k < dim; ++k) {
          if (k == axis) {
            v[k] = sign;
          } else {
            // grid U = {(2i - s - 1)/s : i = 1..s}
            v[k] = (2.0 * static_cast<double>(idx[g] + 1) - static_cast<double>(s) - 1.0) / static_cast<double>(s);
            ++g;
          }
        }
        const double len = norm(v);
        const double w = weighting == CubedWeighting::sphere_measure
                             ? cell / (std::pow(len, static_cast<double>(dim)) * area)
                             : cell / len;
        q.directions.emplace_back(v);
        q.weights.push_back(w);
      }
    }
  }
  const double n = static_cast<double>(dim);
  const double cell_eps = n * std::pow(2.0, n) * std::sqrt(n - 1.0) / static_cast<double>(s);
  q.eps_bound = cell_eps * std::max(1.0, n / area);
  q.dispersion_bound = std::sqrt(n - 1.0) / static_cast<double>(s);
  return q;
}

std::vector<Direction> probe_directions(std::size_t dim, std::size_t min_count) {
  if (dim == 2) return uniform_2d(std::max<std::size_t>(min_count, 3)).directions;
  return cubed_hypersphere(dim, cubed_s_for(dim, min_count)).directions;
}

double probe_dispersion(std::size_t dim, std::size_t min_count) {
  if (dim == 2) return 2.0 * std::sin(std::numbers::pi / (2.0 * static_cast<double>(std::max<std::size_t>(min_count, 3))));
  return std::sqrt(static_cast<double>(dim) - 1.0) / static_cast<double>(cubed_s_for(dim, min_count));
}

DispersionEstimate dispersion_estimate(std::span<const Direction> dirs, std::size_t probe_count) {
  if (dirs.empty()) throw Error(ErrorCode::invalid_argument, "dispersion of an empty set");
  const std::size_t dim = dirs.front().dim();
  const std::size_t m = dirs.size();
  if (probe_count == 0) probe_count = dim == 2 ? 100 * m : 50 * m;
  const auto probes = probe_directions(dim, probe_count);
  const double resolution = probe_dispersion(dim, probe_count);
  double worst = 0.0;
  if (dim == 2) {
    std::vector<double> ang;
    ang.reserve(m);
    for (const auto& u : dirs) ang.push_back(u.angle());
    std::sort(ang.begin(), ang.end());
    const double two_pi = 2.0 * std::numbers::pi;
    for (const auto& p : probes) {
      const double t = p.angle();
      auto it = std::lower_bound(ang.begin(), ang.end(), t);
      const double hi = it == ang.end() ? ang.front() + two_pi : *it;
      const double lo = it == ang.begin() ? ang.back() - two_pi : *(it - 1);
      const double gap = std::min(hi - t, t - lo);
      worst = std::max(worst, 2.0 * std::sin(std::min(gap, std::numbers::pi) / 2.0));
    }
  } else {
    for (const auto& p : probes) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& u : dirs) best = std::min(best, distance(p.coords(), u.coords()));
      worst = std::max(worst, best);
    }
  }
  return {worst, resolution};
}

Quadrature reweight(std::span<const Direction> targets, const Quadrature& base, std::optional<double> target_dispersion) {
  if (targets.empty()) throw Error(ErrorCode::empty_targets, "reweight needs at least one target direction");
  for (const auto& t : targets) {
    if (t.dim() != base.dim) throw Error(ErrorCode::dimension_mismatch, "target dimension differs from base quadrature");
  }
  const double delta = target_dispersion ? *target_dispersion : dispersion_estimate(targets).upper();
  Quadrature q;
  q.dim = base.dim;
  q.scheme = QuadratureScheme::reweighted;
  q.directions.assign(targets.begin(), targets.end());
  q.weights.assign(targets.size(), 0.0);
  for (std::size_t j = 0; j < base.size(); ++j) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < targets.size(); ++i) {
      double d = 0.0;
      for (std::size_t k = 0; k < base.dim; ++k) {
        const double diff = targets[i][k] - base.directions[j][k];
        d += diff * diff;
      }
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    q.weights[best] += base.weights[j];
  }
  q.eps_bound = delta + base.eps_bound * (1.0 + delta);
  q.dispersion_bound = delta;
  return q;
}

double integrate(const Quadrature& q, const std::function<double(const Direction&)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * f(q.directions[i]);
  return s;
}

}  // namespace hullmin
