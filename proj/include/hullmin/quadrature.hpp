#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hullmin/geometry.hpp"

namespace hullmin {

enum class QuadratureScheme { uniform2d, cubed_hypersphere, reweighted, external };

const char* to_string(QuadratureScheme s) noexcept;
QuadratureScheme scheme_from_string(const std::string& name);

/// Directions u_i with weights w_i approximating the normalized surface
/// measure: |sum w_i f(u_i) - int f dsigma| <= eps_bound * (L + |f|_inf) for
/// L-Lipschitz f. dispersion_bound bounds the distance from any unit vector
/// to the nearest u_i.
struct Quadrature {
  std::size_t dim = 0;
  std::vector<Direction> directions;
  std::vector<double> weights;
  double eps_bound = 0.0;
  double dispersion_bound = 0.0;
  QuadratureScheme scheme = QuadratureScheme::external;

  std::size_t size() const noexcept { return directions.size(); }
  double weight_sum() const;
  /// |sum w - 1| <= eps_bound, i.e. the accuracy claim holds for f = 1.
  bool weight_sum_certified() const;
  /// Throws InvalidArgument on negative weights, size mismatch, mixed
  /// dimensions or repeated directions.
  void validate() const;
};

Quadrature uniform_2d(std::size_t m);

/// sphere_measure: face midpoint rule with the exact face-to-sphere Jacobian,
/// normalized by the sphere area. face_measure: the literal weight
/// (2/s)^(N-1)/|V_i| (does not approximate the normalized measure).
enum class CubedWeighting { sphere_measure, face_measure };

Quadrature cubed_hypersphere(std::size_t dim, std::size_t s, CubedWeighting weighting = CubedWeighting::sphere_measure);

/// Number of points of the cubed hypersphere rule, 2N s^(N-1).
std::size_t cubed_size(std::size_t dim, std::size_t s);

struct DispersionEstimate {
  double estimate;          // max over probes of the distance to the nearest direction
  double probe_resolution;  // dispersion of the probe set itself
  double upper() const noexcept { return estimate + probe_resolution; }
};

/// probe_count = 0 selects the default: 100 m probes in 2D, a cubed grid with
/// at least 50 m points otherwise.
DispersionEstimate dispersion_estimate(std::span<const Direction> dirs, std::size_t probe_count = 0);

/// Nearest-target reassignment of base weights (ties go to the lowest target
/// index). target_dispersion defaults to dispersion_estimate(targets).upper().
Quadrature reweight(std::span<const Direction> targets, const Quadrature& base,
                    std::optional<double> target_dispersion = std::nullopt);

/// Uniform grid in 2D, cubed hypersphere otherwise; at least min_count points.
std::vector<Direction> probe_directions(std::size_t dim, std::size_t min_count);
/// Certified dispersion of probe_directions(dim, min_count).
double probe_dispersion(std::size_t dim, std::size_t min_count);

double integrate(const Quadrature& q, const std::function<double(const Direction&)>& f);

/// Surface area of S^(N-1).
double sphere_area(std::size_t dim);

}  // namespace hullmin
