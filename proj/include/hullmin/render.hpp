#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hullmin/geometry.hpp"

namespace hullmin {

struct SvgScene {
  std::vector<Point> requirement_curve;  // C(u) u, in angle order
  std::optional<std::vector<Point>> body_prime;
  std::optional<std::vector<Point>> body_star;
  std::string title;
};

/// Self-contained SVG with equal axis scaling (y up).
std::string render_svg(const SvgScene& scene);

/// Wavefront OBJ text; face indices are 1-based.
std::string render_obj(const TriangleMesh& mesh, const std::string& comment = {});

/// Points of B' touching its supporting plane in each direction: the witness
/// points when available, otherwise an LP support point per direction.
std::vector<Point> contact_points(const ConvexBody& prime, std::span<const Direction> dirs,
                                  std::span<const Point> witness_points);

/// Convex hull of the contact points as a mesh that keeps every contact point
/// as a vertex (interior or repeated points are simply unreferenced).
TriangleMesh contact_mesh(const std::vector<Point>& points);

}  // namespace hullmin
