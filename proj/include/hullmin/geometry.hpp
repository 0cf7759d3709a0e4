#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hullmin {

using Point = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double distance(std::span<const double> a, std::span<const double> b);

/// Unit vector on S^(N-1), N >= 2. The constructor normalizes its input.
class Direction {
 public:
  explicit Direction(std::vector<double> coords);
  static Direction from_angle(double theta);

  std::size_t dim() const noexcept { return c_.size(); }
  std::span<const double> coords() const noexcept { return c_; }
  double operator[](std::size_t k) const { return c_[k]; }

  /// Polar angle in [0, 2pi); only meaningful for N = 2.
  double angle() const;

 private:
  std::vector<double> c_;
};

/// { x : <normal, x> <= offset }
struct HalfSpace {
  Direction normal;
  double offset;
};

struct SupportValue {
  Direction direction;
  double value;
};

/// Convex compact set held as a point list, a half-space list, or both.
/// In 2D a half-space body also carries its vertices (computed once), so
/// support evaluation never needs the LP there.
class ConvexBody {
 public:
  static ConvexBody from_points(std::vector<Point> points);
  static ConvexBody from_halfspaces(std::size_t dim, std::vector<HalfSpace> hrep);
  static ConvexBody from_both(std::vector<Point> points, std::vector<HalfSpace> hrep);

  std::size_t dim() const noexcept { return dim_; }
  bool has_vrep() const noexcept { return !points_.empty(); }
  bool has_hrep() const noexcept { return !hrep_.empty(); }
  /// True when the points were derived from the half-spaces rather than given.
  bool vrep_derived() const noexcept { return derived_; }

  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<HalfSpace>& halfspaces() const noexcept { return hrep_; }

  double support(const Direction& u) const;
  Point support_point(const Direction& u) const;

  /// Max point norm when points are known; for N >= 3 half-space-only bodies
  /// an upper bound from the axis supports.
  std::optional<double> radius() const noexcept { return radius_; }

 private:
  ConvexBody() = default;
  double hrep_support_lp(const Direction& u, Point* argmax) const;
  void compute_radius();

  std::size_t dim_ = 0;
  std::vector<Point> points_;
  std::vector<HalfSpace> hrep_;
  bool derived_ = false;
  std::optional<double> radius_;
};

double support(const ConvexBody& body, const Direction& u);

/// R with |B(u) - B(v)| <= R |u - v|. Throws RadiusUnavailable.
double support_lipschitz_bound(const ConvexBody& body);

/// Crossing points of consecutive support lines. Input must already be sorted
/// by strictly increasing angle with every gap (cyclic) in [1e-10, pi).
std::vector<Point> polygon_vertices_2d(std::span<const HalfSpace> hrep);

/// General 2D half-plane intersection: sorts, drops duplicate directions and
/// redundant half-planes, and returns the polygon vertices counter-clockwise.
/// Throws UnboundedPolygon or EmptyBody.
std::vector<Point> halfplane_intersection(std::span<const HalfSpace> hrep);

/// Andrew's monotone chain; counter-clockwise, collinear points dropped.
std::vector<Point> convex_hull_2d(std::vector<Point> points);

struct TriangleMesh {
  std::vector<Point> vertices;
  std::vector<std::array<std::size_t, 3>> faces;  // outward, counter-clockwise
};

/// Incremental 3D hull. Degenerate (coplanar) inputs give an empty face list.
TriangleMesh convex_hull_3d(const std::vector<Point>& points);

double polygon_perimeter(std::span<const Point> ccw_vertices);
double diameter(std::span<const Point> points);

struct HausdorffEstimate {
  double estimate;
  double error_bound;
};

/// Max over grid directions of the support difference. The true distance lies
/// in [estimate, estimate + error_bound] with error_bound = (R_a + R_b) * delta.
HausdorffEstimate hausdorff_distance(const ConvexBody& a, const ConvexBody& b, std::span<const Direction> grid,
                                     double grid_dispersion);

}  // namespace hullmin
