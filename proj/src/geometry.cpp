#include "hullmin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "hullmin/error.hpp"
#include "hullmin/lpcore.hpp"

namespace hullmin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMergeTol = 1e-9;

double canonical_angle(double x, double y) {
  double t = std::atan2(y, x);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

Point line_crossing(const HalfSpace& a, const HalfSpace& b) {
  const double ax = a.normal[0], ay = a.normal[1];
  const double bx = b.normal[0], by = b.normal[1];
  const double det = ax * by - ay * bx;
  return {(a.offset * by - b.offset * ay) / det, (ax * b.offset - bx * a.offset) / det};
}

// ccw angular gap from a to b in [0, 2pi)
double ccw_gap(double from, double to) {
  double g = to - from;
  if (g < 0.0) g += kTwoPi;
  return g;
}

std::vector<Point> merge_cyclic(std::vector<Point> pts) {
  std::vector<Point> out;
  for (auto& p : pts) {
    if (!out.empty() && distance(out.back(), p) <= kMergeTol) continue;
    out.push_back(std::move(p));
  }
  while (out.size() > 1 && distance(out.front(), out.back()) <= kMergeTol) out.pop_back();
  return out;
}

void check_point(const Point& p, std::size_t dim) {
  if (p.size() != dim) throw Error(ErrorCode::dimension_mismatch, "point dimension differs from body dimension");
  for (double v : p) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "non-finite point coordinate");
  }
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

Direction::Direction(std::vector<double> coords) : c_(std::move(coords)) {
  if (c_.size() < 2) throw Error(ErrorCode::invalid_dim, "directions need N >= 2");
  for (double v : c_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "non-finite direction coordinate");
  }
  const double n = norm(c_);
  if (n == 0.0) throw Error(ErrorCode::invalid_argument, "zero vector is not a direction");
  for (double& v : c_) v /= n;
}

Direction Direction::from_angle(double theta) { return Direction({std::cos(theta), std::sin(theta)}); }

double Direction::angle() const { return canonical_angle(c_[0], c_[1]); }

ConvexBody ConvexBody::from_points(std::vector<Point> points) {
  if (points.empty()) throw Error(ErrorCode::invalid_argument, "point list is empty");
  ConvexBody b;
  b.dim_ = points.front().size();
  if (b.dim_ < 2) throw Error(ErrorCode::invalid_dim, "bodies need N >= 2");
  for (const auto& p : points) check_point(p, b.dim_);
  b.points_ = std::move(points);
  b.compute_radius();
  return b;
}

ConvexBody ConvexBody::from_halfspaces(std::size_t dim, std::vector<HalfSpace> hrep) {
  if (dim < 2) throw Error(ErrorCode::invalid_dim, "bodies need N >= 2");
  if (hrep.empty()) throw Error(ErrorCode::invalid_argument, "half-space list is empty");
  for (const auto& h : hrep) {
    if (h.normal.dim() != dim) throw Error(ErrorCode::dimension_mismatch, "half-space normal dimension differs");
    if (!std::isfinite(h.offset)) throw Error(ErrorCode::invalid_argument, "non-finite half-space offset");
  }
  ConvexBody b;
  b.dim_ = dim;
  b.hrep_ = std::move(hrep);
  if (dim == 2) {
    b.points_ = halfplane_intersection(b.hrep_);
    b.derived_ = true;
    b.compute_radius();
    return b;
  }
  double sq = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<double> e(dim, 0.0);
    e[k] = 1.0;
    const double up = b.hrep_support_lp(Direction(e), nullptr);
    e[k] = -1.0;
    const double down = b.hrep_support_lp(Direction(e), nullptr);
    const double r = std::max(std::abs(up), std::abs(down));
    sq += r * r;
  }
  b.radius_ = std::sqrt(sq);
  return b;
}

ConvexBody ConvexBody::from_both(std::vector<Point> points, std::vector<HalfSpace> hrep) {
  ConvexBody b = from_points(std::move(points));
  for (const auto& h : hrep) {
    if (h.normal.dim() != b.dim_) throw Error(ErrorCode::dimension_mismatch, "half-space normal dimension differs");
    for (const auto& p : b.points_) {
      if (dot(h.normal.coords(), p) > h.offset + 1e-9) {
        throw Error(ErrorCode::invalid_argument, "vertex violates a half-space of the same body");
      }
    }
  }
  b.hrep_ = std::move(hrep);
  return b;
}

void ConvexBody::compute_radius() {
  double r = 0.0;
  for (const auto& p : points_) r = std::max(r, norm(p));
  radius_ = r;
}

double ConvexBody::hrep_support_lp(const Direction& u, Point* argmax) const {
  lp::LinearProgram prog(dim_);
  for (std::size_t k = 0; k < dim_; ++k) prog.set_cost(k, -u[k]);
  for (const auto& h : hrep_) {
    std::vector<lp::Term> terms;
    terms.reserve(dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
      if (h.normal[k] != 0.0) terms.push_back({k, h.normal[k]});
    }
    prog.add_constraint(std::move(terms), lp::Relation::less_equal, h.offset);
  }
  const auto sol = lp::solve(prog);
  switch (sol.status) {
    case lp::Status::optimal: break;
    case lp::Status::unbounded: throw Error(ErrorCode::unbounded_support, "half-space body is unbounded in a probed direction");
    case lp::Status::infeasible: throw Error(ErrorCode::empty_body, "half-spaces have empty intersection");
    case lp::Status::iteration_limit: throw Error(ErrorCode::solver_failed, "support LP hit the iteration limit");
  }
  if (argmax != nullptr) *argmax = sol.x;
  return dot(u.coords(), sol.x);
}

double ConvexBody::support(const Direction& u) const {
  if (u.dim() != dim_) throw Error(ErrorCode::dimension_mismatch, "direction dimension differs from body");
  if (!points_.empty()) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : points_) best = std::max(best, dot(u.coords(), p));
    return best;
  }
  return hrep_support_lp(u, nullptr);
}

Point ConvexBody::support_point(const Direction& u) const {
  if (u.dim() != dim_) throw Error(ErrorCode::dimension_mismatch, "direction dimension differs from body");
  if (!points_.empty()) {
    std::size_t best = 0;
    double best_v = dot(u.coords(), points_[0]);
    for (std::size_t i = 1; i < points_.size(); ++i) {
      const double v = dot(u.coords(), points_[i]);
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    return points_[best];
  }
  Point x;
  hrep_support_lp(u, &x);
  return x;
}

double support(const ConvexBody& body, const Direction& u) { return body.support(u); }

double support_lipschitz_bound(const ConvexBody& body) {
  if (!body.radius()) throw Error(ErrorCode::radius_unavailable, "body has no point list and no computed radius");
  return *body.radius();
}

std::vector<Point> polygon_vertices_2d(std::span<const HalfSpace> hrep) {
  const std::size_t m = hrep.size();
  for (const auto& h : hrep) {
    if (h.normal.dim() != 2) throw Error(ErrorCode::dimension_mismatch, "polygon_vertices_2d needs 2D normals");
  }
  if (m < 3) throw Error(ErrorCode::unbounded_polygon, "fewer than three half-planes cannot bound a polygon");
  std::vector<double> theta(m);
  for (std::size_t i = 0; i < m; ++i) theta[i] = hrep[i].normal.angle();
  for (std::size_t i = 0; i < m; ++i) {
    const double gap = i == 0 ? theta[0] + kTwoPi - theta[m - 1] : theta[i] - theta[i - 1];
    if (i > 0 && gap <= 0.0) throw Error(ErrorCode::invalid_argument, "half-planes are not sorted by angle");
    if (gap >= std::numbers::pi) throw Error(ErrorCode::unbounded_polygon, "angular gap of at least pi between normals");
    if (gap < 1e-10) throw Error(ErrorCode::near_parallel, "consecutive normals closer than 1e-10 rad");
  }
  std::vector<Point> pts;
  pts.reserve(m);
  for (std::size_t j = 0; j < m; ++j) pts.push_back(line_crossing(hrep[(j + m - 1) % m], hrep[j]));
  return merge_cyclic(std::move(pts));
}

std::vector<Point> halfplane_intersection(std::span<const HalfSpace> hrep) {
  struct Item {
    double theta;
    std::size_t idx;
  };
  std::vector<Item> items;
  items.reserve(hrep.size());
  for (std::size_t i = 0; i < hrep.size(); ++i) {
    if (hrep[i].normal.dim() != 2) throw Error(ErrorCode::dimension_mismatch, "half-plane intersection needs 2D normals");
    items.push_back({hrep[i].normal.angle(), i});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.theta < b.theta; });

  // Collapse directions closer than 1e-12 rad, keeping the tightest offset.
  std::vector<Item> uniq;
  for (const auto& it : items) {
    if (!uniq.empty() && it.theta - uniq.back().theta < 1e-12) {
      if (hrep[it.idx].offset < hrep[uniq.back().idx].offset) uniq.back().idx = it.idx;
      continue;
    }
    uniq.push_back(it);
  }
  if (uniq.size() > 1 && uniq.front().theta + kTwoPi - uniq.back().theta < 1e-12) {
    if (hrep[uniq.back().idx].offset < hrep[uniq.front().idx].offset) uniq.front().idx = uniq.back().idx;
    uniq.pop_back();
  }
  const std::size_t m = uniq.size();
  if (m < 3) throw Error(ErrorCode::unbounded_polygon, "fewer than three distinct normals");
  for (std::size_t i = 0; i < m; ++i) {
    const double gap = ccw_gap(uniq[(i + m - 1) % m].theta, uniq[i].theta);
    if (gap >= std::numbers::pi) throw Error(ErrorCode::unbounded_polygon, "angular gap of at least pi between normals");
  }

  std::vector<std::size_t> prev(m), next(m);
  std::vector<char> alive(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    prev[i] = (i + m - 1) % m;
    next[i] = (i + 1) % m;
  }
  std::size_t count = m;
  std::vector<std::size_t> work(m);
  std::iota(work.rbegin(), work.rend(), std::size_t{0});
  auto remove = [&](std::size_t i) {
    alive[i] = 0;
    next[prev[i]] = next[i];
    prev[next[i]] = prev[i];
    work.push_back(prev[i]);
    work.push_back(next[i]);
    --count;
  };
  while (!work.empty() && count > 3) {
    const std::size_t i = work.back();
    work.pop_back();
    if (!alive[i]) continue;
    const std::size_t p = prev[i];
    const std::size_t n = next[i];
    const HalfSpace& hi = hrep[uniq[i].idx];
    const HalfSpace& hn = hrep[uniq[n].idx];
    // Nearly identical neighbours: keep the tighter one.
    if (ccw_gap(uniq[i].theta, uniq[n].theta) < 1e-10) {
      remove(hi.offset > hn.offset ? i : n);
      continue;
    }
    if (ccw_gap(uniq[p].theta, uniq[n].theta) >= std::numbers::pi) continue;
    const Point x = line_crossing(hrep[uniq[p].idx], hn);
    if (dot(hi.normal.coords(), x) <= hi.offset + 1e-12) remove(i);
  }

  std::vector<HalfSpace> kept;
  std::size_t start = 0;
  while (!alive[start]) ++start;
  std::size_t cur = start;
  do {
    kept.push_back(hrep[uniq[cur].idx]);
    cur = next[cur];
  } while (cur != start);

  std::vector<Point> pts;
  pts.reserve(kept.size());
  const std::size_t k = kept.size();
  for (std::size_t j = 0; j < k; ++j) pts.push_back(line_crossing(kept[(j + k - 1) % k], kept[j]));
  pts = merge_cyclic(std::move(pts));

  for (const auto& p : pts) {
    for (const auto& h : hrep) {
      if (dot(h.normal.coords(), p) > h.offset + kMergeTol * std::max(1.0, std::abs(h.offset))) {
        throw Error(ErrorCode::empty_body, "half-planes have empty intersection");
      }
    }
  }
  return pts;
}

std::vector<Point> convex_hull_2d(std::vector<Point> points) {
  for (const auto& p : points) check_point(p, 2);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Point> h(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0.0) --k;
    h[k++] = p;
  }
  for (std::size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], points[i]) <= 0.0) --k;
    h[k++] = points[i];
  }
  h.resize(k - 1);
  return h;
}

TriangleMesh convex_hull_3d(const std::vector<Point>& points) {
  for (const auto& p : points) check_point(p, 3);
  TriangleMesh out;
  const std::size_t n = points.size();
  if (n < 4) {
    out.vertices = points;
    return out;
  }
  double scale = 0.0;
  for (const auto& p : points) {
    for (double v : p) scale = std::max(scale, std::abs(v));
  }
  const double eps = 1e-10 * std::max(1.0, scale);

  auto sub = [&](std::size_t a, std::size_t b) {
    return std::array<double, 3>{points[a][0] - points[b][0], points[a][1] - points[b][1], points[a][2] - points[b][2]};
  };
  auto cross = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return std::array<double, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  auto len = [](const std::array<double, 3>& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); };

  std::size_t i0 = 0, i1 = 0, i2 = 0, i3 = 0;
  double best = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = len(sub(i, i0));
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  if (best <= eps) {
    out.vertices = {points[0]};
    return out;
  }
  best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = len(cross(sub(i1, i0), sub(i, i0)));
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= eps * len(sub(i1, i0))) {
    out.vertices = points;
    return out;
  }
  const auto n012 = cross(sub(i1, i0), sub(i2, i0));
  const double n012_len = len(n012);
  best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = sub(i, i0);
    const double h = std::abs(d[0] * n012[0] + d[1] * n012[1] + d[2] * n012[2]) / n012_len;
    if (h > best) {
      best = h;
      i3 = i;
    }
  }
  if (best <= eps) {
    out.vertices = points;
    return out;
  }

  struct Face {
    std::array<std::size_t, 3> v;
    std::array<double, 3> normal;
    double offset;
    bool alive;
  };
  std::vector<Face> faces;
  std::unordered_map<std::uint64_t, std::size_t> edge_face;
  auto key = [n](std::size_t a, std::size_t b) { return static_cast<std::uint64_t>(a) * n + b; };
  std::array<double, 3> interior{};
  for (std::size_t i : {i0, i1, i2, i3}) {
    for (int k = 0; k < 3; ++k) interior[k] += 0.25 * points[i][k];
  }
  auto add_face = [&](std::size_t a, std::size_t b, std::size_t c) {
    auto nrm = cross(sub(b, a), sub(c, a));
    double l = len(nrm);
    double off = (nrm[0] * points[a][0] + nrm[1] * points[a][1] + nrm[2] * points[a][2]);
    if (nrm[0] * interior[0] + nrm[1] * interior[1] + nrm[2] * interior[2] > off) {
      std::swap(b, c);
      for (auto& v : nrm) v = -v;
      off = -off;
    }
    for (auto& v : nrm) v /= l;
    off /= l;
    faces.push_back({{a, b, c}, nrm, off, true});
    const std::size_t f = faces.size() - 1;
    edge_face[key(a, b)] = f;
    edge_face[key(b, c)] = f;
    edge_face[key(c, a)] = f;
  };
  add_face(i0, i1, i2);
  add_face(i0, i1, i3);
  add_face(i0, i2, i3);
  add_face(i1, i2, i3);

  std::vector<char> used(n, 0);
  for (std::size_t i : {i0, i1, i2, i3}) used[i] = 1;
  std::vector<std::size_t> visible;
  for (std::size_t p = 0; p < n; ++p) {
    if (used[p]) continue;
    visible.clear();
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      const auto& F = faces[f];
      const double h = F.normal[0] * points[p][0] + F.normal[1] * points[p][1] + F.normal[2] * points[p][2] - F.offset;
      if (h > eps) visible.push_back(f);
    }
    if (visible.empty()) continue;
    std::vector<std::pair<std::size_t, std::size_t>> horizon;
    for (std::size_t f : visible) faces[f].alive = false;
    for (std::size_t f : visible) {
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = v[e], b = v[(e + 1) % 3];
        auto it = edge_face.find(key(b, a));
        if (it != edge_face.end() && faces[it->second].alive) horizon.emplace_back(a, b);
      }
    }
    for (std::size_t f : visible) {
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) {
        auto it = edge_face.find(key(v[e], v[(e + 1) % 3]));
        if (it != edge_face.end() && it->second == f) edge_face.erase(it);
      }
    }
    for (const auto& [a, b] : horizon) add_face(a, b, p);
    used[p] = 1;
  }

  std::vector<std::size_t> remap(n, static_cast<std::size_t>(-1));
  for (const auto& f : faces) {
    if (!f.alive) continue;
    std::array<std::size_t, 3> tri{};
    for (int k = 0; k < 3; ++k) {
      if (remap[f.v[k]] == static_cast<std::size_t>(-1)) {
        remap[f.v[k]] = out.vertices.size();
        out.vertices.push_back(points[f.v[k]]);
      }
      tri[k] = remap[f.v[k]];
    }
    out.faces.push_back(tri);
  }
  return out;
}

double polygon_perimeter(std::span<const Point> ccw_vertices) {
  const std::size_t k = ccw_vertices.size();
  if (k < 2) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += distance(ccw_vertices[i], ccw_vertices[(i + 1) % k]);
  return s;
}

double diameter(std::span<const Point> points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, distance(points[i], points[j]));
  }
  return d;
}

HausdorffEstimate hausdorff_distance(const ConvexBody& a, const ConvexBody& b, std::span<const Direction> grid,
                                     double grid_dispersion) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::dimension_mismatch, "bodies of different dimension");
  if (grid.empty()) throw Error(ErrorCode::invalid_argument, "empty direction grid");
  double est = 0.0;
  for (const auto& u : grid) est = std::max(est, std::abs(a.support(u) - b.support(u)));
  const double bound = (support_lipschitz_bound(a) + support_lipschitz_bound(b)) * grid_dispersion;
  return {est, bound};
}

}  // namespace hullmin
