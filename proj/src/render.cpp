#include "hullmin/render.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "hullmin/error.hpp"
#include "hullmin/parallel.hpp"

namespace hullmin {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string points_attr(const std::vector<Point>& pts) {
  std::string s;
  for (const auto& p : pts) {
    if (!s.empty()) s += ' ';
    s += num(p[0]) + "," + num(p[1]);
  }
  return s;
}

}  // namespace

std::string render_svg(const SvgScene& scene) {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  auto grow = [&](const std::vector<Point>& pts) {
    for (const auto& p : pts) {
      if (p.size() != 2) throw Error(ErrorCode::invalid_dim, "SVG output needs 2D points");
      lo_x = std::min(lo_x, p[0]);
      hi_x = std::max(hi_x, p[0]);
      lo_y = std::min(lo_y, p[1]);
      hi_y = std::max(hi_y, p[1]);
    }
  };
  grow(scene.requirement_curve);
  if (scene.body_prime) grow(*scene.body_prime);
  if (scene.body_star) grow(*scene.body_star);
  if (!(lo_x <= hi_x)) lo_x = lo_y = -1.0, hi_x = hi_y = 1.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double pad = 0.05 * span;
  const double stroke = span / 400.0;

  std::ostringstream os;
  // y is flipped by the group transform, so the viewBox is built on -y.
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"" << num(lo_x - pad) << " "
     << num(-hi_y - pad) << " " << num(span + 2 * pad) << " " << num(span + 2 * pad)
     << "\" preserveAspectRatio=\"xMidYMid meet\">\n";
  if (!scene.title.empty()) os << "<title>" << scene.title << "</title>\n";
  os << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << num(stroke) << "\">\n";
  os << "<line x1=\"" << num(lo_x - pad) << "\" y1=\"0\" x2=\"" << num(hi_x + pad) << "\" y2=\"0\" stroke=\"#ccc\"/>\n";
  os << "<line x1=\"0\" y1=\"" << num(lo_y - pad) << "\" x2=\"0\" y2=\"" << num(hi_y + pad) << "\" stroke=\"#ccc\"/>\n";
  if (scene.body_prime) os << "<polygon id=\"body_prime\" stroke=\"#d62728\" points=\"" << points_attr(*scene.body_prime) << "\"/>\n";
  if (scene.body_star) os << "<polygon id=\"body_star\" stroke=\"#2ca02c\" points=\"" << points_attr(*scene.body_star) << "\"/>\n";
  if (!scene.requirement_curve.empty()) {
    os << "<g id=\"requirement\" fill=\"#1f77b4\" stroke=\"none\">\n";
    for (const auto& p : scene.requirement_curve) {
      os << "<circle cx=\"" << num(p[0]) << "\" cy=\"" << num(p[1]) << "\" r=\"" << num(1.5 * stroke) << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_obj(const TriangleMesh& mesh, const std::string& comment) {
  std::ostringstream os;
  if (!comment.empty()) os << "# " << comment << "\n";
  char buf[96];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
    os << buf;
  }
  for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
  return os.str();
}

std::vector<Point> contact_points(const ConvexBody& prime, std::span<const Direction> dirs,
                                  std::span<const Point> witness_points) {
  if (witness_points.size() == dirs.size() && !dirs.empty()) return {witness_points.begin(), witness_points.end()};
  std::vector<Point> out(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) { out[i] = prime.support_point(dirs[i]); });
  return out;
}

TriangleMesh contact_mesh(const std::vector<Point>& points) {
  const auto hull = convex_hull_3d(points);
  std::map<Point, std::size_t> first;
  for (std::size_t i = 0; i < points.size(); ++i) first.emplace(points[i], i);
  TriangleMesh out{points, {}};
  for (const auto& f : hull.faces) {
    out.faces.push_back({first.at(hull.vertices[f[0]]), first.at(hull.vertices[f[1]]), first.at(hull.vertices[f[2]])});
  }
  return out;
}

}  // namespace hullmin
