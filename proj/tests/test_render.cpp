#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "hullmin/render.hpp"

using namespace hullmin;

TEST_CASE("SVG is self-contained with an equal-scaled view box") {
  SvgScene scene;
  scene.body_prime = std::vector<Point>{{0, 0}, {4, 0}, {4, 1}, {0, 1}};
  scene.body_star = std::vector<Point>{{1, 0.2}, {3, 0.2}, {2, 0.8}};
  for (int i = 0; i < 8; ++i) {
    const double t = 2 * std::numbers::pi * i / 8;
    scene.requirement_curve.push_back({2 + std::cos(t), 0.5 + 0.4 * std::sin(t)});
  }
  const auto svg = render_svg(scene);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("body_prime") != std::string::npos);
  CHECK(svg.find("body_star") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);
  // the view box is square, so both axes share a scale
  const auto vb = svg.find("viewBox=\"");
  REQUIRE(vb != std::string::npos);
  double x, y, w, h;
  REQUIRE(std::sscanf(svg.c_str() + vb + 9, "%lf %lf %lf %lf", &x, &y, &w, &h) == 4);
  CHECK(w == doctest::Approx(h));
  CHECK(w >= 4.0);
  CHECK_THROWS(render_svg(SvgScene{{{1.0, 2.0, 3.0}}, std::nullopt, std::nullopt, ""}));
}

TEST_CASE("OBJ keeps every contact point") {
  std::vector<Point> pts;
  for (int i = 0; i < 8; ++i) pts.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
  pts.push_back({0.5, 0.5, 0.5});
  pts.push_back(pts[0]);
  const auto mesh = contact_mesh(pts);
  CHECK(mesh.vertices.size() == pts.size());
  CHECK(mesh.faces.size() == 12);
  const auto obj = render_obj(mesh, "cube");
  std::size_t v = 0, f = 0;
  for (std::size_t pos = 0; pos < obj.size();) {
    const auto end = obj.find('\n', pos);
    if (obj.compare(pos, 2, "v ") == 0) ++v;
    if (obj.compare(pos, 2, "f ") == 0) ++f;
    pos = end + 1;
  }
  CHECK(v == pts.size());
  CHECK(f == 12);
  CHECK(obj.find("f 0 ") == std::string::npos);
}

TEST_CASE("contact points fall back to LP support points") {
  std::vector<HalfSpace> hs;
  for (int k = 0; k < 3; ++k) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> n(3, 0.0);
      n[k] = s;
      hs.push_back({Direction(n), 2.0});
    }
  }
  const auto body = ConvexBody::from_halfspaces(3, hs);
  const std::vector<Direction> dirs{Direction({1.0, 1.0, 1.0}), Direction({-1.0, 0.2, 0.3})};
  const auto pts = contact_points(body, dirs, {});
  REQUIRE(pts.size() == 2);
  CHECK(pts[0][0] == doctest::Approx(2.0));
  CHECK(pts[1][0] == doctest::Approx(-2.0));
}
