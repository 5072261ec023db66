#include "muscl/mesh/quadrature.hpp"

#include <Eigen/Geometry>

#include <cmath>

namespace muscl {

double simplex_measure(const std::vector<Point>& s) {
  switch (s.size()) {
    case 2: return (s[1] - s[0]).norm();
    case 3: return 0.5 * (s[1] - s[0]).cross(s[2] - s[0]).norm();
    case 4: return std::abs((s[1] - s[0]).dot((s[2] - s[0]).cross(s[3] - s[0]))) / 6.0;
    default: throw MeshError("simplex with " + std::to_string(s.size()) + " vertices");
  }
}

namespace {

void degree2_rule(const std::vector<Point>& s, std::vector<QuadraturePoint>& out) {
  const double vol = simplex_measure(s);
  switch (s.size()) {
    case 2: {
      const double off = 0.5 / std::sqrt(3.0);
      const Point mid = 0.5 * (s[0] + s[1]);
      const Point t = s[1] - s[0];
      out.push_back({mid - off * t, 0.5 * vol});
      out.push_back({mid + off * t, 0.5 * vol});
      break;
    }
    case 3:
      for (int i = 0; i < 3; ++i) {
        const Point x = (2.0 / 3.0) * s[i] + (1.0 / 6.0) * (s[(i + 1) % 3] + s[(i + 2) % 3]);
        out.push_back({x, vol / 3.0});
      }
      break;
    case 4: {
      const double a = 0.5854101966249685;
      const double b = 0.1381966011250105;
      for (int i = 0; i < 4; ++i) {
        Point x = a * s[i];
        for (int j = 0; j < 4; ++j)
          if (j != i) x += b * s[j];
        out.push_back({x, 0.25 * vol});
      }
      break;
    }
    default: throw MeshError("unsupported simplex");
  }
}

std::vector<std::vector<Point>> midpoint_children(const std::vector<Point>& s) {
  const auto mid = [&](int i, int j) -> Point { return 0.5 * (s[i] + s[j]); };
  switch (s.size()) {
    case 2: return {{s[0], mid(0, 1)}, {mid(0, 1), s[1]}};
    case 3: {
      const Point m01 = mid(0, 1), m12 = mid(1, 2), m02 = mid(0, 2);
      return {{s[0], m01, m02}, {m01, s[1], m12}, {m02, m12, s[2]}, {m01, m12, m02}};
    }
    case 4: {
      const Point m01 = mid(0, 1), m02 = mid(0, 2), m03 = mid(0, 3);
      const Point m12 = mid(1, 2), m13 = mid(1, 3), m23 = mid(2, 3);
      // four corners, then the inner octahedron cut along m02-m13
      return {{s[0], m01, m02, m03}, {m01, s[1], m12, m13}, {m02, m12, s[2], m23}, {m03, m13, m23, s[3]},
              {m01, m02, m03, m13},  {m01, m02, m12, m13},  {m02, m03, m13, m23},  {m02, m12, m13, m23}};
    }
    default: throw MeshError("unsupported simplex");
  }
}

void subsample(const std::vector<Point>& s, int levels, std::vector<QuadraturePoint>& out) {
  if (levels == 0) {
    Point c = Point::Zero();
    for (const auto& p : s) c += p;
    out.push_back({c / static_cast<double>(s.size()), simplex_measure(s)});
    return;
  }
  for (const auto& child : midpoint_children(s)) subsample(child, levels - 1, out);
}

}  // namespace

std::vector<QuadraturePoint> element_quadrature(const Mesh& mesh, int e) {
  std::vector<QuadraturePoint> out;
  for (const auto& s : simplex_decomposition(mesh, e)) degree2_rule(s, out);
  return out;
}

std::vector<QuadraturePoint> element_subsamples(const Mesh& mesh, int e, int levels) {
  std::vector<QuadraturePoint> out;
  for (const auto& s : simplex_decomposition(mesh, e)) subsample(s, levels, out);
  return out;
}

}  // namespace muscl
