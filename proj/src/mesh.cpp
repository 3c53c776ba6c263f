#include "poroperm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "poroperm/errors.hpp"

namespace poroperm {

double TriMesh::area(int element) const {
  const auto& t = triangles[element];
  const Eigen::Vector2d a = vertices[t[1]] - vertices[t[0]];
  const Eigen::Vector2d b = vertices[t[2]] - vertices[t[0]];
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

Eigen::Vector2d TriMesh::centroid(int element) const {
  const auto& t = triangles[element];
  return (vertices[t[0]] + vertices[t[1]] + vertices[t[2]]) / 3.0;
}

int TriMesh::mirror_vertex(int v) const noexcept {
  const int i = v % (nx + 1), j = v / (nx + 1);
  return vertex_id(i, ny - j);
}

std::vector<int> TriMesh::outlet_column() const {
  std::vector<int> out;
  for (int e = 0; e < element_count(); ++e) {
    for (int v : triangles[e]) {
      if (v % (nx + 1) == nx) {
        out.push_back(e);
        break;
      }
    }
  }
  return out;
}

namespace {

int cells_along(double length, double spacing, const char* what) {
  if (!(length > 0.0) || !(spacing > 0.0)) throw ParameterError(std::string("mesh: nonpositive ") + what);
  const double ratio = length / spacing;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * ratio)
    throw ParameterError(std::string("mesh: spacing does not divide the ") + what);
  return static_cast<int>(n);
}

}  // namespace

TriMesh build_rect_mesh(double width, double height, double dx, double dy, ProblemKind kind,
                        double load_fraction) {
  if (!(load_fraction > 0.0 && load_fraction < 1.0))
    throw ParameterError("mesh: load fraction must lie in (0, 1)");
  TriMesh m;
  m.width = width;
  m.height = height;
  m.nx = cells_along(width, dx, "width");
  m.ny = cells_along(height, dy, "height");
  m.kind = kind;
  m.load_fraction = load_fraction;

  const int nx = m.nx, ny = m.ny;
  const double hx = width / nx, hy = height / ny;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) m.vertices.emplace_back(i * hx, j * hy);

  const int fx = 2 * nx + 1;
  for (int J = 0; J <= 2 * ny; ++J)
    for (int I = 0; I < fx; ++I) m.p2_nodes.emplace_back(0.5 * I * hx, 0.5 * J * hy);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) m.vertex_node.push_back(2 * j * fx + 2 * i);

  auto node_of = [&](int v) { return m.vertex_node[v]; };
  auto mid = [&](int a, int b) { return (node_of(a) + node_of(b)) / 2; };
  auto add = [&](int a, int b, int c) {
    m.triangles.push_back({a, b, c});
    m.p2_triangles.push_back({node_of(a), node_of(b), node_of(c), mid(a, b), mid(b, c), mid(c, a)});
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = m.vertex_id(i, j), v10 = m.vertex_id(i + 1, j);
      const int v01 = m.vertex_id(i, j + 1), v11 = m.vertex_id(i + 1, j + 1);
      if (2 * j < ny) {
        add(v00, v10, v11);
        add(v00, v11, v01);
      } else {
        add(v00, v10, v01);
        add(v10, v11, v01);
      }
    }
  }

  const double lo = 0.5 * width * (1.0 - load_fraction), hi = 0.5 * width * (1.0 + load_fraction);
  auto segment = [&](Side side, const Eigen::Vector2d& c) {
    const bool middle = c.x() > lo && c.x() < hi;
    if (kind == ProblemKind::HighPumpPressure) {
      switch (side) {
        case Side::Top: return 1;
        case Side::Left: return 2;
        case Side::Bottom: return 3;
        case Side::Right: return 4;
      }
    }
    switch (side) {
      case Side::Top: return middle ? 1 : 2;
      case Side::Left: return 3;
      case Side::Bottom: return middle ? 5 : 4;
      case Side::Right: return 6;
    }
    return 0;
  };
  const double tol = 1e-9 * std::max(width, height);
  for (int e = 0; e < m.element_count(); ++e) {
    const auto& t = m.triangles[e];
    const auto& n = m.p2_triangles[e];
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector2d& a = m.vertices[t[k]];
      const Eigen::Vector2d& b = m.vertices[t[(k + 1) % 3]];
      Side side;
      if (std::abs(a.x()) < tol && std::abs(b.x()) < tol)
        side = Side::Left;
      else if (std::abs(a.x() - width) < tol && std::abs(b.x() - width) < tol)
        side = Side::Right;
      else if (std::abs(a.y()) < tol && std::abs(b.y()) < tol)
        side = Side::Bottom;
      else if (std::abs(a.y() - height) < tol && std::abs(b.y() - height) < tol)
        side = Side::Top;
      else
        continue;
      m.boundary.push_back({{n[k], n[(k + 1) % 3], n[3 + k]}, e, side, segment(side, 0.5 * (a + b))});
    }
  }
  return m;
}

}  // namespace poroperm
