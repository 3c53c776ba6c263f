#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace poroperm {

enum class ProblemKind {
  /// Pump pressure on the left edge, rigid right edge, sliding top and bottom.
  HighPumpPressure,
  /// Pump pressure on the left edge, clamped right edge, vertical load on the
  /// middle of the top and bottom edges.
  Squeeze,
};

enum class Side : std::uint8_t { Left, Right, Bottom, Top };

/// One boundary edge of a P2 triangle.
struct BoundaryEdge {
  std::array<int, 3> nodes;  // P2 nodes: endpoint, endpoint, midpoint
  int element;
  Side side;
  /// Boundary segment number: 1..4 for HighPumpPressure (top, left, bottom,
  /// right), 1..6 for Squeeze (top middle, top ends, left, bottom ends,
  /// bottom middle, right).
  int segment;
};

/// Structured triangulation of [0, L] x [0, H] with nx x ny square cells,
/// each split into two triangles. Cells below mid-height use the "/"
/// diagonal and cells above use "\", so the mesh is mirror symmetric about
/// y = H/2 whenever ny is even.
///
/// Vertices carry the P1 pressure. The P2 displacement nodes live on the
/// (2 nx + 1) x (2 ny + 1) refined grid; vertex (i, j) is refined node
/// (2 i, 2 j).
struct TriMesh {
  double width = 0.0;
  double height = 0.0;
  int nx = 0;
  int ny = 0;
  ProblemKind kind = ProblemKind::HighPumpPressure;
  double load_fraction = 0.5;

  std::vector<Eigen::Vector2d> vertices;   // index j * (nx + 1) + i
  std::vector<Eigen::Vector2d> p2_nodes;   // index J * (2 nx + 1) + I
  std::vector<int> vertex_node;            // vertex -> P2 node
  std::vector<std::array<int, 3>> triangles;  // vertex ids, counterclockwise
  /// P2 nodes per triangle: 0-2 vertices, 3 = mid(0,1), 4 = mid(1,2), 5 = mid(2,0).
  std::vector<std::array<int, 6>> p2_triangles;
  std::vector<BoundaryEdge> boundary;

  double dx() const noexcept { return width / nx; }
  double dy() const noexcept { return height / ny; }
  int vertex_count() const noexcept { return static_cast<int>(vertices.size()); }
  int node_count() const noexcept { return static_cast<int>(p2_nodes.size()); }
  int element_count() const noexcept { return static_cast<int>(triangles.size()); }
  int vertex_id(int i, int j) const noexcept { return j * (nx + 1) + i; }

  double area(int element) const;
  Eigen::Vector2d centroid(int element) const;
  /// Vertex mirrored about y = H/2.
  int mirror_vertex(int v) const noexcept;
  /// Elements whose closure touches the right edge.
  std::vector<int> outlet_column() const;
};

/// Builds the mesh; dx and dy must divide the domain (relative tolerance 1e-9).
/// `load_fraction` is the share of the top and bottom edges, centred, that
/// carries the squeeze load.
TriMesh build_rect_mesh(double width, double height, double dx, double dy, ProblemKind kind,
                        double load_fraction = 0.5);

}  // namespace poroperm
