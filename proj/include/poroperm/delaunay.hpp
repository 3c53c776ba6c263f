#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace poroperm {

using Triangle = std::array<int, 3>;

/// Bowyer-Watson Delaunay triangulation. Triangles are returned counter-
/// clockwise. Throws ConstructionError for fewer than three points,
/// duplicate points or an all-collinear input.
std::vector<Triangle> delaunay_triangulate(std::span<const Eigen::Vector2d> points);

/// Unique undirected edges (a < b), sorted lexicographically.
std::vector<std::pair<int, int>> triangulation_edges(std::span<const Triangle> triangles);

/// Orientation and in-circle predicates (positive = counter-clockwise / inside).
double orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c);
double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                const Eigen::Vector2d& d);

}  // namespace poroperm
