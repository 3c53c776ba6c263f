#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace poroperm {

using NodeId = std::int32_t;
using OpenMask = std::vector<std::uint8_t>;

/// Straight cylindrical channel between two pore nodes.
struct Channel {
  NodeId a = 0;
  NodeId b = 0;
  double radius = 0.0;  // m
  double length = 0.0;  // m
  bool open = true;

  double volume() const noexcept;
  /// Poiseuille conductance pi r^4 / (8 eta l).
  double conductance(double eta) const noexcept;
};

struct Rectangle {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
};

enum class NodeRole : std::uint8_t { Interior, Inlet, Outlet };

/// Node/channel graph with inlet (left) and outlet (right) node sets.
/// Immutable after construction; the constructor enforces all invariants.
class PoreNetwork {
 public:
  PoreNetwork(std::vector<Eigen::Vector2d> nodes, std::vector<Channel> channels,
              std::vector<NodeId> inlet_nodes, std::vector<NodeId> outlet_nodes,
              double span_length, double cross_section, double theta0);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t channel_count() const noexcept { return channels_.size(); }

  const std::vector<Eigen::Vector2d>& nodes() const noexcept { return nodes_; }
  const std::vector<Channel>& channels() const noexcept { return channels_; }
  const std::vector<NodeId>& inlet_nodes() const noexcept { return inlet_; }
  const std::vector<NodeId>& outlet_nodes() const noexcept { return outlet_; }
  NodeRole role(NodeId n) const { return roles_.at(static_cast<std::size_t>(n)); }

  double span_length() const noexcept { return span_length_; }
  double cross_section() const noexcept { return cross_section_; }
  double theta0() const noexcept { return theta0_; }

  /// V_t, total channel volume.
  double total_volume() const noexcept { return total_volume_; }
  /// V_o under the stored open flags, or under an external mask.
  double open_volume() const noexcept;
  double open_volume(std::span<const std::uint8_t> open) const;

  OpenMask open_mask() const;
  /// Copy with the open flags replaced by `open`.
  PoreNetwork with_open(std::span<const std::uint8_t> open) const;

  /// Degree of node n counting all channels (open or closed).
  int degree(NodeId n) const;

 private:
  std::vector<Eigen::Vector2d> nodes_;
  std::vector<Channel> channels_;
  std::vector<NodeId> inlet_;
  std::vector<NodeId> outlet_;
  std::vector<NodeRole> roles_;
  double span_length_;
  double cross_section_;
  double theta0_;
  double total_volume_ = 0.0;
};

/// Axis-aligned grid, leftmost column inlet, rightmost column outlet.
PoreNetwork build_rectangular(int nx, int ny, double spacing, double radius, double theta0);

/// Grid plus one diagonal per cell, arranged so that interior nodes with
/// even i+j have coordination 8 and the others 4 (union-jack pattern).
PoreNetwork build_triangular(int nx, int ny, double spacing, double radius, double theta0);

/// Delaunay triangulation of quasi-uniform random points (minimum spacing
/// 0.7 of the mean spacing) plus evenly spaced fixed nodes on all four edges;
/// the left and right columns are the inlet and outlet.
/// Deterministic for a fixed seed; exactly target_nodes nodes.
PoreNetwork build_unstructured_triangular(int target_nodes, const Rectangle& domain,
                                          std::uint64_t seed, double radius, double theta0);

/// Node pressures and channel flows of a solved network.
struct PressureSolution {
  Eigen::VectorXd node_pressures;  // Pa
  Eigen::VectorXd channel_flows;   // m^3/s, positive from channel.a to channel.b
  double total_flow = 0.0;         // Q, into the outlet nodes
  double inlet_flow = 0.0;         // out of the inlet nodes; equals Q by conservation
};

/// True iff the open subgraph connects some inlet node to some outlet node.
bool percolates(const PoreNetwork& net, std::span<const std::uint8_t> open);
bool percolates(const PoreNetwork& net);

/// Solves sum_j q_ij = 0 at every free node with q_ij = g_ij (p_i - p_j);
/// inlet pressure delta_p, outlet 0. Nodes in components touching neither
/// boundary get pressure 0 and carry no flow.
PressureSolution solve_pressure(const PoreNetwork& net, double delta_p, double eta);
PressureSolution solve_pressure(const PoreNetwork& net, std::span<const std::uint8_t> open,
                                double delta_p, double eta);

/// Darcy permeability Q eta L / (A delta_p), nonnegative.
double network_permeability(const PoreNetwork& net, const PressureSolution& solution,
                            double delta_p, double eta);

/// theta = V_o / V_t * theta0.
double network_porosity(const PoreNetwork& net);
double network_porosity(const PoreNetwork& net, std::span<const std::uint8_t> open);

/// Plain-text edge list:
///   nodes N channels M theta0 X
///   id x y          (N lines)
///   a b r l open    (M lines)
/// On read, inlet/outlet are the nodes on the minimum/maximum x column and
/// span/cross-section are taken from the bounding box.
void write_network(std::ostream& os, const PoreNetwork& net);
PoreNetwork read_network(std::istream& is);

}  // namespace poroperm
