#include "poroperm/network.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "poroperm/delaunay.hpp"
#include "poroperm/errors.hpp"
#include "poroperm/rng.hpp"

namespace poroperm {

double Channel::volume() const noexcept { return std::numbers::pi * radius * radius * length; }

double Channel::conductance(double eta) const noexcept {
  const double r2 = radius * radius;
  return std::numbers::pi * r2 * r2 / (8.0 * eta * length);
}

PoreNetwork::PoreNetwork(std::vector<Eigen::Vector2d> nodes, std::vector<Channel> channels,
                         std::vector<NodeId> inlet_nodes, std::vector<NodeId> outlet_nodes,
                         double span_length, double cross_section, double theta0)
    : nodes_(std::move(nodes)),
      channels_(std::move(channels)),
      inlet_(std::move(inlet_nodes)),
      outlet_(std::move(outlet_nodes)),
      span_length_(span_length),
      cross_section_(cross_section),
      theta0_(theta0) {
  const auto n = static_cast<NodeId>(nodes_.size());
  if (inlet_.empty() || outlet_.empty()) throw ParameterError("network: inlet and outlet sets must be nonempty");
  if (!(span_length_ > 0.0) || !(cross_section_ > 0.0))
    throw ParameterError("network: span length and cross section must be positive");
  if (!(theta0_ > 0.0 && theta0_ < 1.0)) throw ParameterError("network: theta0 must lie in (0, 1)");

  roles_.assign(nodes_.size(), NodeRole::Interior);
  for (NodeId id : inlet_) {
    if (id < 0 || id >= n) throw ParameterError("network: inlet node id out of range");
    roles_[id] = NodeRole::Inlet;
  }
  for (NodeId id : outlet_) {
    if (id < 0 || id >= n) throw ParameterError("network: outlet node id out of range");
    if (roles_[id] == NodeRole::Inlet) throw ParameterError("network: inlet and outlet sets overlap");
    roles_[id] = NodeRole::Outlet;
  }

  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& c : channels_) {
    if (c.a < 0 || c.a >= n || c.b < 0 || c.b >= n) throw ParameterError("network: channel endpoint out of range");
    if (c.a == c.b) throw ParameterError("network: channel endpoints must differ");
    if (!(c.radius > 0.0) || !(c.length > 0.0))
      throw ParameterError("network: channel radius and length must be positive");
    if (!seen.emplace(std::min(c.a, c.b), std::max(c.a, c.b)).second)
      throw ParameterError("network: duplicate channel");
    total_volume_ += c.volume();
  }
  if (!(total_volume_ > 0.0)) throw ParameterError("network: total channel volume must be positive");
}

double PoreNetwork::open_volume() const noexcept {
  double v = 0.0;
  for (const auto& c : channels_)
    if (c.open) v += c.volume();
  return v;
}

double PoreNetwork::open_volume(std::span<const std::uint8_t> open) const {
  if (open.size() != channels_.size()) throw ParameterError("network: open mask size mismatch");
  double v = 0.0;
  for (std::size_t k = 0; k < channels_.size(); ++k)
    if (open[k]) v += channels_[k].volume();
  return v;
}

OpenMask PoreNetwork::open_mask() const {
  OpenMask mask(channels_.size());
  for (std::size_t k = 0; k < channels_.size(); ++k) mask[k] = channels_[k].open ? 1 : 0;
  return mask;
}

PoreNetwork PoreNetwork::with_open(std::span<const std::uint8_t> open) const {
  if (open.size() != channels_.size()) throw ParameterError("network: open mask size mismatch");
  PoreNetwork copy = *this;
  for (std::size_t k = 0; k < channels_.size(); ++k) copy.channels_[k].open = open[k] != 0;
  return copy;
}

int PoreNetwork::degree(NodeId n) const {
  int d = 0;
  for (const auto& c : channels_)
    if (c.a == n || c.b == n) ++d;
  return d;
}

namespace {

void check_grid_args(int nx, int ny, double spacing, double radius, double theta0) {
  if (nx < 2 || ny < 1) throw ParameterError("network: need nx >= 2 and ny >= 1");
  if (!(spacing > 0.0) || !(radius > 0.0)) throw ParameterError("network: spacing and radius must be positive");
  if (!(theta0 > 0.0 && theta0 < 1.0)) throw ParameterError("network: theta0 must lie in (0, 1)");
}

struct Grid {
  std::vector<Eigen::Vector2d> nodes;
  std::vector<Channel> channels;
  std::vector<NodeId> inlet, outlet;
};

Grid grid_skeleton(int nx, int ny, double spacing, double radius) {
  Grid g;
  auto id = [nx](int i, int j) { return static_cast<NodeId>(j * nx + i); };
  g.nodes.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) g.nodes.emplace_back(i * spacing, j * spacing);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) g.channels.push_back({id(i, j), id(i + 1, j), radius, spacing, true});
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i < nx; ++i) g.channels.push_back({id(i, j), id(i, j + 1), radius, spacing, true});
  for (int j = 0; j < ny; ++j) {
    g.inlet.push_back(id(0, j));
    g.outlet.push_back(id(nx - 1, j));
  }
  return g;
}

double grid_cross_section(int ny, double spacing) { return ny > 1 ? (ny - 1) * spacing : spacing; }

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), NodeId{0}); }
  NodeId find(NodeId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<NodeId> parent_;
};

DisjointSets open_components(const PoreNetwork& net, std::span<const std::uint8_t> open) {
  DisjointSets ds(net.node_count());
  const auto& ch = net.channels();
  for (std::size_t k = 0; k < ch.size(); ++k)
    if (open[k]) ds.unite(ch[k].a, ch[k].b);
  return ds;
}

}  // namespace

PoreNetwork build_rectangular(int nx, int ny, double spacing, double radius, double theta0) {
  check_grid_args(nx, ny, spacing, radius, theta0);
  Grid g = grid_skeleton(nx, ny, spacing, radius);
  return PoreNetwork(std::move(g.nodes), std::move(g.channels), std::move(g.inlet), std::move(g.outlet),
                     (nx - 1) * spacing, grid_cross_section(ny, spacing), theta0);
}

PoreNetwork build_triangular(int nx, int ny, double spacing, double radius, double theta0) {
  check_grid_args(nx, ny, spacing, radius, theta0);
  Grid g = grid_skeleton(nx, ny, spacing, radius);
  auto id = [nx](int i, int j) { return static_cast<NodeId>(j * nx + i); };
  const double diag = spacing * std::numbers::sqrt2;
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      // The diagonal joins the two corners with even i+j.
      if ((i + j) % 2 == 0)
        g.channels.push_back({id(i, j), id(i + 1, j + 1), radius, diag, true});
      else
        g.channels.push_back({id(i + 1, j), id(i, j + 1), radius, diag, true});
    }
  }
  return PoreNetwork(std::move(g.nodes), std::move(g.channels), std::move(g.inlet), std::move(g.outlet),
                     (nx - 1) * spacing, grid_cross_section(ny, spacing), theta0);
}

PoreNetwork build_unstructured_triangular(int target_nodes, const Rectangle& domain, std::uint64_t seed,
                                          double radius, double theta0) {
  if (target_nodes < 4) throw ParameterError("network: unstructured network needs at least 4 nodes");
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) throw ParameterError("network: empty domain");
  if (!(radius > 0.0)) throw ParameterError("network: radius must be positive");
  if (!(theta0 > 0.0 && theta0 < 1.0)) throw ParameterError("network: theta0 must lie in (0, 1)");

  const double w = domain.width(), h = domain.height();
  const double mean_spacing = std::sqrt(w * h / target_nodes);
  const double min_dist = 0.7 * mean_spacing;

  const int column = std::clamp(static_cast<int>(std::lround(h / mean_spacing)) + 1, 2, target_nodes / 2);
  std::vector<Eigen::Vector2d> pts;
  std::vector<NodeId> inlet, outlet;
  pts.reserve(static_cast<std::size_t>(target_nodes));
  for (int k = 0; k < column; ++k) {
    const double y = domain.y0 + h * k / (column - 1);
    inlet.push_back(static_cast<NodeId>(pts.size()));
    pts.emplace_back(domain.x0, y);
    outlet.push_back(static_cast<NodeId>(pts.size()));
    pts.emplace_back(domain.x1, y);
  }
  // Fixed rows on the top and bottom edges keep the hull from forming long
  // sliver edges, which would join inlet and outlet almost directly.
  const int row = std::max(2, static_cast<int>(std::lround(w / mean_spacing)) + 1);
  for (int k = 1; k + 1 < row && static_cast<int>(pts.size()) + 2 <= target_nodes; ++k) {
    const double x = domain.x0 + w * k / (row - 1);
    pts.emplace_back(x, domain.y0);
    pts.emplace_back(x, domain.y1);
  }

  // Rejection sampling on a bucket grid with cell size min_dist.
  const int bx = std::max(1, static_cast<int>(w / min_dist));
  const int by = std::max(1, static_cast<int>(h / min_dist));
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(bx) * by);
  auto bucket_of = [&](const Eigen::Vector2d& p) {
    const int i = std::clamp(static_cast<int>((p.x() - domain.x0) / w * bx), 0, bx - 1);
    const int j = std::clamp(static_cast<int>((p.y() - domain.y0) / h * by), 0, by - 1);
    return std::pair{i, j};
  };
  for (int k = 0; k < static_cast<int>(pts.size()); ++k) {
    auto [i, j] = bucket_of(pts[k]);
    buckets[static_cast<std::size_t>(j) * bx + i].push_back(k);
  }
  const double md2 = min_dist * min_dist;
  auto far_enough = [&](const Eigen::Vector2d& p) {
    auto [i, j] = bucket_of(p);
    for (int jj = std::max(0, j - 1); jj <= std::min(by - 1, j + 1); ++jj)
      for (int ii = std::max(0, i - 1); ii <= std::min(bx - 1, i + 1); ++ii)
        for (int k : buckets[static_cast<std::size_t>(jj) * bx + ii])
          if ((pts[k] - p).squaredNorm() < md2) return false;
    return true;
  };

  Xoshiro256 rng(seed);
  const std::size_t max_attempts = 2000 * static_cast<std::size_t>(target_nodes) + 10000;
  std::size_t attempts = 0;
  while (static_cast<int>(pts.size()) < target_nodes) {
    if (++attempts > max_attempts)
      throw ConstructionError("network: could not place " + std::to_string(target_nodes) +
                              " nodes at the required minimum spacing");
    const Eigen::Vector2d p(domain.x0 + w * rng.uniform(), domain.y0 + h * rng.uniform());
    if (p.x() <= domain.x0 || p.x() >= domain.x1 || p.y() <= domain.y0 || p.y() >= domain.y1) continue;
    if (!far_enough(p)) continue;
    auto [i, j] = bucket_of(p);
    buckets[static_cast<std::size_t>(j) * bx + i].push_back(static_cast<int>(pts.size()));
    pts.push_back(p);
  }

  const auto tris = delaunay_triangulate(pts);
  std::vector<Channel> channels;
  for (auto [a, b] : triangulation_edges(tris))
    channels.push_back({a, b, radius, (pts[a] - pts[b]).norm(), true});
  return PoreNetwork(std::move(pts), std::move(channels), std::move(inlet), std::move(outlet), w, h, theta0);
}

bool percolates(const PoreNetwork& net, std::span<const std::uint8_t> open) {
  if (open.size() != net.channel_count()) throw ParameterError("network: open mask size mismatch");
  auto ds = open_components(net, open);
  std::vector<std::uint8_t> inlet_root(net.node_count(), 0);
  for (NodeId id : net.inlet_nodes()) inlet_root[ds.find(id)] = 1;
  for (NodeId id : net.outlet_nodes())
    if (inlet_root[ds.find(id)]) return true;
  return false;
}

bool percolates(const PoreNetwork& net) { return percolates(net, net.open_mask()); }

PressureSolution solve_pressure(const PoreNetwork& net, double delta_p, double eta) {
  return solve_pressure(net, net.open_mask(), delta_p, eta);
}

PressureSolution solve_pressure(const PoreNetwork& net, std::span<const std::uint8_t> open, double delta_p,
                                double eta) {
  if (!(delta_p > 0.0) || !(eta > 0.0)) throw ParameterError("network: delta_p and eta must be positive");
  if (open.size() != net.channel_count()) throw ParameterError("network: open mask size mismatch");

  const auto n = static_cast<NodeId>(net.node_count());
  const auto& channels = net.channels();
  auto ds = open_components(net, open);
  std::vector<std::uint8_t> active_root(net.node_count(), 0);
  for (NodeId id : net.inlet_nodes()) active_root[ds.find(id)] = 1;
  for (NodeId id : net.outlet_nodes()) active_root[ds.find(id)] = 1;

  PressureSolution sol;
  sol.node_pressures = Eigen::VectorXd::Zero(n);
  sol.channel_flows = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(channels.size()));

  // Unknowns: interior nodes of components that touch a boundary.
  std::vector<int> unknown(net.node_count(), -1);
  int m = 0;
  for (NodeId i = 0; i < n; ++i) {
    switch (net.role(i)) {
      case NodeRole::Inlet: sol.node_pressures[i] = delta_p; break;
      case NodeRole::Outlet: break;
      case NodeRole::Interior:
        if (active_root[ds.find(i)]) unknown[i] = m++;
        break;
    }
  }

  if (m > 0) {
    // Conductances are rescaled by the largest one; the solution is invariant.
    double gmax = 0.0;
    for (std::size_t k = 0; k < channels.size(); ++k)
      if (open[k]) gmax = std::max(gmax, channels[k].conductance(eta));
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(4 * channels.size());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    for (std::size_t k = 0; k < channels.size(); ++k) {
      if (!open[k]) continue;
      const auto& c = channels[k];
      const double g = c.conductance(eta) / gmax;
      const int ua = unknown[c.a], ub = unknown[c.b];
      if (ua >= 0) trips.emplace_back(ua, ua, g);
      if (ub >= 0) trips.emplace_back(ub, ub, g);
      if (ua >= 0 && ub >= 0) {
        trips.emplace_back(ua, ub, -g);
        trips.emplace_back(ub, ua, -g);
      } else if (ua >= 0) {
        rhs[ua] += g * sol.node_pressures[c.b];
      } else if (ub >= 0) {
        rhs[ub] += g * sol.node_pressures[c.a];
      }
    }
    Eigen::SparseMatrix<double> lap(m, m);
    lap.setFromTriplets(trips.begin(), trips.end());

    Eigen::VectorXd x;
    if (m <= 100000) {
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lap);
      if (solver.info() != Eigen::Success) throw NumericalError("network: pressure factorization failed");
      x = solver.solve(rhs);
    } else {
      Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg(lap);
      cg.setTolerance(1e-12);
      cg.setMaxIterations(20 * m);
      x = cg.solve(rhs);
      if (cg.info() != Eigen::Success) throw NumericalError("network: conjugate gradient did not converge");
    }
    for (NodeId i = 0; i < n; ++i)
      if (unknown[i] >= 0) sol.node_pressures[i] = x[unknown[i]];
  }

  for (std::size_t k = 0; k < channels.size(); ++k) {
    if (!open[k]) continue;
    const auto& c = channels[k];
    const double q = c.conductance(eta) * (sol.node_pressures[c.a] - sol.node_pressures[c.b]);
    sol.channel_flows[static_cast<Eigen::Index>(k)] = q;
    const NodeRole ra = net.role(c.a), rb = net.role(c.b);
    if (rb == NodeRole::Outlet && ra != NodeRole::Outlet) sol.total_flow += q;
    if (ra == NodeRole::Outlet && rb != NodeRole::Outlet) sol.total_flow -= q;
    if (ra == NodeRole::Inlet && rb != NodeRole::Inlet) sol.inlet_flow += q;
    if (rb == NodeRole::Inlet && ra != NodeRole::Inlet) sol.inlet_flow -= q;
  }
  return sol;
}

double network_permeability(const PoreNetwork& net, const PressureSolution& solution, double delta_p,
                            double eta) {
  if (!(delta_p > 0.0)) throw ParameterError("network: delta_p must be positive");
  // Darcy: Q/A = -(kappa/eta) dp/dx with dp/dx = -delta_p / L.
  const double kappa = solution.total_flow / net.cross_section() * eta * net.span_length() / delta_p;
  return std::max(kappa, 0.0);
}

double network_porosity(const PoreNetwork& net) { return net.open_volume() / net.total_volume() * net.theta0(); }

double network_porosity(const PoreNetwork& net, std::span<const std::uint8_t> open) {
  return net.open_volume(open) / net.total_volume() * net.theta0();
}

void write_network(std::ostream& os, const PoreNetwork& net) {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << "nodes " << net.node_count() << " channels " << net.channel_count() << " theta0 " << net.theta0() << '\n';
  for (std::size_t i = 0; i < net.node_count(); ++i)
    os << i << ' ' << net.nodes()[i].x() << ' ' << net.nodes()[i].y() << '\n';
  for (const auto& c : net.channels())
    os << c.a << ' ' << c.b << ' ' << c.radius << ' ' << c.length << ' ' << (c.open ? 1 : 0) << '\n';
  os.precision(old_precision);
}

PoreNetwork read_network(std::istream& is) {
  std::string kw_nodes, kw_channels, kw_theta;
  std::size_t n = 0, m = 0;
  double theta0 = 0.0;
  if (!(is >> kw_nodes >> n >> kw_channels >> m >> kw_theta >> theta0) || kw_nodes != "nodes" ||
      kw_channels != "channels" || kw_theta != "theta0")
    throw ParameterError("network file: malformed header");
  std::vector<Eigen::Vector2d> nodes(n);
  std::vector<std::uint8_t> seen(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t id = 0;
    double x = 0.0, y = 0.0;
    if (!(is >> id >> x >> y) || id >= n || seen[id]) throw ParameterError("network file: bad node line");
    seen[id] = 1;
    nodes[id] = {x, y};
  }
  std::vector<Channel> channels(m);
  for (auto& c : channels) {
    int open = 0;
    if (!(is >> c.a >> c.b >> c.radius >> c.length >> open) || (open != 0 && open != 1))
      throw ParameterError("network file: bad channel line");
    c.open = open == 1;
  }
  if (n == 0) throw ParameterError("network file: no nodes");

  double xmin = nodes[0].x(), xmax = xmin, ymin = nodes[0].y(), ymax = ymin;
  for (const auto& p : nodes) {
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  }
  const double tol = 1e-9 * std::max(xmax - xmin, ymax - ymin);
  std::vector<NodeId> inlet, outlet;
  for (std::size_t k = 0; k < n; ++k) {
    if (nodes[k].x() <= xmin + tol) inlet.push_back(static_cast<NodeId>(k));
    else if (nodes[k].x() >= xmax - tol) outlet.push_back(static_cast<NodeId>(k));
  }
  double cross = ymax - ymin;
  if (!(cross > tol)) {
    cross = std::numeric_limits<double>::infinity();
    for (const auto& c : channels) cross = std::min(cross, c.length);
  }
  return PoreNetwork(std::move(nodes), std::move(channels), std::move(inlet), std::move(outlet), xmax - xmin,
                     cross, theta0);
}

}  // namespace poroperm
