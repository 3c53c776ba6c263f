#include "poroperm/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "poroperm/errors.hpp"

namespace poroperm {

Lame compute_lame(double youngs_modulus, double poisson_ratio) {
  if (!(youngs_modulus > 0.0)) throw ParameterError("lame: Young's modulus must be positive");
  if (!(poisson_ratio >= 0.0)) throw ParameterError("lame: Poisson's ratio must be nonnegative");
  if (!(poisson_ratio < 0.5)) throw DomainError("lame: Poisson's ratio must stay below the incompressible limit 0.5");
  const double e = youngs_modulus, nu = poisson_ratio;
  return {nu * e / ((1.0 + nu) * (1.0 - 2.0 * nu)), e / (2.0 * (1.0 + nu))};
}

double stabilization_parameter(double dx, double dy, const Lame& lame) {
  return std::sqrt(dx * dx + dy * dy) / (4.0 * (lame.lambda + 2.0 * lame.mu));
}

element::Corners<double> corners(const TriMesh& mesh, int e) {
  element::Corners<double> x;
  for (int k = 0; k < 3; ++k) x.row(k) = mesh.vertices[mesh.triangles[e][k]].transpose();
  return x;
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMatrix from_triplets(int rows, int cols, const Triplets& t) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseMatrix assemble_p1(const TriMesh& mesh, const Eigen::VectorXd& coefficient) {
  Triplets t;
  t.reserve(9 * mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    const Eigen::Matrix3d k = coefficient[e] * element::laplacian(corners(mesh, e));
    const auto& v = mesh.triangles[e];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) t.emplace_back(v[a], v[b], k(a, b));
  }
  return from_triplets(mesh.vertex_count(), mesh.vertex_count(), t);
}

}  // namespace

SparseMatrix assemble_a(const TriMesh& mesh, double lambda, double mu) {
  if (!(lambda >= 0.0) || !(mu > 0.0)) throw ParameterError("assemble_a: need lambda >= 0 and mu > 0");
  Triplets t;
  t.reserve(144 * mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto k = element::elasticity(corners(mesh, e), lambda, mu);
    const auto& n = mesh.p2_triangles[e];
    for (int a = 0; a < 12; ++a)
      for (int b = 0; b < 12; ++b)
        t.emplace_back(displacement_dof(n[a / 2], a % 2), displacement_dof(n[b / 2], b % 2), k(a, b));
  }
  const int dofs = 2 * mesh.node_count();
  return from_triplets(dofs, dofs, t);
}

SparseMatrix assemble_b(const TriMesh& mesh) {
  Triplets t;
  t.reserve(36 * mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto b = element::divergence(corners(mesh, e));
    const auto& v = mesh.triangles[e];
    const auto& n = mesh.p2_triangles[e];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 12; ++j) t.emplace_back(v[i], displacement_dof(n[j / 2], j % 2), b(i, j));
  }
  return from_triplets(mesh.vertex_count(), 2 * mesh.node_count(), t);
}

SparseMatrix assemble_c(const TriMesh& mesh, const Eigen::VectorXd& kappa, double eta) {
  if (kappa.size() != mesh.element_count()) throw ParameterError("assemble_c: one permeability per element");
  if (!(eta > 0.0)) throw ParameterError("assemble_c: viscosity must be positive");
  if ((kappa.array() < 0.0).any() || !kappa.allFinite())
    throw ParameterError("assemble_c: permeability must be finite and nonnegative");
  return assemble_p1(mesh, kappa / eta);
}

SparseMatrix assemble_stabilization(const TriMesh& mesh, double beta) {
  if (!(beta >= 0.0)) throw ParameterError("assemble_stabilization: beta must be nonnegative");
  return assemble_p1(mesh, Eigen::VectorXd::Constant(mesh.element_count(), beta));
}

Eigen::VectorXd assemble_loads(const TriMesh& mesh, double p_pump, double sigma0) {
  if (!std::isfinite(p_pump) || !std::isfinite(sigma0)) throw ParameterError("assemble_loads: loads must be finite");
  Eigen::VectorXd h = Eigen::VectorXd::Zero(2 * mesh.node_count());
  for (const auto& edge : mesh.boundary) {
    const double len = (mesh.p2_nodes[edge.nodes[1]] - mesh.p2_nodes[edge.nodes[0]]).norm();
    const std::array<double, 3> w = {len / 6.0, len / 6.0, 2.0 * len / 3.0};
    int component = -1;
    double traction = 0.0;
    if (edge.side == Side::Left) {
      // Total traction -p_pump n with outward normal (-1, 0).
      component = 0;
      traction = p_pump;
    } else if (mesh.kind == ProblemKind::Squeeze && edge.segment == 1) {
      component = 1;
      traction = -sigma0;
    } else if (mesh.kind == ProblemKind::Squeeze && edge.segment == 5) {
      component = 1;
      traction = sigma0;
    }
    if (component < 0) continue;
    for (int k = 0; k < 3; ++k) h[displacement_dof(edge.nodes[k], component)] += traction * w[k];
  }
  return h;
}

SparseMatrix assemble_boundary_coupling(const TriMesh& mesh) {
  // Edge integrals of P2 (endpoint, endpoint, midpoint) times P1 (endpoints).
  static constexpr double w[3][2] = {{1.0 / 6.0, 0.0}, {0.0, 1.0 / 6.0}, {1.0 / 3.0, 1.0 / 3.0}};
  const int fx = 2 * mesh.nx + 1;
  auto vertex_of = [&](int node) { return (node / fx / 2) * (mesh.nx + 1) + (node % fx) / 2; };
  Triplets t;
  for (const auto& edge : mesh.boundary) {
    if (edge.side != Side::Top && edge.side != Side::Bottom) continue;
    const double normal_y = edge.side == Side::Top ? 1.0 : -1.0;
    const double len = (mesh.p2_nodes[edge.nodes[1]] - mesh.p2_nodes[edge.nodes[0]]).norm();
    const std::array<int, 2> v = {vertex_of(edge.nodes[0]), vertex_of(edge.nodes[1])};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 2; ++k)
        if (w[i][k] != 0.0) t.emplace_back(displacement_dof(edge.nodes[i], 1), v[k], normal_y * len * w[i][k]);
  }
  return from_triplets(2 * mesh.node_count(), mesh.vertex_count(), t);
}

TaylorHoodSystem build_system(TriMesh mesh, const Lame& lame, double p_pump, double sigma0) {
  TaylorHoodSystem sys;
  sys.lame = lame;
  sys.A = assemble_a(mesh, lame.lambda, lame.mu);
  sys.B = assemble_b(mesh);
  sys.laplacian = assemble_stabilization(mesh, 1.0);
  sys.boundary_coupling = assemble_boundary_coupling(mesh);
  sys.h = assemble_loads(mesh, p_pump, sigma0);

  std::vector<int> fixed_u;
  sys.pressure_values = Eigen::VectorXd::Zero(mesh.vertex_count());
  std::vector<int> fixed_p;
  const int fx = 2 * mesh.nx + 1;
  for (int node = 0; node < mesh.node_count(); ++node) {
    const int I = node % fx, J = node / fx;
    const bool right = I == fx - 1, bottom = J == 0, top = J == 2 * mesh.ny;
    if (mesh.kind == ProblemKind::HighPumpPressure) {
      if (right) fixed_u.push_back(displacement_dof(node, 0));
      if (top || bottom) fixed_u.push_back(displacement_dof(node, 1));
    } else if (right) {
      fixed_u.push_back(displacement_dof(node, 0));
      fixed_u.push_back(displacement_dof(node, 1));
    }
  }
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const int i = v % (mesh.nx + 1);
    if (i == 0) {
      fixed_p.push_back(v);
      sys.pressure_values[v] = p_pump;
    } else if (i == mesh.nx) {
      fixed_p.push_back(v);
    }
  }
  std::sort(fixed_u.begin(), fixed_u.end());
  sys.fixed_displacement = std::move(fixed_u);
  sys.fixed_pressure = std::move(fixed_p);
  sys.mesh = std::move(mesh);
  return sys;
}

}  // namespace poroperm
