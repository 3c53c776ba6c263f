#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "poroperm/element.hpp"
#include "poroperm/mesh.hpp"

namespace poroperm {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct Lame {
  double lambda = 0.0;
  double mu = 0.0;
};

/// Lame coefficients from Young's modulus and Poisson's ratio; nu must lie in [0, 0.5).
Lame compute_lame(double youngs_modulus, double poisson_ratio);

/// beta = sqrt(dx^2 + dy^2) / (4 (lambda + 2 mu)).
double stabilization_parameter(double dx, double dy, const Lame& lame);

/// Displacement dof of P2 node n, component c (0 = x, 1 = y).
inline int displacement_dof(int node, int component) { return 2 * node + component; }

element::Corners<double> corners(const TriMesh& mesh, int e);

/// Elasticity matrix, 2 n_u x 2 n_u, before boundary conditions.
SparseMatrix assemble_a(const TriMesh& mesh, double lambda, double mu);
/// Coupling matrix B_ij = (psi_i, div phi_j), n_p x 2 n_u.
SparseMatrix assemble_b(const TriMesh& mesh);
/// Flow matrix with elementwise permeability (one entry per element, >= 0).
SparseMatrix assemble_c(const TriMesh& mesh, const Eigen::VectorXd& kappa, double eta);
/// beta times the unit-coefficient pressure Laplacian.
SparseMatrix assemble_stabilization(const TriMesh& mesh, double beta);
/// Load vector from the pump pressure on the inlet edge and, for the squeeze
/// problem, the vertical traction on the loaded top and bottom segments.
Eigen::VectorXd assemble_loads(const TriMesh& mesh, double p_pump, double sigma0);
/// Boundary term (psi_k, phi_i n_y) over the top and bottom edges, 2 n_u x n_p.
SparseMatrix assemble_boundary_coupling(const TriMesh& mesh);

/// Mesh plus the assembled, kappa-independent parts of the discrete system.
/// Dirichlet data: displacement dofs fixed at zero and pressure vertices with
/// prescribed values (pump pressure at the inlet, zero at the outlet).
struct TaylorHoodSystem {
  TriMesh mesh;
  Lame lame;
  SparseMatrix A;
  SparseMatrix B;
  SparseMatrix laplacian;  // unit-coefficient P1 Laplacian
  /// Enters the momentum equation when the traction data on the top and
  /// bottom edges prescribe the effective rather than the total stress.
  SparseMatrix boundary_coupling;
  Eigen::VectorXd h;
  std::vector<int> fixed_displacement;  // sorted dof ids
  std::vector<int> fixed_pressure;      // sorted vertex ids
  Eigen::VectorXd pressure_values;      // per vertex, meaningful on fixed_pressure

  int displacement_dofs() const noexcept { return static_cast<int>(A.rows()); }
  int pressure_dofs() const noexcept { return static_cast<int>(B.rows()); }
};

TaylorHoodSystem build_system(TriMesh mesh, const Lame& lame, double p_pump, double sigma0);

}  // namespace poroperm
