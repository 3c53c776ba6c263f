#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "poroperm/assembly.hpp"
#include "poroperm/relations.hpp"

namespace poroperm {

struct Material {
  double youngs_modulus = 35.0e6;  // Pa
  double poisson_ratio = 0.3;
  double viscosity = 1.307e-3;  // Pa s
  double theta0 = 0.4;
  double grain_size = 0.2e-3;  // m
};

enum class CouplingMode { Lagged, Picard };
enum class LinearSolverKind { Auto, SymmetricLDLT, PreconditionedBiCGSTAB, SparseLU };

struct SolverConfig {
  double width = 2.0;
  double height = 1.0;
  double dx = 0.02;
  double dy = 0.02;
  double load_fraction = 0.5;
  ProblemKind problem = ProblemKind::HighPumpPressure;
  Material material;
  PermeabilityRelation relation = PermeabilityRelation::kozeny_carman(0.2e-3);
  double p_pump = 50.0e5;  // Pa
  double sigma0 = 3.0e6;   // N/m^2
  double tau = 0.5;        // s
  double end_time = 300.0;  // s
  bool stabilization = true;
  /// Traction data on free edges prescribe sigma' n (true) or the total
  /// stress (sigma' - p I) n (false). Only the squeeze problem has free
  /// edges with unknown pressure.
  bool effective_stress_traction = true;
  CouplingMode coupling = CouplingMode::Lagged;
  int picard_max_iter = 20;
  double picard_tol = 1e-8;
  LinearSolverKind linear_solver = LinearSolverKind::Auto;
  std::vector<double> snapshot_times;

  /// All violated constraints, one message each; empty when valid.
  std::vector<std::string> validation_errors() const;
  /// Throws ParameterError listing every violation.
  void validate() const;
  int step_count() const;
};

/// Solution at one time level. Porosity, permeability and Darcy velocity are
/// per element, evaluated at the centroid.
struct BiotState {
  double t = 0.0;
  Eigen::VectorXd u;  // interleaved [ux, uy] per P2 node
  Eigen::VectorXd p;  // per vertex
  Eigen::VectorXd theta;
  Eigen::VectorXd theta_vertex;  // per vertex, averaged over adjacent elements
  Eigen::VectorXd kappa;
  Eigen::Matrix<double, Eigen::Dynamic, 2> v;
  int degenerate = 0;  // elements with theta <= 0
};

/// min_theta uses the vertex porosity, min_kappa_n the element values.
struct FlowDiagnostics {
  std::vector<double> t;
  std::vector<double> q_out;
  std::vector<double> min_theta;
  std::vector<double> min_kappa_n;
  std::vector<double> max_abs_v;
  double q_out_mean() const;
};

/// Monolithic backward-Euler solver for the Taylor-Hood discretization. The
/// factorization's symbolic analysis is reused across steps.
class BiotSolver {
 public:
  explicit BiotSolver(SolverConfig cfg);
  BiotSolver(TaylorHoodSystem sys, SolverConfig cfg);
  ~BiotSolver();
  BiotSolver(BiotSolver&&) noexcept;

  const TaylorHoodSystem& system() const noexcept { return sys_; }
  const SolverConfig& config() const noexcept { return cfg_; }
  double reference_permeability() const noexcept { return kappa_ref_; }
  double beta() const noexcept { return beta_; }

  /// u = 0, p = Dirichlet data, theta = theta0, kappa = kappa(theta0).
  BiotState initial_state() const;

  /// One time step of size tau from `prev` using the configured coupling.
  BiotState step(const BiotState& prev);

  /// Solves [A, -B^T + G; B, tau C(kappa) + s S] (u, p) = (h, B u_prev + s S p_prev)
  /// with s = 1 when stabilized, else 0. G is the boundary coupling, present
  /// only with effective-stress traction. Dirichlet data come from the system.
  void solve(const Eigen::VectorXd& u_prev, const Eigen::VectorXd& p_prev, const Eigen::VectorXd& kappa,
             double tau, bool stabilized, Eigen::VectorXd& u, Eigen::VectorXd& p);

  /// Fills theta, kappa, v and the degenerate count from u and p.
  void update_fields(BiotState& state) const;
  /// Porosity at each vertex: the P2 dilatation evaluated at that corner of
  /// every adjacent element, mapped to porosity and averaged.
  Eigen::VectorXd vertex_porosity(const Eigen::VectorXd& u) const;
  /// Elementwise divergence of u at the centroid.
  Eigen::VectorXd divergence(const Eigen::VectorXd& u) const;
  /// Darcy velocity -(kappa / eta) grad p per element.
  Eigen::Matrix<double, Eigen::Dynamic, 2> velocity(const Eigen::VectorXd& p, const Eigen::VectorXd& kappa) const;
  /// Outflow through the right edge per unit depth.
  double outflow(const BiotState& state) const;

  /// Which factorization served the last solve.
  LinearSolverKind last_solver() const noexcept { return last_solver_; }

 private:
  struct Impl;
  SolverConfig cfg_;
  TaylorHoodSystem sys_;
  double kappa_ref_ = 0.0;
  double beta_ = 0.0;
  LinearSolverKind last_solver_ = LinearSolverKind::Auto;
  std::unique_ptr<Impl> impl_;
};

TaylorHoodSystem build_system(const SolverConfig& cfg);

struct RunResult {
  BiotState final_state;
  std::vector<BiotState> snapshots;
  FlowDiagnostics diagnostics;
  double reference_permeability = 0.0;
  bool completed = false;
  std::string error;  // set when a step failed; earlier results are kept
};

/// Runs step_count() steps from the initial state.
RunResult run(const SolverConfig& cfg);
RunResult run(BiotSolver& solver);

/// Exact tau * kappa = 0 solve: [A, -B^T; B, 0] (u0, p0) = (h, B u_prev), with
/// the boundary coupling G added to -B^T when effective-stress traction is on.
void solve_saddle_point(const TaylorHoodSystem& sys, const Eigen::VectorXd& u_prev, Eigen::VectorXd& u0,
                        Eigen::VectorXd& p0, bool effective_stress_traction = false);

struct SaddleLadderRow {
  double factor = 0.0;               // kappa = factor * kappa0 everywhere
  double u_distance = 0.0;           // ||u - u0||_A
  double p_distance = 0.0;           // ||p - p0||_2, Pa
  double constraint_residual = 0.0;  // ||B (u - u_prev)||_2
};

/// One unstabilized step from the initial state with uniform permeability
/// factor * kappa0 for each factor, compared with the saddle-point limit.
std::vector<SaddleLadderRow> saddle_ladder(SolverConfig cfg, std::span<const double> factors);

struct ThresholdSweepRow {
  double p_c = 0.0;  // NaN marks the Kozeny-Carman baseline
  double q_out_mean = 0.0;
  bool ok = false;
  std::string error;
  bool baseline() const;
};

/// n evenly spaced points on [0, 0.975].
std::vector<double> default_threshold_grid(int n = 40);

/// One run per p_c with the network-inspired relation, plus a Kozeny-Carman
/// baseline row first. Failed runs are recorded and the sweep continues.
std::vector<ThresholdSweepRow> sweep_thresholds(const SolverConfig& cfg, std::span<const double> grid,
                                                unsigned threads = 0);

}  // namespace poroperm
