#include "poroperm/biot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "poroperm/errors.hpp"
#include "poroperm/parallel.hpp"

namespace poroperm {

namespace {

bool divides(double length, double spacing) {
  const double r = length / spacing;
  return std::round(r) >= 1.0 && std::abs(r - std::round(r)) <= 1e-9 * r;
}

using Ldlt = Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>;

/// Applies an existing factorization of the symmetric part as preconditioner.
struct FactorizationPreconditioner {
  const Ldlt* factorization = nullptr;
  template <typename M>
  FactorizationPreconditioner& analyzePattern(const M&) { return *this; }
  template <typename M>
  FactorizationPreconditioner& factorize(const M&) { return *this; }
  template <typename M>
  FactorizationPreconditioner& compute(const M&) { return *this; }
  template <typename Rhs>
  Eigen::VectorXd solve(const Rhs& b) const { return factorization->solve(b); }
  Eigen::ComputationInfo info() const { return Eigen::Success; }
};

}  // namespace

std::vector<std::string> SolverConfig::validation_errors() const {
  std::vector<std::string> e;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) e.push_back(msg);
  };
  need(width > 0.0, "mesh.width must be positive");
  need(height > 0.0, "mesh.height must be positive");
  need(dx > 0.0, "mesh.dx must be positive");
  need(dy > 0.0, "mesh.dy must be positive");
  if (width > 0.0 && dx > 0.0) need(divides(width, dx), "mesh.dx must divide mesh.width");
  if (height > 0.0 && dy > 0.0) need(divides(height, dy), "mesh.dy must divide mesh.height");
  need(load_fraction > 0.0 && load_fraction < 1.0, "problem.load_fraction must lie in (0, 1)");
  need(material.youngs_modulus > 0.0, "material.youngs_modulus must be positive");
  need(material.poisson_ratio >= 0.0 && material.poisson_ratio < 0.5, "material.poisson_ratio must lie in [0, 0.5)");
  need(material.viscosity > 0.0, "material.viscosity must be positive");
  need(material.theta0 > 0.0 && material.theta0 < 1.0, "material.theta0 must lie in (0, 1)");
  need(material.grain_size > 0.0, "material.grain_size must be positive");
  need(std::isfinite(p_pump), "problem.p_pump must be finite");
  need(std::isfinite(sigma0), "problem.sigma0 must be finite");
  need(tau > 0.0, "time.tau must be positive");
  need(end_time >= tau, "time.end_time must be at least time.tau");
  need(picard_max_iter >= 1, "time.picard_max_iter must be at least 1");
  need(picard_tol > 0.0, "time.picard_tol must be positive");
  for (double t : snapshot_times) need(t >= 0.0 && t <= end_time, "time.snapshots must lie in [0, end_time]");
  if (const auto* ni = std::get_if<NetworkInspired>(&relation.variant()))
    need(std::abs(ni->theta0 - material.theta0) <= 1e-12 * material.theta0,
         "relation theta0 must equal material.theta0");
  return e;
}

void SolverConfig::validate() const {
  const auto errors = validation_errors();
  if (errors.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw ParameterError(msg);
}

int SolverConfig::step_count() const { return static_cast<int>(std::llround(end_time / tau)); }

double FlowDiagnostics::q_out_mean() const {
  if (q_out.empty()) return std::numeric_limits<double>::quiet_NaN();
  return Eigen::Map<const Eigen::VectorXd>(q_out.data(), static_cast<Eigen::Index>(q_out.size())).mean();
}

TaylorHoodSystem build_system(const SolverConfig& cfg) {
  cfg.validate();
  auto mesh = build_rect_mesh(cfg.width, cfg.height, cfg.dx, cfg.dy, cfg.problem, cfg.load_fraction);
  const Lame lame = compute_lame(cfg.material.youngs_modulus, cfg.material.poisson_ratio);
  return build_system(std::move(mesh), lame, cfg.p_pump, cfg.problem == ProblemKind::Squeeze ? cfg.sigma0 : 0.0);
}

struct BiotSolver::Impl {
  std::vector<int> u_index;  // global displacement dof -> free index or -1
  std::vector<int> p_index;  // vertex -> free index or -1
  int nfu = 0;
  int nfp = 0;
  double scale = 1.0;  // pressure unknowns are p / scale
  Eigen::VectorXd p_dirichlet;
  SparseMatrix k_static;    // scaled symmetric block matrix, pressure block values zero
  SparseMatrix k_coupling;  // scaled boundary coupling in the momentum rows; empty when unused
  std::vector<Eigen::Matrix3d> p1_laplacian;
  std::vector<Eigen::Matrix<double, 12, 1>> div_weights;
  std::vector<Eigen::Matrix<double, 12, 3>> vertex_div_weights;  // columns: corners 0-2
  Eigen::VectorXd vertex_share;                                   // 1 / adjacent element count
  std::vector<Eigen::Matrix<double, 3, 2>> p1_gradients;

  Ldlt ldlt;
  bool ldlt_ready = false;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  bool lu_ready = false;
};

BiotSolver::BiotSolver(SolverConfig cfg) : BiotSolver(build_system(cfg), cfg) {}

BiotSolver::BiotSolver(TaylorHoodSystem sys, SolverConfig cfg)
    : cfg_(std::move(cfg)), sys_(std::move(sys)), impl_(std::make_unique<Impl>()) {
  cfg_.validate();
  kappa_ref_ = cfg_.relation.reference(cfg_.material.theta0);
  beta_ = stabilization_parameter(sys_.mesh.dx(), sys_.mesh.dy(), sys_.lame);

  auto& im = *impl_;
  const auto& mesh = sys_.mesh;
  im.u_index.assign(sys_.displacement_dofs(), 0);
  for (int d : sys_.fixed_displacement) im.u_index[d] = -1;
  for (auto& i : im.u_index)
    if (i == 0) i = im.nfu++;
  im.p_index.assign(sys_.pressure_dofs(), 0);
  for (int v : sys_.fixed_pressure) im.p_index[v] = -1;
  for (auto& i : im.p_index)
    if (i == 0) i = im.nfp++;
  im.p_dirichlet = Eigen::VectorXd::Zero(sys_.pressure_dofs());
  for (int v : sys_.fixed_pressure) im.p_dirichlet[v] = sys_.pressure_values[v];
  im.scale = sys_.lame.lambda + 2.0 * sys_.lame.mu;

  const double s = im.scale;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(sys_.A.nonZeros() + 2 * sys_.B.nonZeros() + sys_.laplacian.nonZeros());
  for (int c = 0; c < sys_.A.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(sys_.A, c); it; ++it) {
      const int r = im.u_index[it.row()], col = im.u_index[it.col()];
      if (r >= 0 && col >= 0) t.emplace_back(r, col, it.value());
    }
  for (int c = 0; c < sys_.B.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(sys_.B, c); it; ++it) {
      const int r = im.p_index[it.row()], col = im.u_index[it.col()];
      if (r < 0 || col < 0) continue;
      t.emplace_back(im.nfu + r, col, -s * it.value());
      t.emplace_back(col, im.nfu + r, -s * it.value());
    }
  for (int c = 0; c < sys_.laplacian.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(sys_.laplacian, c); it; ++it) {
      const int r = im.p_index[it.row()], col = im.p_index[it.col()];
      if (r >= 0 && col >= 0) t.emplace_back(im.nfu + r, im.nfu + col, 0.0);
    }
  const int n = im.nfu + im.nfp;
  im.k_static.resize(n, n);
  im.k_static.setFromTriplets(t.begin(), t.end());

  if (cfg_.effective_stress_traction && sys_.boundary_coupling.nonZeros() > 0) {
    std::vector<Eigen::Triplet<double>> g;
    const auto& bc = sys_.boundary_coupling;
    for (int c = 0; c < bc.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(bc, c); it; ++it) {
        const int r = im.u_index[it.row()], col = im.p_index[it.col()];
        if (r >= 0 && col >= 0) g.emplace_back(r, im.nfu + col, s * it.value());
      }
    if (!g.empty()) {
      im.k_coupling.resize(n, n);
      im.k_coupling.setFromTriplets(g.begin(), g.end());
    }
  }

  const Eigen::Matrix<double, 1, 3> centre = Eigen::Matrix<double, 1, 3>::Constant(1.0 / 3.0);
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto x = corners(mesh, e);
    const auto g = element::barycentric_gradients(x);
    im.p1_gradients.push_back(g);
    im.p1_laplacian.push_back(element::laplacian(x));
    const auto dn = element::p2_gradients<double>(centre, g);
    Eigen::Matrix<double, 12, 1> w;
    for (int j = 0; j < 6; ++j) w.segment<2>(2 * j) = dn.row(j).transpose();
    im.div_weights.push_back(w);
    Eigen::Matrix<double, 12, 3> wv;
    for (int k = 0; k < 3; ++k) {
      const auto dk = element::p2_gradients<double>(Eigen::Matrix<double, 1, 3>::Unit(k), g);
      for (int j = 0; j < 6; ++j) wv.block<2, 1>(2 * j, k) = dk.row(j).transpose();
    }
    im.vertex_div_weights.push_back(wv);
  }
  im.vertex_share = Eigen::VectorXd::Zero(mesh.vertex_count());
  for (const auto& t : mesh.triangles)
    for (int v : t) im.vertex_share[v] += 1.0;
  im.vertex_share = im.vertex_share.cwiseInverse();
}

BiotSolver::~BiotSolver() = default;
BiotSolver::BiotSolver(BiotSolver&&) noexcept = default;

BiotState BiotSolver::initial_state() const {
  BiotState s;
  s.t = 0.0;
  s.u = Eigen::VectorXd::Zero(sys_.displacement_dofs());
  s.p = impl_->p_dirichlet;
  update_fields(s);
  return s;
}

Eigen::VectorXd BiotSolver::divergence(const Eigen::VectorXd& u) const {
  const auto& mesh = sys_.mesh;
  Eigen::VectorXd div(mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& n = mesh.p2_triangles[e];
    Eigen::Matrix<double, 12, 1> ue;
    for (int j = 0; j < 6; ++j) ue.segment<2>(2 * j) = u.segment<2>(displacement_dof(n[j], 0));
    div[e] = impl_->div_weights[e].dot(ue);
  }
  return div;
}

Eigen::Matrix<double, Eigen::Dynamic, 2> BiotSolver::velocity(const Eigen::VectorXd& p,
                                                              const Eigen::VectorXd& kappa) const {
  const auto& mesh = sys_.mesh;
  Eigen::Matrix<double, Eigen::Dynamic, 2> v(mesh.element_count(), 2);
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& t = mesh.triangles[e];
    const Eigen::Vector3d pe(p[t[0]], p[t[1]], p[t[2]]);
    v.row(e) = -(kappa[e] / cfg_.material.viscosity) * (impl_->p1_gradients[e].transpose() * pe).transpose();
  }
  return v;
}

Eigen::VectorXd BiotSolver::vertex_porosity(const Eigen::VectorXd& u) const {
  const auto& mesh = sys_.mesh;
  const double theta0 = cfg_.material.theta0;
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(mesh.vertex_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& n = mesh.p2_triangles[e];
    Eigen::Matrix<double, 12, 1> ue;
    for (int j = 0; j < 6; ++j) ue.segment<2>(2 * j) = u.segment<2>(displacement_dof(n[j], 0));
    const Eigen::Vector3d div = impl_->vertex_div_weights[e].transpose() * ue;
    for (int k = 0; k < 3; ++k) theta[mesh.triangles[e][k]] += porosity_from_dilatation(div[k], theta0);
  }
  return theta.cwiseProduct(impl_->vertex_share);
}

void BiotSolver::update_fields(BiotState& s) const {
  const double theta0 = cfg_.material.theta0;
  s.theta = porosity_from_dilatation(divergence(s.u).array(), theta0).matrix();
  s.theta_vertex = vertex_porosity(s.u);
  s.kappa.resize(s.theta.size());
  s.degenerate = 0;
  for (Eigen::Index e = 0; e < s.theta.size(); ++e) {
    s.kappa[e] = cfg_.relation(s.theta[e]);
    if (s.theta[e] <= 0.0) {
      s.kappa[e] = 0.0;
      ++s.degenerate;
    }
  }
  s.v = velocity(s.p, s.kappa);
}

double BiotSolver::outflow(const BiotState& s) const {
  double q = 0.0;
  for (const auto& edge : sys_.mesh.boundary) {
    if (edge.side != Side::Right) continue;
    const double len = (sys_.mesh.p2_nodes[edge.nodes[1]] - sys_.mesh.p2_nodes[edge.nodes[0]]).norm();
    q += s.v(edge.element, 0) * len;
  }
  return q;
}

void BiotSolver::solve(const Eigen::VectorXd& u_prev, const Eigen::VectorXd& p_prev, const Eigen::VectorXd& kappa,
                       double tau, bool stabilized, Eigen::VectorXd& u, Eigen::VectorXd& p) {
  auto& im = *impl_;
  const auto& mesh = sys_.mesh;
  if (kappa.size() != mesh.element_count()) throw ParameterError("solve: one permeability per element");
  const double s = im.scale;
  const double stab = stabilized ? beta_ : 0.0;

  // Pressure block M = tau C + stab L, global and restricted.
  std::vector<Eigen::Triplet<double>> mt;
  mt.reserve(9 * mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    const double coeff = tau * kappa[e] / cfg_.material.viscosity + stab;
    const auto& v = mesh.triangles[e];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) mt.emplace_back(v[a], v[b], coeff * im.p1_laplacian[e](a, b));
  }
  SparseMatrix m(mesh.vertex_count(), mesh.vertex_count());
  m.setFromTriplets(mt.begin(), mt.end());

  const int n = im.nfu + im.nfp;
  std::vector<Eigen::Triplet<double>> kt;
  kt.reserve(m.nonZeros());
  for (int c = 0; c < m.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      const int r = im.p_index[it.row()], col = im.p_index[it.col()];
      if (r >= 0 && col >= 0) kt.emplace_back(im.nfu + r, im.nfu + col, -s * s * it.value());
    }
  SparseMatrix kp(n, n);
  kp.setFromTriplets(kt.begin(), kt.end());
  const SparseMatrix k_sym = im.k_static + kp;
  const bool coupled = im.k_coupling.nonZeros() > 0;
  const SparseMatrix k = coupled ? SparseMatrix(k_sym + im.k_coupling) : SparseMatrix();
  const SparseMatrix& k_full = coupled ? k : k_sym;

  Eigen::VectorXd fu_full = sys_.h + sys_.B.transpose() * im.p_dirichlet;
  if (coupled) fu_full -= sys_.boundary_coupling * im.p_dirichlet;
  Eigen::VectorXd fp_full = sys_.B * u_prev - m * im.p_dirichlet;
  if (stabilized) fp_full += stab * (sys_.laplacian * p_prev);
  Eigen::VectorXd rhs(n);
  for (int d = 0; d < sys_.displacement_dofs(); ++d)
    if (im.u_index[d] >= 0) rhs[im.u_index[d]] = fu_full[d];
  for (int v = 0; v < sys_.pressure_dofs(); ++v)
    if (im.p_index[v] >= 0) rhs[im.nfu + im.p_index[v]] = -s * fp_full[v];

  Eigen::VectorXd x;
  const double rhs_norm = std::max(rhs.norm(), std::numeric_limits<double>::min());
  auto accept = [&](const Eigen::VectorXd& y) {
    return y.allFinite() && (k_full * y - rhs).norm() <= 1e-8 * rhs_norm;
  };
  bool solved = false;
  if (cfg_.linear_solver != LinearSolverKind::SparseLU) {
    if (!im.ldlt_ready) {
      im.ldlt.analyzePattern(k_sym);
      im.ldlt_ready = true;
    }
    im.ldlt.factorize(k_sym);
    if (im.ldlt.info() == Eigen::Success) {
      if (!coupled) {
        x = im.ldlt.solve(rhs);
        solved = im.ldlt.info() == Eigen::Success && accept(x);
        if (solved) last_solver_ = LinearSolverKind::SymmetricLDLT;
      } else {
        Eigen::BiCGSTAB<SparseMatrix, FactorizationPreconditioner> bicg;
        bicg.preconditioner().factorization = &im.ldlt;
        bicg.setTolerance(1e-12);
        bicg.setMaxIterations(200);
        bicg.compute(k_full);
        x = bicg.solve(rhs);
        solved = bicg.info() == Eigen::Success && accept(x);
        if (solved) last_solver_ = LinearSolverKind::PreconditionedBiCGSTAB;
      }
    }
    if (!solved && cfg_.linear_solver != LinearSolverKind::Auto)
      throw NumericalError("solve: symmetric factorization path failed");
  }
  if (!solved) {
    if (!im.lu_ready) {
      im.lu.analyzePattern(k_full);
      im.lu_ready = true;
    }
    im.lu.factorize(k_full);
    if (im.lu.info() != Eigen::Success)
      throw NumericalError("solve: sparse LU factorization failed: " + im.lu.lastErrorMessage());
    x = im.lu.solve(rhs);
    if (!accept(x)) throw NumericalError("solve: block system residual too large");
    last_solver_ = LinearSolverKind::SparseLU;
  }

  u = Eigen::VectorXd::Zero(sys_.displacement_dofs());
  for (int d = 0; d < sys_.displacement_dofs(); ++d)
    if (im.u_index[d] >= 0) u[d] = x[im.u_index[d]];
  p = im.p_dirichlet;
  for (int v = 0; v < sys_.pressure_dofs(); ++v)
    if (im.p_index[v] >= 0) p[v] = s * x[im.nfu + im.p_index[v]];
}

BiotState BiotSolver::step(const BiotState& prev) {
  BiotState next;
  next.t = prev.t + cfg_.tau;
  solve(prev.u, prev.p, prev.kappa, cfg_.tau, cfg_.stabilization, next.u, next.p);
  if (cfg_.coupling == CouplingMode::Picard) {
    for (int k = 0; k < cfg_.picard_max_iter; ++k) {
      update_fields(next);
      Eigen::VectorXd u, p;
      solve(prev.u, prev.p, next.kappa, cfg_.tau, cfg_.stabilization, u, p);
      const double change = (p - next.p).norm();
      const double size = std::max(p.norm(), std::numeric_limits<double>::min());
      next.u = std::move(u);
      next.p = std::move(p);
      if (change <= cfg_.picard_tol * size) break;
    }
  }
  update_fields(next);
  return next;
}

RunResult run(const SolverConfig& cfg) {
  BiotSolver solver(cfg);
  return run(solver);
}

RunResult run(BiotSolver& solver) {
  const auto& cfg = solver.config();
  RunResult out;
  out.reference_permeability = solver.reference_permeability();
  const int steps = cfg.step_count();
  std::vector<int> snapshot_steps;
  for (double t : cfg.snapshot_times) snapshot_steps.push_back(static_cast<int>(std::llround(t / cfg.tau)));

  BiotState state = solver.initial_state();
  auto record = [&](int m, const BiotState& s) {
    for (int k : snapshot_steps)
      if (k == m) {
        out.snapshots.push_back(s);
        break;
      }
  };
  record(0, state);
  auto& d = out.diagnostics;
  try {
    for (int m = 1; m <= steps; ++m) {
      state = solver.step(state);
      d.t.push_back(state.t);
      d.q_out.push_back(solver.outflow(state));
      d.min_theta.push_back(state.theta_vertex.minCoeff());
      d.min_kappa_n.push_back(state.kappa.minCoeff() / out.reference_permeability);
      d.max_abs_v.push_back(state.v.rowwise().norm().maxCoeff());
      if (!std::isfinite(d.q_out.back())) throw NumericalError("run: non-finite outflow at t = " + std::to_string(state.t));
      record(m, state);
    }
    out.completed = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.final_state = std::move(state);
  return out;
}

void solve_saddle_point(const TaylorHoodSystem& sys, const Eigen::VectorXd& u_prev, Eigen::VectorXd& u0,
                        Eigen::VectorXd& p0, bool effective_stress_traction) {
  std::vector<int> u_index(sys.displacement_dofs(), 0), p_index(sys.pressure_dofs(), 0);
  for (int d : sys.fixed_displacement) u_index[d] = -1;
  for (int v : sys.fixed_pressure) p_index[v] = -1;
  int nfu = 0, nfp = 0;
  for (auto& i : u_index)
    if (i == 0) i = nfu++;
  for (auto& i : p_index)
    if (i == 0) i = nfp++;
  Eigen::VectorXd pd = Eigen::VectorXd::Zero(sys.pressure_dofs());
  for (int v : sys.fixed_pressure) pd[v] = sys.pressure_values[v];

  std::vector<Eigen::Triplet<double>> t;
  for (int c = 0; c < sys.A.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(sys.A, c); it; ++it)
      if (u_index[it.row()] >= 0 && u_index[it.col()] >= 0)
        t.emplace_back(u_index[it.row()], u_index[it.col()], it.value());
  for (int c = 0; c < sys.B.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(sys.B, c); it; ++it) {
      const int r = p_index[it.row()], col = u_index[it.col()];
      if (r < 0 || col < 0) continue;
      t.emplace_back(nfu + r, col, it.value());
      t.emplace_back(col, nfu + r, -it.value());
    }
  const auto& g = sys.boundary_coupling;
  if (effective_stress_traction)
    for (int c = 0; c < g.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(g, c); it; ++it)
        if (u_index[it.row()] >= 0 && p_index[it.col()] >= 0)
          t.emplace_back(u_index[it.row()], nfu + p_index[it.col()], it.value());
  const int n = nfu + nfp;
  SparseMatrix k(n, n);
  k.setFromTriplets(t.begin(), t.end());

  Eigen::VectorXd fu = sys.h + sys.B.transpose() * pd;
  if (effective_stress_traction) fu -= g * pd;
  const Eigen::VectorXd fp = sys.B * u_prev;
  Eigen::VectorXd rhs(n);
  for (int d = 0; d < sys.displacement_dofs(); ++d)
    if (u_index[d] >= 0) rhs[u_index[d]] = fu[d];
  for (int v = 0; v < sys.pressure_dofs(); ++v)
    if (p_index[v] >= 0) rhs[nfu + p_index[v]] = fp[v];

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(k);
  if (lu.info() != Eigen::Success) throw NumericalError("saddle point: factorization failed: " + lu.lastErrorMessage());
  const Eigen::VectorXd x = lu.solve(rhs);
  if (!x.allFinite()) throw NumericalError("saddle point: non-finite solution");

  u0 = Eigen::VectorXd::Zero(sys.displacement_dofs());
  for (int d = 0; d < sys.displacement_dofs(); ++d)
    if (u_index[d] >= 0) u0[d] = x[u_index[d]];
  p0 = pd;
  for (int v = 0; v < sys.pressure_dofs(); ++v)
    if (p_index[v] >= 0) p0[v] = x[nfu + p_index[v]];
}

std::vector<SaddleLadderRow> saddle_ladder(SolverConfig cfg, std::span<const double> factors) {
  if (factors.empty()) throw ParameterError("saddle ladder: need at least one factor");
  cfg.stabilization = false;
  cfg.coupling = CouplingMode::Lagged;
  BiotSolver solver(cfg);
  const auto& sys = solver.system();
  const BiotState start = solver.initial_state();
  Eigen::VectorXd u0, p0;
  solve_saddle_point(sys, start.u, u0, p0, cfg.effective_stress_traction);
  const double kappa0 = solver.reference_permeability();
  std::vector<SaddleLadderRow> rows;
  for (double f : factors) {
    if (!(f > 0.0)) throw ParameterError("saddle ladder: factors must be positive");
    const Eigen::VectorXd kappa = Eigen::VectorXd::Constant(sys.mesh.element_count(), f * kappa0);
    Eigen::VectorXd u, p;
    solver.solve(start.u, start.p, kappa, cfg.tau, false, u, p);
    const Eigen::VectorXd du = u - u0;
    SaddleLadderRow r;
    r.factor = f;
    r.u_distance = std::sqrt(std::max(0.0, du.dot(sys.A * du)));
    r.p_distance = (p - p0).norm();
    r.constraint_residual = (sys.B * (u - start.u)).norm();
    rows.push_back(r);
  }
  return rows;
}

bool ThresholdSweepRow::baseline() const { return std::isnan(p_c); }

std::vector<double> default_threshold_grid(int n) {
  if (n < 1) throw ParameterError("threshold grid: need at least one point");
  if (n == 1) return {0.0};
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = 0.975 * i / (n - 1);
  return g;
}

std::vector<ThresholdSweepRow> sweep_thresholds(const SolverConfig& cfg, std::span<const double> grid,
                                                unsigned threads) {
  if (grid.empty()) throw ParameterError("threshold sweep: empty grid");
  for (double p_c : grid)
    if (!(p_c >= 0.0 && p_c <= 0.975)) throw ParameterError("threshold sweep: grid must lie within [0, 0.975]");
  cfg.validate();
  std::vector<ThresholdSweepRow> rows(grid.size() + 1);
  rows[0].p_c = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < grid.size(); ++i) rows[i + 1].p_c = grid[i];
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    SolverConfig c = cfg;
    c.snapshot_times.clear();
    c.relation = rows[i].baseline()
                     ? PermeabilityRelation::kozeny_carman(cfg.material.grain_size)
                     : PermeabilityRelation::network_inspired(rows[i].p_c, cfg.material.theta0, cfg.material.grain_size);
    try {
      const auto r = run(c);
      rows[i].q_out_mean = r.diagnostics.q_out_mean();
      rows[i].ok = r.completed;
      rows[i].error = r.error;
    } catch (const std::exception& e) {
      rows[i].ok = false;
      rows[i].error = e.what();
      rows[i].q_out_mean = std::numeric_limits<double>::quiet_NaN();
    }
  });
  return rows;
}

}  // namespace poroperm
