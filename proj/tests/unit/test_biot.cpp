#include <doctest.h>

#include <cmath>
#include <cstring>

#include <Eigen/Dense>

#include "poroperm/biot.hpp"
#include "poroperm/errors.hpp"
#include "support/dense_oracles.hpp"

using namespace poroperm;

namespace {

SolverConfig tiny(ProblemKind kind) {
  SolverConfig c;
  c.dx = c.dy = 1.0;  // 2 x 1 cells
  c.problem = kind;
  if (kind == ProblemKind::Squeeze) {
    c.p_pump = 5e5;
    c.load_fraction = 0.6;  // both top edges of the 2 x 1 mesh carry load
  }
  c.end_time = 1.0;
  return c;
}

double rel_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

}  // namespace

TEST_CASE("one step matches the dense oracle on a 2 x 1 cell mesh") {
  for (auto kind : {ProblemKind::HighPumpPressure, ProblemKind::Squeeze}) {
    for (bool stabilized : {false, true}) {
      auto cfg = tiny(kind);
      cfg.stabilization = stabilized;
      BiotSolver s(cfg);
      const auto st = s.initial_state();
      Eigen::VectorXd u_prev = Eigen::VectorXd::LinSpaced(st.u.size(), -1e-4, 2e-4);
      for (int d : s.system().fixed_displacement) u_prev[d] = 0.0;
      Eigen::VectorXd p_prev = st.p + Eigen::VectorXd::LinSpaced(st.p.size(), 0.0, 1e4);
      for (int v : s.system().fixed_pressure) p_prev[v] = st.p[v];
      const Eigen::VectorXd kappa = Eigen::VectorXd::LinSpaced(st.kappa.size(), 1e-12, 5e-11);
      Eigen::VectorXd u, p, ur, pr;
      s.solve(u_prev, p_prev, kappa, cfg.tau, stabilized, u, p);
      oracle::dense_step(s, u_prev, p_prev, kappa, stabilized, ur, pr);
      INFO("squeeze " << (kind == ProblemKind::Squeeze) << " stabilized " << stabilized);
      CHECK(rel_diff(u, ur) <= 1e-10);
      CHECK(rel_diff(p, pr) <= 1e-10);
    }
  }
}

TEST_CASE("symmetric, iterative and LU paths agree") {
  for (auto kind : {ProblemKind::HighPumpPressure, ProblemKind::Squeeze}) {
    auto cfg = tiny(kind);
    cfg.dx = cfg.dy = 0.25;
    BiotSolver fast(cfg);
    cfg.linear_solver = LinearSolverKind::SparseLU;
    BiotSolver lu(cfg);
    const auto st = fast.initial_state();
    Eigen::VectorXd u1, p1, u2, p2;
    fast.solve(st.u, st.p, st.kappa, cfg.tau, true, u1, p1);
    lu.solve(st.u, st.p, st.kappa, cfg.tau, true, u2, p2);
    CHECK(fast.last_solver() == (kind == ProblemKind::Squeeze ? LinearSolverKind::PreconditionedBiCGSTAB
                                                              : LinearSolverKind::SymmetricLDLT));
    CHECK(lu.last_solver() == LinearSolverKind::SparseLU);
    CHECK(rel_diff(u1, u2) <= 1e-9);
    CHECK(rel_diff(p1, p2) <= 1e-9);
  }
}

TEST_CASE("no load gives the zero state") {
  auto cfg = tiny(ProblemKind::Squeeze);
  cfg.p_pump = 0.0;
  cfg.sigma0 = 0.0;
  cfg.end_time = 2.0;
  const auto r = run(cfg);
  REQUIRE(r.completed);
  CHECK(r.final_state.u.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.final_state.p.cwiseAbs().maxCoeff() == 0.0);
  for (double q : r.diagnostics.q_out) CHECK(q == 0.0);
}

TEST_CASE("velocity is Darcy's law per element") {
  auto cfg = tiny(ProblemKind::HighPumpPressure);
  cfg.dx = cfg.dy = 0.25;
  BiotSolver s(cfg);
  const auto next = s.step(s.initial_state());
  const auto& mesh = s.system().mesh;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto g = element::barycentric_gradients(corners(mesh, e));
    Eigen::RowVector2d grad = Eigen::RowVector2d::Zero();
    for (int k = 0; k < 3; ++k) grad += next.p[mesh.triangles[e][k]] * g.row(k);
    const Eigen::RowVector2d v = -next.kappa[e] / cfg.material.viscosity * grad;
    CHECK((next.v.row(e) - v).norm() <= 1e-12 * std::max(v.norm(), 1e-30));
  }
}

TEST_CASE("high pump pressure solution is mirror symmetric") {
  auto cfg = tiny(ProblemKind::HighPumpPressure);
  cfg.dx = cfg.dy = 0.1;
  cfg.end_time = 3.0;
  BiotSolver s(cfg);
  const auto r = run(s);
  REQUIRE(r.completed);
  const auto& mesh = s.system().mesh;
  const auto& p = r.final_state.p;
  double diff = 0.0;
  for (int v = 0; v < mesh.vertex_count(); ++v) diff = std::max(diff, std::abs(p[v] - p[mesh.mirror_vertex(v)]));
  CHECK(diff <= 1e-8 * p.cwiseAbs().maxCoeff());
}

TEST_CASE("repeated runs are bit-identical") {
  auto cfg = tiny(ProblemKind::Squeeze);
  cfg.dx = cfg.dy = 0.25;
  cfg.end_time = 2.0;
  cfg.relation = PermeabilityRelation::network_inspired(0.4935, 0.4, 2e-4);
  const auto a = run(cfg), b = run(cfg);
  REQUIRE(a.final_state.u.size() == b.final_state.u.size());
  CHECK(std::memcmp(a.final_state.u.data(), b.final_state.u.data(), sizeof(double) * a.final_state.u.size()) == 0);
  CHECK(std::memcmp(a.final_state.p.data(), b.final_state.p.data(), sizeof(double) * a.final_state.p.size()) == 0);
  CHECK(a.diagnostics.q_out == b.diagnostics.q_out);
}

TEST_CASE("saddle-point limit") {
  auto cfg = tiny(ProblemKind::HighPumpPressure);
  cfg.dx = cfg.dy = 0.2;
  BiotSolver s(cfg);
  const auto st = s.initial_state();
  Eigen::VectorXd u0, p0;
  solve_saddle_point(s.system(), st.u, u0, p0);
  // The constraint holds against test functions vanishing on the Dirichlet edges.
  const double b_norm = Eigen::MatrixXd(s.system().B).norm();
  Eigen::VectorXd residual = s.system().B * (u0 - st.u);
  for (int v : s.system().fixed_pressure) residual[v] = 0.0;
  CHECK(residual.norm() <= 1e-9 * b_norm * u0.norm());

  const std::vector<double> factors = {1e-2, 1e-4, 1e-6};
  const auto ladder = saddle_ladder(cfg, factors);
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    CHECK(ladder[i].u_distance < ladder[i - 1].u_distance);
    CHECK(ladder[i].p_distance < ladder[i - 1].p_distance);
    CHECK(ladder[i].constraint_residual <= ladder[i - 1].constraint_residual);
  }
}

TEST_CASE("no load on the saddle-point problem gives the Dirichlet data") {
  auto cfg = tiny(ProblemKind::HighPumpPressure);
  cfg.p_pump = 0.0;
  BiotSolver s(cfg);
  Eigen::VectorXd u0, p0;
  solve_saddle_point(s.system(), Eigen::VectorXd::Zero(s.system().displacement_dofs()), u0, p0);
  CHECK(u0.cwiseAbs().maxCoeff() == 0.0);
  CHECK(p0.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Picard coupling converges to a fixed point") {
  auto cfg = tiny(ProblemKind::HighPumpPressure);
  cfg.dx = cfg.dy = 0.25;
  cfg.coupling = CouplingMode::Picard;
  cfg.picard_tol = 1e-12;
  cfg.picard_max_iter = 50;
  BiotSolver s(cfg);
  const auto next = s.step(s.initial_state());
  Eigen::VectorXd u, p;
  s.solve(s.initial_state().u, s.initial_state().p, next.kappa, cfg.tau, cfg.stabilization, u, p);
  CHECK(rel_diff(p, next.p) <= 1e-10);
}

TEST_CASE("configuration errors are reported together") {
  SolverConfig c;
  c.dx = 0.3;
  c.material.poisson_ratio = 0.6;
  c.tau = -1.0;
  const auto errors = c.validation_errors();
  CHECK(errors.size() >= 3);
  CHECK_THROWS_AS(c.validate(), ParameterError);
  CHECK(SolverConfig{}.validation_errors().empty());
  CHECK(SolverConfig{}.step_count() == 600);
}

TEST_CASE("threshold grid") {
  const auto g = default_threshold_grid();
  CHECK(g.size() == 40);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(0.975));
  CHECK_THROWS_AS(default_threshold_grid(0), ParameterError);
}
