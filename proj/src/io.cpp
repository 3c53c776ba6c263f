#include "poroperm/io.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace poroperm {

namespace {

// Restores the stream precision on scope exit.
class PrecisionGuard {
 public:
  PrecisionGuard(std::ostream& os, int digits) : os_(os), old_(os.precision(digits)) {}
  ~PrecisionGuard() { os_.precision(old_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  std::ostream& os_;
  std::streamsize old_;
};

constexpr int kDigits = std::numeric_limits<double>::max_digits10;

}  // namespace

const char* version() { return "0.1.0"; }

std::string Manifest::describe() const {
  std::ostringstream ss;
  ss << "experiment=" << experiment << " seed=" << seed << " profile=" << profile
     << " version=" << (version.empty() ? poroperm::version() : version);
  if (!input.empty()) ss << " input=" << input;
  return ss.str();
}

void write_manifest(std::ostream& os, const Manifest& manifest) { os << "# " << manifest.describe() << '\n'; }

void write_field_csv(std::ostream& os, const BiotSolver& solver, const BiotState& state) {
  const auto& mesh = solver.system().mesh;
  const auto& relation = solver.config().relation;
  Eigen::MatrixX2d v = Eigen::MatrixX2d::Zero(mesh.vertex_count(), 2);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(mesh.vertex_count());
  for (int e = 0; e < mesh.element_count(); ++e)
    for (int k : mesh.triangles[e]) {
      v.row(k) += state.v.row(e);
      count[k] += 1.0;
    }
  os << "x,y,ux,uy,p,theta,kappa,vx,vy\n";
  PrecisionGuard guard(os, kDigits);
  for (int i = 0; i < mesh.vertex_count(); ++i) {
    const int node = mesh.vertex_node[i];
    const double theta = state.theta_vertex[i];
    const Eigen::RowVector2d vi = v.row(i) / count[i];
    os << mesh.vertices[i].x() << ',' << mesh.vertices[i].y() << ',' << state.u[displacement_dof(node, 0)] << ','
       << state.u[displacement_dof(node, 1)] << ',' << state.p[i] << ',' << theta << ','
       << (theta > 0.0 ? relation(theta) : 0.0) << ',' << vi.x() << ',' << vi.y() << '\n';
  }
}

void write_field_vtk(std::ostream& os, const BiotSolver& solver, const BiotState& state, const Manifest& manifest) {
  const auto& mesh = solver.system().mesh;
  const int nv = mesh.vertex_count(), ne = mesh.element_count();
  PrecisionGuard guard(os, kDigits);
  os << "# vtk DataFile Version 3.0\n" << manifest.describe() << " t=" << state.t << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << nv << " double\n";
  for (const auto& x : mesh.vertices) os << x.x() << ' ' << x.y() << " 0\n";
  os << "CELLS " << ne << ' ' << 4 * ne << '\n';
  for (const auto& t : mesh.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  os << "CELL_TYPES " << ne << '\n';
  for (int e = 0; e < ne; ++e) os << "5\n";

  os << "POINT_DATA " << nv << "\nVECTORS u double\n";
  for (int i = 0; i < nv; ++i) {
    const int node = mesh.vertex_node[i];
    os << state.u[displacement_dof(node, 0)] << ' ' << state.u[displacement_dof(node, 1)] << " 0\n";
  }
  os << "SCALARS p double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < nv; ++i) os << state.p[i] << '\n';
  os << "SCALARS theta double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < nv; ++i) os << state.theta_vertex[i] << '\n';

  os << "CELL_DATA " << ne << "\nSCALARS theta_cell double 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < ne; ++e) os << state.theta[e] << '\n';
  os << "SCALARS kappa double 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < ne; ++e) os << state.kappa[e] << '\n';
  os << "VECTORS v double\n";
  for (int e = 0; e < ne; ++e) os << state.v(e, 0) << ' ' << state.v(e, 1) << " 0\n";
}

void write_time_series_csv(std::ostream& os, const FlowDiagnostics& d) {
  os << "t,Q_out,min_theta,min_kappa_n,max_abs_v\n";
  PrecisionGuard guard(os, kDigits);
  for (std::size_t m = 0; m < d.t.size(); ++m)
    os << d.t[m] << ',' << d.q_out[m] << ',' << d.min_theta[m] << ',' << d.min_kappa_n[m] << ',' << d.max_abs_v[m]
       << '\n';
}

void write_threshold_sweep_csv(std::ostream& os, std::span<const ThresholdSweepRow> rows) {
  os << "p_c,Q_out_avg\n";
  PrecisionGuard guard(os, kDigits);
  for (const auto& r : rows) {
    if (r.baseline())
      os << "kozeny-carman";
    else
      os << r.p_c;
    os << ',';
    if (r.ok)
      os << r.q_out_mean << '\n';
    else
      os << "nan\n# failed: " << r.error << '\n';
  }
}

}  // namespace poroperm
