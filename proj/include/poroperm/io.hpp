#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "poroperm/biot.hpp"

namespace poroperm {

/// Provenance echoed into every output file. Contains no timestamps so that
/// reruns with the same manifest give byte-identical files.
struct Manifest {
  std::string experiment;
  std::uint64_t seed = 0;
  std::string profile = "desk";
  std::string input;  // configuration or records file the run read, empty if none
  std::string version;

  /// "experiment=... seed=... profile=... version=..." plus input when set.
  std::string describe() const;
};

/// Library version string.
const char* version();

/// One comment line: "# " + manifest.describe().
void write_manifest(std::ostream& os, const Manifest& manifest);

/// Per-vertex field table x,y,ux,uy,p,theta,kappa,vx,vy. theta is the vertex
/// porosity, kappa the relation applied to it, v the mean of the adjacent
/// element velocities.
void write_field_csv(std::ostream& os, const BiotSolver& solver, const BiotState& state);

/// Legacy ASCII VTK unstructured grid on the P1 triangles: point data u, p,
/// theta; cell data theta, kappa, v. The manifest goes into the title line.
void write_field_vtk(std::ostream& os, const BiotSolver& solver, const BiotState& state, const Manifest& manifest);

/// t,Q_out,min_theta,min_kappa_n,max_abs_v, one row per step.
void write_time_series_csv(std::ostream& os, const FlowDiagnostics& diagnostics);

/// p_c,Q_out_avg. The baseline row is written as "kozeny-carman" and failed
/// runs as "nan" followed by a comment with the error.
void write_threshold_sweep_csv(std::ostream& os, std::span<const ThresholdSweepRow> rows);

}  // namespace poroperm
