// Command-line front end: network closure sweeps, relation curves and
// poroelastic runs. Exit codes: 0 success, 2 usage, 3 validation, 4 numerical.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "poroperm/biot.hpp"
#include "poroperm/config.hpp"
#include "poroperm/errors.hpp"
#include "poroperm/io.hpp"
#include "poroperm/percolation.hpp"
#include "poroperm/relations.hpp"

namespace fs = std::filesystem;
using namespace poroperm;

namespace {

constexpr int kUsage = 2;
constexpr int kValidation = 3;
constexpr int kNumerical = 4;

struct Global {
  std::uint64_t seed = 42;
  std::string profile = "desk";
  std::string out = "out";
  unsigned threads = 0;
};

bool full(const Global& g) { return g.profile == "full"; }

Manifest manifest(const Global& g, const std::string& experiment, const std::string& input = {}) {
  Manifest m;
  m.experiment = experiment;
  m.seed = g.seed;
  m.profile = g.profile;
  m.input = input;
  return m;
}

std::ofstream open_output(const Global& g, const std::string& name) {
  fs::create_directories(g.out);
  const fs::path path = fs::path(g.out) / name;
  std::ofstream os(path);
  if (!os) throw ParameterError("cannot write " + path.string());
  return os;
}

std::string number_tag(double x) {
  std::ostringstream ss;
  ss << x;
  return ss.str();
}

// Channel geometry shared by all network topologies.
constexpr double kSpacing = 1.0e-3;
constexpr double kRadius = 1.0e-5;
constexpr double kTheta0 = 0.4;

struct NetworkArgs {
  std::string topology;
  int nx = 0, ny = 0, nodes = 0, trials = 0;
  bool refine = true;
  std::string statistic = "trial-exit";
};

int network_sweep(const Global& g, NetworkArgs a) {
  const bool big = full(g);
  if (a.nx == 0) a.nx = big ? 100 : 50;
  if (a.ny == 0) a.ny = big ? 60 : 30;
  if (a.nodes == 0) a.nodes = big ? 6921 : 1730;
  if (a.trials == 0) a.trials = big ? 500 : 100;

  PoreNetwork net = [&] {
    if (a.topology == "rectangular") return build_rectangular(a.nx, a.ny, kSpacing, kRadius, kTheta0);
    if (a.topology == "triangular") return build_triangular(a.nx, a.ny, kSpacing, kRadius, kTheta0);
    const double scale = std::sqrt(a.nodes / 6921.0);
    return build_unstructured_triangular(a.nodes, Rectangle{0.0, 0.0, 0.1 * scale, 0.06 * scale}, g.seed, kRadius,
                                         kTheta0);
  }();

  SweepOptions opt;
  opt.threads = g.threads;
  opt.refine = a.refine;
  const auto stages = default_stages();
  const auto records = sweep(net, stages, a.trials, g.seed, opt);
  const auto statistic = a.statistic == "all-records" ? BinStatistic::AllRecords : BinStatistic::TrialExit;
  const auto bins = bin_stats(records, opt.bin_centers, opt.bin_half_width, statistic);
  const auto threshold = estimate_threshold(records);

  const auto m = manifest(g, "network-sweep/" + a.topology);
  {
    auto os = open_output(g, "records_" + a.topology + ".csv");
    write_manifest(os, m);
    write_records_csv(os, records, a.topology);
  }
  {
    auto os = open_output(g, "bins_" + a.topology + ".csv");
    write_manifest(os, m);
    write_bin_stats_csv(os, bins, opt.bin_half_width);
  }
  {
    auto os = open_output(g, "threshold_" + a.topology + ".csv");
    write_manifest(os, m);
    write_threshold_csv(os, threshold, a.topology, net.channel_count());
  }
  std::cout << a.topology << ": " << net.node_count() << " nodes, " << net.channel_count() << " channels, "
            << a.trials << " trials, p_c = " << threshold.p_c << '\n';
  for (const auto& b : bins) std::cout << "  k = " << b.center << ": f_c = " << b.mean << " (sd " << b.stddev << ")\n";
  return 0;
}

int threshold_estimate(const Global& g, const std::string& records_path, std::size_t channels) {
  std::ifstream in(records_path);
  if (!in) throw ParameterError("cannot open " + records_path);
  std::string topology;
  const auto records = read_records_csv(in, &topology);
  const auto threshold = estimate_threshold(records);
  auto os = open_output(g, "threshold_" + topology + ".csv");
  write_manifest(os, manifest(g, "threshold-estimate/" + topology, records_path));
  write_threshold_csv(os, threshold, topology, channels);
  std::cout << topology << ": p_c = " << threshold.p_c << " (f_c* = " << threshold.f_c_star << ", sd "
            << threshold.f_c_stddev << ", " << threshold.trials << " trials)\n";
  return 0;
}

int relation_curve(const Global& g, const std::string& kind, double p_c, int points, double theta0,
                   double grain_size) {
  if (points < 2) throw ParameterError("relation-curve: need at least two points");
  const auto relation = kind == "network-inspired" ? PermeabilityRelation::network_inspired(p_c, theta0, grain_size)
                                                   : PermeabilityRelation::kozeny_carman(grain_size);
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[i] = theta0 * (i + 1.0) / points;
  grid.back() = theta0;
  const auto curve = export_curve(relation, theta0, grid);
  const std::string name = kind == "network-inspired" ? "curve_ni_pc" + number_tag(p_c) + ".csv" : "curve_kc.csv";
  auto os = open_output(g, name);
  write_manifest(os, manifest(g, kind == "network-inspired" ? "relation-curve/ni-pc" + number_tag(p_c) : "relation-curve/kc"));
  write_curve_csv(os, curve);
  std::cout << "wrote " << (fs::path(g.out) / name).string() << '\n';
  return 0;
}

SolverConfig load_run_config(const Global& g, const std::string& path) {
  std::set<std::string> present;
  SolverConfig cfg = load_config(path, &present);
  if (!present.contains("time.end_time")) {
    cfg.end_time = full(g) ? 300.0 : 60.0;
    std::vector<double> kept;
    for (double t : cfg.snapshot_times)
      if (t <= cfg.end_time)
        kept.push_back(t);
      else
        std::cerr << "note: snapshot t = " << t << " lies beyond end_time = " << cfg.end_time << ", dropped\n";
    cfg.snapshot_times = std::move(kept);
  }
  cfg.validate();
  return cfg;
}

void write_fields(const Global& g, const BiotSolver& solver, const BiotState& state, const Manifest& m) {
  const std::string tag = "t" + number_tag(state.t);
  {
    auto os = open_output(g, "fields_" + tag + ".csv");
    write_manifest(os, m);
    write_field_csv(os, solver, state);
  }
  auto os = open_output(g, "fields_" + tag + ".vtk");
  write_field_vtk(os, solver, state, m);
}

int biot_run(const Global& g, const std::string& config_path) {
  const SolverConfig cfg = load_run_config(g, config_path);
  BiotSolver solver(cfg);
  const auto result = run(solver);
  const auto m = manifest(g, "biot-run/" + fs::path(config_path).stem().string(), config_path);
  {
    auto os = open_output(g, "timeseries.csv");
    write_manifest(os, m);
    write_time_series_csv(os, result.diagnostics);
  }
  for (const auto& s : result.snapshots) write_fields(g, solver, s, m);
  const auto& fin = result.final_state;
  if (result.snapshots.empty() || result.snapshots.back().t != fin.t) write_fields(g, solver, fin, m);

  const double theta0 = cfg.material.theta0;
  double outlet = 1.0;
  for (int e : solver.system().mesh.outlet_column()) outlet = std::min(outlet, fin.theta[e] / theta0);
  std::cout << "t = " << fin.t << ", " << solver.system().mesh.element_count() << " elements\n"
            << "  min theta/theta0 (vertex)  " << fin.theta_vertex.minCoeff() / theta0 << '\n'
            << "  outlet column theta/theta0 " << outlet << '\n'
            << "  min kappa/kappa0           " << fin.kappa.minCoeff() / result.reference_permeability << '\n'
            << "  mean Q_out                 " << result.diagnostics.q_out_mean() << " m^2/s\n";
  if (fin.degenerate > 0) std::cout << "  degenerate elements        " << fin.degenerate << '\n';
  if (!result.completed) {
    std::cerr << "run stopped early: " << result.error << '\n';
    return kNumerical;
  }
  return 0;
}

int threshold_sweep(const Global& g, const std::string& config_path, int points, double dx) {
  if (points < 1) {
    std::cerr << "threshold-sweep: the grid is empty\n";
    return kUsage;
  }
  SolverConfig cfg = load_run_config(g, config_path);
  if (dx > 0.0) cfg.dx = cfg.dy = dx;
  cfg.snapshot_times.clear();
  cfg.validate();
  const auto grid = default_threshold_grid(points);
  const auto rows = sweep_thresholds(cfg, grid, g.threads);
  const std::string name = "sweep_dx" + number_tag(cfg.dx) + ".csv";
  auto os = open_output(g, name);
  write_manifest(os, manifest(g, "threshold-sweep/dx" + number_tag(cfg.dx), config_path));
  write_threshold_sweep_csv(os, rows);
  int failed = 0;
  for (const auto& r : rows) {
    std::cout << (r.baseline() ? std::string("kozeny-carman") : number_tag(r.p_c)) << ": " << r.q_out_mean << '\n';
    failed += r.ok ? 0 : 1;
  }
  if (failed) std::cerr << failed << " runs failed; see " << name << '\n';
  return failed ? kNumerical : 0;
}

int saddle_check(const Global& g, int nx, int ny) {
  if (nx < 1 || ny < 1) throw ParameterError("saddle-check: need at least one cell per direction");
  SolverConfig cfg;
  cfg.dx = cfg.width / nx;
  cfg.dy = cfg.height / ny;
  const std::vector<double> factors = {1e-2, 1e-4, 1e-6};
  const auto rows = saddle_ladder(cfg, factors);
  auto os = open_output(g, "saddle.csv");
  write_manifest(os, manifest(g, "saddle-check/" + std::to_string(nx) + "x" + std::to_string(ny)));
  os << "factor,u_distance_a,p_distance,constraint_residual\n";
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << r.factor << ',' << r.u_distance << ',' << r.p_distance << ',' << r.constraint_residual << '\n';
    std::cout << "factor " << r.factor << ": |u-u0|_A " << r.u_distance << ", |p-p0| " << r.p_distance << '\n';
    if (i > 0) monotone = monotone && r.u_distance < rows[i - 1].u_distance && r.p_distance < rows[i - 1].p_distance;
  }
  const bool small = rows.back().u_distance <= 1e-3 * rows.front().u_distance &&
                     rows.back().p_distance <= 1e-3 * rows.front().p_distance;
  std::cout << (monotone && small ? "converges to the saddle-point limit\n" : "no monotone convergence\n");
  return monotone && small ? 0 : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pore-network permeability and poroelastic flow experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--profile", g.profile, "Run scale")->check(CLI::IsMember({"desk", "full"}))->capture_default_str();
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads, 0 = all cores")->capture_default_str();

  NetworkArgs na;
  auto* ns = app.add_subcommand("network-sweep", "Monte-Carlo channel closure on a pore network");
  ns->add_option("--topology", na.topology)->required()->check(
      CLI::IsMember({"rectangular", "triangular", "unstructured"}));
  ns->add_option("--nx", na.nx, "Cells along the flow direction (structured)");
  ns->add_option("--ny", na.ny, "Cells across the flow direction (structured)");
  ns->add_option("--nodes", na.nodes, "Node count (unstructured)");
  ns->add_option("--trials", na.trials, "Closure sequences");
  ns->add_option("--statistic", na.statistic, "Bin statistic")
      ->check(CLI::IsMember({"trial-exit", "all-records"}))
      ->capture_default_str();
  ns->add_flag("!--no-refine", na.refine, "Stage records only, no bin-exit bisection");

  std::string records_path;
  std::size_t channels = 0;
  auto* te = app.add_subcommand("threshold-estimate", "Threshold from a records CSV");
  te->add_option("--records", records_path)->required()->check(CLI::ExistingFile);
  te->add_option("--channels", channels, "Channel count of the network, for n_hat")->required();

  std::string kind = "kozeny-carman";
  double p_c = 0.5, theta0 = kTheta0, grain = 0.2e-3;
  int points = 101;
  auto* rc = app.add_subcommand("relation-curve", "Normalized permeability-porosity curve");
  rc->add_option("--kind", kind)->check(CLI::IsMember({"kozeny-carman", "network-inspired"}))->capture_default_str();
  rc->add_option("--p-c", p_c)->capture_default_str();
  rc->add_option("--points", points)->capture_default_str();
  rc->add_option("--theta0", theta0)->capture_default_str();
  rc->add_option("--grain-size", grain)->capture_default_str();

  std::string config_path;
  auto* br = app.add_subcommand("biot-run", "One poroelastic simulation");
  br->add_option("--config", config_path)->required()->check(CLI::ExistingFile);

  int sweep_points = 40;
  double sweep_dx = 0.0;
  auto* ts = app.add_subcommand("threshold-sweep", "Mean outflow against the percolation threshold");
  ts->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  ts->add_option("--points", sweep_points, "Evenly spaced p_c on [0, 0.975]")->capture_default_str();
  ts->add_option("--dx", sweep_dx, "Mesh spacing in both directions, overrides the config");

  int snx = 10, sny = 5;
  auto* sc = app.add_subcommand("saddle-check", "Convergence to the saddle-point limit");
  sc->add_option("--nx", snx)->capture_default_str();
  sc->add_option("--ny", sny)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*ns) return network_sweep(g, na);
    if (*te) return threshold_estimate(g, records_path, channels);
    if (*rc) return relation_curve(g, kind, p_c, points, theta0, grain);
    if (*br) return biot_run(g, config_path);
    if (*ts) return threshold_sweep(g, config_path, sweep_points, sweep_dx);
    if (*sc) return saddle_check(g, snx, sny);
  } catch (const ParameterError& e) {
    std::cerr << "invalid input:\n" << e.what() << '\n';
    return kValidation;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
