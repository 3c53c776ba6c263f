#include "poroperm/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "poroperm/errors.hpp"

namespace poroperm {

namespace {

namespace pt = boost::property_tree;

double to_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return v;
}

int to_int(const std::string& s) {
  std::size_t pos = 0;
  const int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return v;
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "on" || s == "1") return true;
  if (s == "false" || s == "off" || s == "0") return false;
  throw std::invalid_argument("expected true or false");
}

template <typename E>
E to_enum(const std::string& s, const std::map<std::string, E>& names) {
  const auto it = names.find(s);
  if (it != names.end()) return it->second;
  std::string allowed;
  for (const auto& [k, v] : names) allowed += (allowed.empty() ? "" : ", ") + k;
  throw std::invalid_argument("expected one of " + allowed);
}

using Setter = std::function<void(SolverConfig&, const std::string&)>;

struct RelationSpec {
  std::string kind = "kozeny-carman";
  double p_c = 0.0;
  bool has_p_c = false;
};

}  // namespace

SolverConfig parse_config(std::istream& is, const std::string& origin, std::set<std::string>* present) {
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParameterError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  SolverConfig cfg;
  RelationSpec rel;
  std::vector<std::string> errors;

  auto real = [](double SolverConfig::* f) -> Setter {
    return [f](SolverConfig& c, const std::string& v) { c.*f = to_double(v); };
  };
  auto material = [](double Material::* f) -> Setter {
    return [f](SolverConfig& c, const std::string& v) { c.material.*f = to_double(v); };
  };

  const std::map<std::string, std::map<std::string, Setter>> keys = {
      {"mesh",
       {{"width", real(&SolverConfig::width)},
        {"height", real(&SolverConfig::height)},
        {"dx", real(&SolverConfig::dx)},
        {"dy", real(&SolverConfig::dy)}}},
      {"material",
       {{"youngs_modulus", material(&Material::youngs_modulus)},
        {"poisson_ratio", material(&Material::poisson_ratio)},
        {"viscosity", material(&Material::viscosity)},
        {"theta0", material(&Material::theta0)},
        {"grain_size", material(&Material::grain_size)}}},
      {"relation",
       {{"kind",
         [&rel](SolverConfig&, const std::string& v) {
           rel.kind = to_enum<std::string>(
               v, {{"kozeny-carman", "kozeny-carman"}, {"network-inspired", "network-inspired"}});
         }},
        {"p_c",
         [&rel](SolverConfig&, const std::string& v) {
           rel.p_c = to_double(v);
           rel.has_p_c = true;
         }}}},
      {"time",
       {{"tau", real(&SolverConfig::tau)},
        {"end_time", real(&SolverConfig::end_time)},
        {"stabilization", [](SolverConfig& c, const std::string& v) { c.stabilization = to_bool(v); }},
        {"coupling",
         [](SolverConfig& c, const std::string& v) {
           c.coupling = to_enum<CouplingMode>(v, {{"lagged", CouplingMode::Lagged}, {"picard", CouplingMode::Picard}});
         }},
        {"picard_max_iter", [](SolverConfig& c, const std::string& v) { c.picard_max_iter = to_int(v); }},
        {"picard_tol", real(&SolverConfig::picard_tol)},
        {"snapshots",
         [](SolverConfig& c, const std::string& v) {
           std::string list = v;
           std::replace(list.begin(), list.end(), ',', ' ');
           std::istringstream ss(list);
           std::string item;
           c.snapshot_times.clear();
           while (ss >> item) c.snapshot_times.push_back(to_double(item));
         }}}},
      {"problem",
       {{"kind",
         [](SolverConfig& c, const std::string& v) {
           c.problem = to_enum<ProblemKind>(
               v, {{"high-pump-pressure", ProblemKind::HighPumpPressure}, {"squeeze", ProblemKind::Squeeze}});
         }},
        {"p_pump", real(&SolverConfig::p_pump)},
        {"sigma0", real(&SolverConfig::sigma0)},
        {"load_fraction", real(&SolverConfig::load_fraction)},
        {"effective_stress_traction",
         [](SolverConfig& c, const std::string& v) { c.effective_stress_traction = to_bool(v); }},
        {"linear_solver",
         [](SolverConfig& c, const std::string& v) {
           c.linear_solver = to_enum<LinearSolverKind>(v, {{"auto", LinearSolverKind::Auto},
                                                           {"ldlt", LinearSolverKind::SymmetricLDLT},
                                                           {"bicgstab", LinearSolverKind::PreconditionedBiCGSTAB},
                                                           {"lu", LinearSolverKind::SparseLU}});
         }}}},
  };

  for (const auto& [section, entries] : tree) {
    const auto sk = keys.find(section);
    if (sk == keys.end()) {
      errors.push_back(origin + (entries.empty() ? ": key '" + section + "' outside any section"
                                                 : ": unknown section [" + section + "]"));
      continue;
    }
    for (const auto& [key, node] : entries) {
      const auto setter = sk->second.find(key);
      if (setter == sk->second.end()) {
        errors.push_back(origin + ": unknown key " + section + "." + key);
        continue;
      }
      if (present) present->insert(section + "." + key);
      try {
        setter->second(cfg, node.data());
      } catch (const std::exception& e) {
        errors.push_back(origin + ": " + section + "." + key + " = '" + node.data() + "': " + e.what());
      }
    }
  }

  if (rel.kind == "network-inspired") {
    if (!rel.has_p_c)
      errors.push_back(origin + ": relation.p_c is required for the network-inspired relation");
    else if (!(rel.p_c >= 0.0 && rel.p_c < 1.0))
      errors.push_back(origin + ": relation.p_c must lie in [0, 1)");
  }
  if (cfg.material.theta0 > 0.0 && cfg.material.theta0 < 1.0 && cfg.material.grain_size > 0.0) {
    if (rel.kind == "network-inspired" && rel.has_p_c && rel.p_c >= 0.0 && rel.p_c < 1.0)
      cfg.relation = PermeabilityRelation::network_inspired(rel.p_c, cfg.material.theta0, cfg.material.grain_size);
    else
      cfg.relation = PermeabilityRelation::kozeny_carman(cfg.material.grain_size);
  }

  for (auto& e : cfg.validation_errors()) errors.push_back(origin + ": " + e);
  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "\n") + e;
    throw ParameterError(msg);
  }
  return cfg;
}

SolverConfig load_config(const std::string& path, std::set<std::string>* present) {
  std::ifstream in(path);
  if (!in) throw ParameterError(path + ": cannot open configuration file");
  return parse_config(in, path, present);
}

}  // namespace poroperm
