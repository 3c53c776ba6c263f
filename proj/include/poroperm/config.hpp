#pragma once

#include <iosfwd>
#include <set>
#include <string>

#include "poroperm/biot.hpp"

namespace poroperm {

/// Reads a run configuration in INI form with sections [mesh], [material],
/// [relation], [time] and [problem]; docs/config_schema.md lists the keys.
/// Missing keys keep their defaults. Every problem found (syntax, unknown
/// key, bad value, violated constraint) is collected and reported in a
/// single ParameterError, one per line. When `present` is given it receives
/// the "section.key" names found in the file.
SolverConfig parse_config(std::istream& is, const std::string& origin = "<config>",
                          std::set<std::string>* present = nullptr);
SolverConfig load_config(const std::string& path, std::set<std::string>* present = nullptr);

}  // namespace poroperm
