#pragma once

#include <stdexcept>
#include <string>

namespace poroperm {

/// Invalid user-supplied parameter (bad dimensions, negative coefficient, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a closed-form relation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Geometry could not be built (degenerate point set, failed sampling).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linear solve or estimation failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace poroperm
