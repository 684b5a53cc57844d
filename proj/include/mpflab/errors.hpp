#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mpflab {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a requested computation exceeds a size/term guard.
struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalDegeneracy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverFailure : std::runtime_error {
  SolverFailure(const std::string& what, std::vector<double> best, double gap)
      : std::runtime_error(what), best_iterate(std::move(best)), gap(gap) {}
  std::vector<double> best_iterate;
  double gap;
};

}  // namespace mpflab
