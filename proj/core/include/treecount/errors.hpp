#pragma once

#include <stdexcept>
#include <string>

namespace treecount {

// Malformed input or a violated precondition. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A procedure ran but could not produce its promised output (no convergence,
// exhausted retry budget, semidegree collapse). Exit code 1.
class ProcedureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sinkhorn scaling stopped without reaching the tolerance.
class ConvergenceFailure : public ProcedureFailure {
 public:
  ConvergenceFailure(const std::string& what, double last_residual, int iterations)
      : ProcedureFailure(what), last_residual_(last_residual), iterations_(iterations) {}
  double last_residual() const noexcept { return last_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

}  // namespace treecount
