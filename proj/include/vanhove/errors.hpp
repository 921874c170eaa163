#pragma once

#include <stdexcept>
#include <string>

namespace vanhove {

// Exit-code taxonomy used by the CLI: assertion failures are reported through
// rows, these exceptions cover harness misuse and numerical breakdown.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested evaluation left its domain (inadmissible test function,
// empty/unbounded shell, zero mode in a source shell, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundedShellError : DomainError {
  using DomainError::DomainError;
};

struct ZeroModeError : DomainError {
  using DomainError::DomainError;
};

struct InadmissibleFunctionError : DomainError {
  using DomainError::DomainError;
};

struct DimensionCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical non-convergence: quadrature failed to self-converge or an oracle
// truncation estimate exceeded the requested tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureDivergence : ConvergenceError {
  using ConvergenceError::ConvergenceError;
};

struct UnconvergedTruncation : ConvergenceError {
  using ConvergenceError::ConvergenceError;
};

struct NearSingularSolve : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vanhove
