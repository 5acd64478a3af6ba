#pragma once

#include <stdexcept>
#include <string>

namespace l4scc {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The solver could not bracket an operating point.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Classic flow was handed to the single-queue solver.
class WrongSolverError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Aggregate demand failed the monotonicity check while bracketing.
class SolverDiagnosticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed scenario file or command-line quantity.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace l4scc
