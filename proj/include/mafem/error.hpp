#ifndef MAFEM_ERROR_HPP
#define MAFEM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace mafem {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: bad parameters, unsupported degrees, unknown names.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (mesh files, configs). Carries a 1-based line number
/// when one is known (0 otherwise).
class ParseError : public ArgumentError {
 public:
  ParseError(const std::string& msg, int line = 0)
      : ArgumentError(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Problem data that cannot be used (non-finite values, f <= 0, missing
/// exact solution).
class DataError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// File system failures.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Base class for failures of the nonlinear or linear solve.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Structurally or numerically singular linear system.
class SingularMatrixError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Newton produced a non-finite residual or an unusable step.
class DivergedError : public SolverError {
 public:
  DivergedError(const std::string& msg, int iteration = -1)
      : SolverError(msg), iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

/// Newton ran out of iterations. Carries the residual history.
class NotConvergedError : public SolverError {
 public:
  NotConvergedError(const std::string& msg, std::vector<double> history)
      : SolverError(msg), history_(std::move(history)) {}
  const std::vector<double>& residual_history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// Broken internal invariant; indicates a bug or corrupted data.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mafem

#endif
