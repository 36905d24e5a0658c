#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynkin {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual);
  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// Residual of a resolvent solve stayed above tolerance after refinement.
class SolverFailure : public Error {
 public:
  explicit SolverFailure(double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

class OverlappingSets : public Error {
 public:
  explicit OverlappingSets(std::vector<std::size_t> overlap);
  const std::vector<std::size_t>& overlap() const { return overlap_; }

 private:
  std::vector<std::size_t> overlap_;
};

class NonNegativityViolation : public Error {
 public:
  explicit NonNegativityViolation(std::size_t state);
  std::size_t state() const { return state_; }

 private:
  std::size_t state_;
};

// Outer loop of the game solver reached |E| iterations.
class IterationOverflow : public Error {
 public:
  explicit IterationOverflow(std::size_t iterations);
  std::size_t iterations() const { return iterations_; }

 private:
  std::size_t iterations_;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class MaxIterExceeded : public Error {
 public:
  MaxIterExceeded(std::size_t iterations, double residual);
  std::size_t iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

class TooManyStates : public Error {
 public:
  TooManyStates(std::size_t states, std::size_t limit);
};

class SubsetViolation : public Error {
 public:
  explicit SubsetViolation(std::vector<std::size_t> offending);
  const std::vector<std::size_t>& offending() const { return offending_; }

 private:
  std::vector<std::size_t> offending_;
};

class BadParameter : public Error {
 public:
  using Error::Error;
};

// Game data that violates a structural invariant; carries one diagnostic per
// violated field.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

}  // namespace dynkin
