#include "dynkin/errors.hpp"

#include <sstream>

namespace dynkin {
namespace {

std::string join_indices(const std::vector<std::size_t>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ",";
    os << xs[i];
  }
  return os.str();
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "validation failed";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

}  // namespace

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t actual)
    : Error("dimension mismatch: expected " + std::to_string(expected) +
            ", got " + std::to_string(actual)),
      expected_(expected),
      actual_(actual) {}

SolverFailure::SolverFailure(double residual)
    : Error("resolvent solve failed: residual " + std::to_string(residual)),
      residual_(residual) {}

OverlappingSets::OverlappingSets(std::vector<std::size_t> overlap)
    : Error("stopping sets overlap at states {" + join_indices(overlap) + "}"),
      overlap_(std::move(overlap)) {}

NonNegativityViolation::NonNegativityViolation(std::size_t state)
    : Error("payoff is negative at state " + std::to_string(state)),
      state_(state) {}

IterationOverflow::IterationOverflow(std::size_t iterations)
    : Error("outer iteration count reached " + std::to_string(iterations) +
            " = |E|; set classification is oscillating"),
      iterations_(iterations) {}

MaxIterExceeded::MaxIterExceeded(std::size_t iterations, double residual)
    : Error("value iteration did not converge in " +
            std::to_string(iterations) + " sweeps (last residual " +
            std::to_string(residual) + ")"),
      iterations_(iterations),
      residual_(residual) {}

TooManyStates::TooManyStates(std::size_t states, std::size_t limit)
    : Error("enumeration needs at most " + std::to_string(limit) +
            " states, got " + std::to_string(states)) {}

SubsetViolation::SubsetViolation(std::vector<std::size_t> offending)
    : Error("states {" + join_indices(offending) +
            "} are not strictly between psi and phi"),
      offending_(std::move(offending)) {}

ValidationError::ValidationError(std::vector<std::string> diagnostics)
    : Error(join_lines(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace dynkin
