#pragma once

// One-player forward algorithm: the smallest beta-excessive majorant of psi,
// optionally with the opponent fixed to stop on a given set.

#include <span>
#include <vector>

#include "dynkin/resolvent.hpp"

namespace dynkin {

template <Scalar T>
struct OnePlayerIterate {
  StoppingSet set;       // C_n, or D^(n) when a forbidden set is present
  std::vector<T> value;  // V^(n)
};

template <Scalar T>
struct OnePlayerResult {
  std::vector<T> value;
  StoppingSet stop_set;  // final candidate set; {V = psi} off the forbidden set
  std::vector<OnePlayerIterate<T>> trace;
  std::size_t iterations = 0;  // resolvent solves performed
};

// Starts from C = {Q psi - beta psi <= tol} minus `forbidden`, evaluates the
// payoff of stopping on C (paying psi) with the opponent stopping on
// `forbidden` (paying forbidden_payoff), and shrinks C to C ∩ {defect <= tol}
// until it no longer changes. With an empty forbidden set forbidden_payoff
// may be empty.
template <Scalar T>
OnePlayerResult<T> forward_optimal_stopping(const GeneratorMatrix<T>& q, const T& beta,
                                            std::span<const T> psi,
                                            const StoppingSet& forbidden,
                                            std::span<const T> forbidden_payoff,
                                            const T& tol);

// Uses the GameSpec tolerance and phi on `forbidden`.
template <Scalar T>
OnePlayerResult<T> forward_optimal_stopping(const GameSpec<T>& spec,
                                            const StoppingSet& forbidden);

}  // namespace dynkin
