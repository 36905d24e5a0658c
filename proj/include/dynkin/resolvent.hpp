#pragma once

// Game data and the masked resolvent systems that evaluate discounted
// hitting payoffs.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dynkin/ctmc.hpp"
#include "dynkin/field.hpp"
#include "dynkin/stopping_set.hpp"

namespace dynkin {

// tol = 1e-9 * (1 + max(|psi|_inf, |phi|_inf, beta*|phi|_inf)); zero for exact fields.
template <Scalar T>
T classification_tolerance(const T& beta, std::span<const T> psi, std::span<const T> phi);

// (Q, beta, psi, phi) on a labelled state space. Built by make_game_spec.
template <Scalar T>
struct GameSpec {
  StateSpace states;
  GeneratorMatrix<T> generator;
  T beta;
  std::vector<T> psi;
  std::vector<T> phi;
  std::optional<T> tolerance_override;

  std::size_t size() const { return states.size(); }
  T tolerance() const;
  // {x : |phi(x) - psi(x)| <= tol}
  StoppingSet equal_payoff_set() const;
};

// Validates dimensions, beta > 0, psi >= 0 and psi <= phi (within the
// classification tolerance). Collects every problem into one ValidationError.
template <Scalar T>
GameSpec<T> make_game_spec(StateSpace states, const std::vector<std::vector<T>>& generator,
                           T beta, std::vector<T> psi, std::vector<T> phi,
                           std::optional<T> tolerance_override = std::nullopt);

// Solves g = boundary on stop_set, (Q g - beta g)(x) = 0 elsewhere. The stop
// set unknowns are eliminated, leaving a system on the free states only.
template <Scalar T>
std::vector<T> masked_resolvent_solve(const GeneratorMatrix<T>& q, const T& beta,
                                      const StoppingSet& stop_set,
                                      std::span<const T> boundary);

// R_x(h(B), h(C)) for disjoint B, C: psi on B, phi on C.
template <Scalar T>
std::vector<T> hitting_payoff(const GameSpec<T>& spec, const StoppingSet& b,
                              const StoppingSet& c);

// Payoff of the pair (h(B), h(C)) when the sets may overlap. Ties go to the
// sup player, so C is reduced to C \ B.
template <Scalar T>
std::vector<T> stopping_payoff(const GameSpec<T>& spec, const StoppingSet& b,
                               const StoppingSet& c);

// Q f - beta f
template <Scalar T>
std::vector<T> defect(const GeneratorMatrix<T>& q, const T& beta, std::span<const T> f);

}  // namespace dynkin
