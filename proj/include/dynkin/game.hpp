#pragma once

// Nested forward algorithm for the two-player stopping game, with the
// equilibrium verifier and the strict/weak initialization comparison.

#include <optional>
#include <string>
#include <vector>

#include "dynkin/stopping.hpp"

namespace dynkin {

// kStrict: S_1 = {V0 > phi} ∪ {phi = psi}. kWeak: S_1 = {V0 >= phi}.
enum class InitMode { kStrict, kWeak };

const char* to_string(InitMode mode);
std::optional<InitMode> parse_init_mode(const std::string& text);

template <Scalar T>
struct OuterIterate {
  StoppingSet inf_set;         // S_k
  OnePlayerResult<T> inner;    // D_k = inner.stop_set, V_k = inner.value
};

template <Scalar T>
struct GameTrace {
  OnePlayerResult<T> v0;
  std::vector<OuterIterate<T>> outer;
  InitMode mode = InitMode::kStrict;
  std::size_t total_inner_steps = 0;  // every resolvent solve, V0's included
};

template <Scalar T>
struct Solution {
  std::vector<T> value;
  StoppingSet sup_stop;  // D ∪ {phi = psi}
  StoppingSet inf_stop;  // S
  bool shortcut_used = false;
  GameTrace<T> trace;

  std::size_t outer_iterations() const { return trace.outer.size(); }
};

template <Scalar T>
StoppingSet classify_sets(const GameSpec<T>& spec, std::span<const T> v0, InitMode mode);

// Throws IterationOverflow if the outer loop reaches |E| passes.
template <Scalar T>
Solution<T> solve_game(const GameSpec<T>& spec, InitMode mode = InitMode::kStrict);

enum class Region { kSup, kInf, kEqual, kContinue };
const char* to_string(Region region);

template <Scalar T>
struct StateCheck {
  std::size_t state = 0;
  Region region = Region::kContinue;
  T defect{};
  T above_psi{};  // V - psi
  T below_phi{};  // phi - V
  bool ok = true;
  std::vector<std::string> broken;  // names of failed conditions
};

template <Scalar T>
struct NEReport {
  std::vector<StateCheck<T>> states;
  std::vector<std::size_t> failing;
  T tolerance{};
  bool pass = true;
};

// Checks, within the game tolerance: on A defect <= 0 and V = psi; on B
// defect >= 0 and V = phi; off A ∪ B ∪ {phi = psi} defect = 0; psi <= V <= phi
// everywhere. A, B must be disjoint and avoid {phi = psi}, else
// PreconditionViolated.
template <Scalar T>
NEReport<T> verify_equilibrium(const GameSpec<T>& spec, const StoppingSet& a,
                               const StoppingSet& b, std::span<const T> v);

template <Scalar T>
struct ModeComparison {
  Solution<T> strict;
  Solution<T> weak;
  bool inf_sets_nested = true;   // S_k ⊆ S~_k
  bool sup_sets_nested = true;   // D~_k ⊆ D_k
  bool values_ordered = true;    // V_k <= V~_k
  double value_gap = 0.0;        // |V - V~|_inf at termination
  bool values_agree = true;      // value_gap <= 1e-8
  bool limits_equal = false;     // S_inf == S~_inf
  bool both_shortcut = false;
  std::vector<std::string> violations;

  bool ok() const { return inf_sets_nested && sup_sets_nested && values_ordered && values_agree; }
};

template <Scalar T>
ModeComparison<T> compare_modes(const GameSpec<T>& spec);

}  // namespace dynkin
