#pragma once

// Serialization of solutions and traces.

#include <string>
#include <vector>

#include "dynkin/game.hpp"
#include "json.hpp"

namespace dynkin::cli {

nlohmann::json set_labels(const StateSpace& states, const StoppingSet& set);

// value, sets, flags, counts and per-iteration set listings. Rational runs add
// value_exact as "p/q" strings.
template <Scalar T>
nlohmann::json solution_json(const GameSpec<T>& spec, const Solution<T>& sol);

// Ordered C_n, S_k, D_k^(n) and value vectors.
template <Scalar T>
nlohmann::json trace_json(const GameSpec<T>& spec, const Solution<T>& sol);

// Canonical form of the outer set sequences, used for golden comparisons:
// {"outer_iterations": K, "S": [S_1..S_K], "D": [D_1..D_K]}.
template <Scalar T>
nlohmann::json set_sequence_json(const GameSpec<T>& spec, const Solution<T>& sol);

// Header state,psi,phi,V0,V1,...,VK,V.
template <Scalar T>
std::string values_csv(const GameSpec<T>& spec, const Solution<T>& sol);

struct StoredSolution {
  std::vector<std::string> value;  // exact text when available
  std::vector<std::string> sup_stop;
  std::vector<std::string> inf_stop;
};

// Throws ParseError.
StoredSolution parse_solution_text(const std::string& text);

}  // namespace dynkin::cli
