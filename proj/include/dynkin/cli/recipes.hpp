#pragma once

// Built-in example games.

#include <string>
#include <vector>

#include "dynkin/cli/spec_file.hpp"

namespace dynkin::cli {

// Birth-death payoffs on x = 0..N-1:
//   kWave:     psi = 10 + x/4 + 3 cos x + 2 sin(x/2), phi = psi + 3
//   kWaveBump: same psi, phi = psi + 4 (sin(x/5) + 0.7)_+
//   kRamp:     psi = (x - 25)_+, phi = psi + 5
enum class BirthDeathPayoff { kWave, kWaveBump, kRamp };

// Reflecting birth-death chain: Q(i,i+1) = lambda, Q(i,i-1) = r.
SpecFile gen_birth_death(std::size_t n, double lambda, double r, double beta,
                         BirthDeathPayoff payoff);

// Lattice payoffs on p = 0..N^2-1, psi = (p - N^2/2)_+:
//   kShift: phi = psi + delta
//   kScale: phi = factor * psi
enum class LatticePayoff { kShift, kScale };

// Which grid lines absorb. kRows: states with p / N in {0, N-1};
// kColumns: states with p mod N in {0, N-1}.
enum class LatticeOrientation { kRows, kColumns };

// Nearest-neighbour walk at rate r on the N x N grid, p = i + jN. Moves off
// the grid are dropped and the absorbing lines have zero rows.
SpecFile gen_lattice(std::size_t n, double r, double beta, LatticePayoff payoff,
                     double payoff_constant,
                     LatticeOrientation orientation = LatticeOrientation::kRows);

// Four-state chain, unit rates between neighbours, beta = 1/5.
// Equal variant: psi = (10,4,2,1), phi = (12, 8, V0(2), 1), with V0 computed
// in the requested arithmetic. Unequal variant: psi = (4,7,0,5),
// phi = (5, 10, 60/11, 5).
SpecFile four_state_equal(const std::string& arithmetic = "float");
SpecFile four_state_neq(const std::string& arithmetic = "float");

struct RecipeInfo {
  std::string name;
  std::string description;
};

// Named presets accepted by example_recipe.
const std::vector<RecipeInfo>& recipe_catalog();

// Throws BadParameter for an unknown name.
SpecFile example_recipe(const std::string& name, const std::string& arithmetic = "float",
                        LatticeOrientation orientation = LatticeOrientation::kRows);

}  // namespace dynkin::cli
