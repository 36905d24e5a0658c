#pragma once

// Independent checks of the game solver: discrete-time value iteration on
// the uniformized chain, brute-force equilibrium search, Monte Carlo payoff
// estimates and the phi_c construction.
//
// Value iteration rests on the identity, for P = I + Q/L and a = L/(L+beta),
//   Q f - beta f = (L + beta) (a P f - f),
// so f is beta-excessive iff a P f <= f and harmonic iff a P f = f. The game
// value is therefore the fixed point of W -> min(phi, max(psi, a P W)), a
// sup-norm contraction with factor a.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynkin/game.hpp"

namespace dynkin {

struct ValueIterationOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10'000'000;
  bool one_player = false;  // drop the min(phi, .) clamp
  double slack = 0.0;       // uniformization slack
};

struct ValueIterationResult {
  std::vector<double> value;
  std::size_t iterations = 0;
  double alpha = 0.0;
  std::vector<double> residuals;  // |W_{n+1} - W_n|_inf per sweep

  // Worst ratio residual[n+1] / residual[n] over the last `window` sweeps.
  double contraction_ratio(std::size_t window = 10) const;
};

// Iterates from W_0 = psi until |W_{n+1} - W_n| <= tol (1 - a) / a, which puts
// the result within tol of the fixed point. Throws MaxIterExceeded.
ValueIterationResult value_iteration(const GameSpec<double>& spec,
                                     const ValueIterationOptions& options = {});

struct Equilibrium {
  StoppingSet sup_set;
  StoppingSet inf_set;
  std::vector<double> value;
};

// Every assignment of the states outside {phi = psi} to the sup set, the inf
// set or neither whose payoff passes verify_equilibrium. Throws TooManyStates
// above max_states.
std::vector<Equilibrium> enumerate_equilibria(const GameSpec<double>& spec,
                                              std::size_t max_states = 7);

struct SimulationConfig {
  std::uint64_t paths = 100'000;
  std::uint64_t seed = 0;
  std::optional<double> horizon;  // default_horizon when unset
  double confidence_z = 3.0;
  std::uint64_t batch_size = 4096;
};

struct PayoffEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double bias_bound = 0.0;
  std::uint64_t paths_used = 0;
  std::uint64_t truncated = 0;  // paths that reached the horizon
  double horizon = 0.0;
  std::string rng;
};

// ln(max(1, max phi) / 1e-4) / beta: keeps e^{-beta T} max phi at or below 1e-4.
double default_horizon(const GameSpec<double>& spec);

// Simulates the chain from x until it enters B (pays psi) or C (pays phi),
// discounted at beta; paths still running at the horizon pay 0. Batch b draws
// from mt19937_64 seeded with splitmix64(seed, b), so the result depends only
// on the inputs. Throws OverlappingSets.
PayoffEstimate simulate_hitting_payoff(const GameSpec<double>& spec, const StoppingSet& b,
                                       const StoppingSet& c, std::size_t x,
                                       const SimulationConfig& cfg);

// Same game with phi replaced by V on I. I must lie in {psi < V < phi};
// otherwise SubsetViolation.
GameSpec<double> construct_phi_c(const GameSpec<double>& spec, const std::vector<double>& v,
                                 const StoppingSet& i);

}  // namespace dynkin
