#include "dynkin/cli/recipes.hpp"

#include <algorithm>
#include <cmath>

#include "dynkin/stopping.hpp"

namespace dynkin::cli {

namespace {

std::string num(double x) { return format_double(x); }

std::vector<std::vector<std::string>> render(const std::vector<std::vector<double>>& q) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : q) {
    std::vector<std::string> r;
    for (double v : row) r.push_back(num(v));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

SpecFile gen_birth_death(std::size_t n, double lambda, double r, double beta,
                         BirthDeathPayoff payoff) {
  if (n < 2) throw BadParameter("birth-death chain needs N >= 2");
  if (!(lambda > 0) || !(r > 0)) throw BadParameter("birth-death rates must be positive");
  if (!(beta > 0)) throw BadParameter("beta must be positive");

  std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n) q[i][i + 1] = lambda;
    if (i > 0) q[i][i - 1] = r;
    q[i][i] = -((i + 1 < n ? lambda : 0.0) + (i > 0 ? r : 0.0));
  }

  SpecFile spec;
  spec.states = numbered_labels(n);
  spec.generator = render(q);
  spec.beta = num(beta);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    double psi = 0.0, phi = 0.0;
    switch (payoff) {
      case BirthDeathPayoff::kWave:
        psi = 10 + x / 4 + 3 * std::cos(x) + 2 * std::sin(x / 2);
        phi = psi + 3;
        break;
      case BirthDeathPayoff::kWaveBump:
        psi = 10 + x / 4 + 3 * std::cos(x) + 2 * std::sin(x / 2);
        phi = psi + 4 * std::max(0.0, std::sin(x / 5) + 0.7);
        break;
      case BirthDeathPayoff::kRamp:
        psi = std::max(0.0, x - 25);
        phi = psi + 5;
        break;
    }
    spec.psi.push_back(num(psi));
    spec.phi.push_back(num(phi));
  }
  return spec;
}

SpecFile gen_lattice(std::size_t n, double r, double beta, LatticePayoff payoff,
                     double payoff_constant, LatticeOrientation orientation) {
  if (n < 3) throw BadParameter("lattice needs N >= 3");
  if (!(r > 0)) throw BadParameter("lattice rate must be positive");
  if (!(beta > 0)) throw BadParameter("beta must be positive");
  if (payoff == LatticePayoff::kShift && payoff_constant < 0)
    throw BadParameter("lattice shift must be nonnegative");
  if (payoff == LatticePayoff::kScale && payoff_constant < 1)
    throw BadParameter("lattice scale factor must be at least 1");

  const std::size_t size = n * n;
  std::vector<std::vector<double>> q(size, std::vector<double>(size, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t line = orientation == LatticeOrientation::kRows ? j : i;
      if (line == 0 || line == n - 1) continue;
      const std::size_t p = i + j * n;
      auto link = [&](std::size_t a, std::size_t b) {
        q[p][a + b * n] = r;
        q[p][p] -= r;
      };
      if (i + 1 < n) link(i + 1, j);
      if (i > 0) link(i - 1, j);
      if (j + 1 < n) link(i, j + 1);
      if (j > 0) link(i, j - 1);
    }
  }

  SpecFile spec;
  spec.states = numbered_labels(size);
  spec.generator = render(q);
  spec.beta = num(beta);
  const double mid = static_cast<double>(size) / 2;
  for (std::size_t p = 0; p < size; ++p) {
    double psi = std::max(0.0, static_cast<double>(p) - mid);
    double phi = payoff == LatticePayoff::kShift ? psi + payoff_constant : payoff_constant * psi;
    spec.psi.push_back(num(psi));
    spec.phi.push_back(num(phi));
  }
  return spec;
}

namespace {

SpecFile four_state_base() {
  SpecFile spec;
  spec.states = {"0", "1", "2", "3"};
  spec.generator = {{"-1", "1", "0", "0"},
                    {"1", "-2", "1", "0"},
                    {"0", "1", "-2", "1"},
                    {"0", "0", "1", "-1"}};
  spec.beta = "1/5";
  return spec;
}

template <Scalar T>
std::string v0_at_two(const SpecFile& spec) {
  GameSpec<T> game = to_game_spec<T>(spec);
  OnePlayerResult<T> one = forward_optimal_stopping(game, StoppingSet(game.size()));
  return format_scalar(one.value[2]);
}

}  // namespace

SpecFile four_state_equal(const std::string& arithmetic) {
  SpecFile spec = four_state_base();
  spec.arithmetic = arithmetic;
  spec.psi = {"10", "4", "2", "1"};
  // phi(2) is a placeholder until V0(2) is known; it only has to dominate psi.
  spec.phi = {"12", "8", "2", "1"};
  spec.phi[2] = arithmetic == "rational" ? v0_at_two<Rational>(spec) : v0_at_two<double>(spec);
  return spec;
}

SpecFile four_state_neq(const std::string& arithmetic) {
  SpecFile spec = four_state_base();
  spec.arithmetic = arithmetic;
  spec.psi = {"4", "7", "0", "5"};
  spec.phi = {"5", "10", "60/11", "5"};
  return spec;
}

const std::vector<RecipeInfo>& recipe_catalog() {
  static const std::vector<RecipeInfo> catalog = {
      {"birth-death-wave", "N=50, beta=0.1, lambda=40, r=28, phi = psi + 3"},
      {"birth-death-bump", "N=50, beta=0.1, lambda=40, r=28, phi = psi + 4 (sin(x/5) + 0.7)_+"},
      {"birth-death-ramp", "N=50, beta=0.05, lambda=14, r=12, psi = (x-25)_+, phi = psi + 5"},
      {"lattice-shift", "13x13 lattice, beta=0.05, r=5, phi = psi + 8"},
      {"lattice-scale", "13x13 lattice, beta=1, r=500, phi = 1.5 psi"},
      {"four-state-equal", "four states, psi=(10,4,2,1), phi(2) = V0(2)"},
      {"four-state-neq", "four states, psi=(4,7,0,5), phi=(5,10,60/11,5)"},
  };
  return catalog;
}

SpecFile example_recipe(const std::string& name, const std::string& arithmetic,
                        LatticeOrientation orientation) {
  SpecFile spec;
  if (name == "birth-death-wave") {
    spec = gen_birth_death(50, 40, 28, 0.1, BirthDeathPayoff::kWave);
  } else if (name == "birth-death-bump") {
    spec = gen_birth_death(50, 40, 28, 0.1, BirthDeathPayoff::kWaveBump);
  } else if (name == "birth-death-ramp") {
    spec = gen_birth_death(50, 14, 12, 0.05, BirthDeathPayoff::kRamp);
  } else if (name == "lattice-shift") {
    spec = gen_lattice(13, 5, 0.05, LatticePayoff::kShift, 8, orientation);
  } else if (name == "lattice-scale") {
    spec = gen_lattice(13, 500, 1, LatticePayoff::kScale, 1.5, orientation);
  } else if (name == "four-state-equal") {
    return four_state_equal(arithmetic);
  } else if (name == "four-state-neq") {
    return four_state_neq(arithmetic);
  } else {
    throw BadParameter("unknown example \"" + name + "\"");
  }
  spec.arithmetic = arithmetic;
  return spec;
}

}  // namespace dynkin::cli
