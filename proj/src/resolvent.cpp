#include "dynkin/resolvent.hpp"

#include <algorithm>

#include "dynkin/dense_lu.hpp"

namespace dynkin {

namespace {

template <Scalar T>
double max_abs(std::span<const T> v) {
  double m = 0.0;
  for (const T& x : v) m = std::max(m, to_double(scalar_abs(x)));
  return m;
}

}  // namespace

template <Scalar T>
T classification_tolerance(const T& beta, std::span<const T> psi, std::span<const T> phi) {
  if constexpr (FieldTraits<T>::kExact) {
    return T(0);
  } else {
    double scale = std::max({max_abs(psi), max_abs(phi), beta * max_abs(phi)});
    return 1e-9 * (1.0 + scale);
  }
}

template <Scalar T>
T GameSpec<T>::tolerance() const {
  if (tolerance_override) return *tolerance_override;
  return classification_tolerance<T>(beta, psi, phi);
}

template <Scalar T>
StoppingSet GameSpec<T>::equal_payoff_set() const {
  const T tol = tolerance();
  StoppingSet out(size());
  for (std::size_t x = 0; x < size(); ++x) {
    if (scalar_abs(T(phi[x] - psi[x])) <= tol) out.insert(x);
  }
  return out;
}

template <Scalar T>
GameSpec<T> make_game_spec(StateSpace states, const std::vector<std::vector<T>>& generator,
                           T beta, std::vector<T> psi, std::vector<T> phi,
                           std::optional<T> tolerance_override) {
  std::vector<std::string> problems;
  const std::size_t n = states.size();
  if (generator.size() != n)
    problems.push_back("generator: expected " + std::to_string(n) + " rows, got " +
                       std::to_string(generator.size()));
  if (psi.size() != n)
    problems.push_back("psi: expected " + std::to_string(n) + " entries, got " +
                       std::to_string(psi.size()));
  if (phi.size() != n)
    problems.push_back("phi: expected " + std::to_string(n) + " entries, got " +
                       std::to_string(phi.size()));
  if (!(beta > 0)) problems.push_back("beta: must be positive, got " + format_scalar(beta));
  if (tolerance_override && *tolerance_override < 0)
    problems.push_back("tol: must be nonnegative");

  std::optional<GeneratorMatrix<T>> q;
  try {
    q = validate_generator<T>(generator);
    if (q->size() != n && generator.size() == n)
      problems.push_back("generator: dimension mismatch");
  } catch (const InvalidGenerator& e) {
    for (const auto& v : e.violations()) problems.push_back("generator: " + v.describe());
  }

  if (psi.size() == n && phi.size() == n) {
    T tol = tolerance_override ? *tolerance_override
                               : classification_tolerance<T>(beta, psi, phi);
    for (std::size_t x = 0; x < n; ++x) {
      if (psi[x] < 0)
        problems.push_back("psi[" + states.label(x) + "]: negative value " +
                           format_scalar(psi[x]));
      if (psi[x] > phi[x] + tol)
        problems.push_back("psi[" + states.label(x) + "] > phi[" + states.label(x) +
                           "]: " + format_scalar(psi[x]) + " > " + format_scalar(phi[x]));
    }
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return GameSpec<T>{std::move(states), std::move(*q), std::move(beta), std::move(psi),
                     std::move(phi), std::move(tolerance_override)};
}

template <Scalar T>
std::vector<T> masked_resolvent_solve(const GeneratorMatrix<T>& q, const T& beta,
                                      const StoppingSet& stop_set,
                                      std::span<const T> boundary) {
  const std::size_t n = q.size();
  if (boundary.size() != n) throw DimensionMismatch(n, boundary.size());
  if (stop_set.universe() != n) throw DimensionMismatch(n, stop_set.universe());
  if (!(beta > 0)) throw BadParameter("beta must be positive");

  std::vector<T> g(n, T(0));
  if (stop_set.empty()) return g;

  std::vector<std::size_t> free_states;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (stop_set.contains(x)) {
      g[x] = boundary[x];
    } else {
      slot[x] = free_states.size();
      free_states.push_back(x);
    }
  }
  const std::size_t m = free_states.size();
  if (m == 0) return g;

  // (Q_FF - beta I) g_F = -Q_FS boundary_S
  DenseMatrix<T> a(m);
  std::vector<T> rhs(m, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t x = free_states[i];
    auto row = q.row(x);
    for (std::size_t y = 0; y < n; ++y) {
      if (row[y] == 0) continue;
      if (slot[y] < n) {
        a(i, slot[y]) = row[y];
      } else {
        rhs[i] -= row[y] * boundary[y];
      }
    }
    a(i, i) -= beta;
  }

  std::vector<T> sol = lu_solve(a, std::span<const T>(rhs));
  for (std::size_t i = 0; i < m; ++i) g[free_states[i]] = sol[i];

  if constexpr (!FieldTraits<T>::kExact) {
    std::vector<T> r = residual(a, std::span<const T>(sol), std::span<const T>(rhs));
    double worst = max_abs<T>(r);
    double bound = 1e-9 * (1.0 + max_abs(boundary)) * std::max(1.0, a.inf_norm());
    if (!(worst <= bound)) throw SolverFailure(worst);
  }
  return g;
}

template <Scalar T>
std::vector<T> hitting_payoff(const GameSpec<T>& spec, const StoppingSet& b,
                              const StoppingSet& c) {
  const std::size_t n = spec.size();
  if (b.universe() != n) throw DimensionMismatch(n, b.universe());
  if (c.universe() != n) throw DimensionMismatch(n, c.universe());
  StoppingSet overlap = b & c;
  if (!overlap.empty()) throw OverlappingSets(overlap.members());
  std::vector<T> boundary(n, T(0));
  for (std::size_t x = 0; x < n; ++x) {
    if (b.contains(x)) boundary[x] = spec.psi[x];
    if (c.contains(x)) boundary[x] = spec.phi[x];
  }
  return masked_resolvent_solve<T>(spec.generator, spec.beta, b | c, boundary);
}

template <Scalar T>
std::vector<T> stopping_payoff(const GameSpec<T>& spec, const StoppingSet& b,
                               const StoppingSet& c) {
  return hitting_payoff(spec, b, c - b);
}

template <Scalar T>
std::vector<T> defect(const GeneratorMatrix<T>& q, const T& beta, std::span<const T> f) {
  std::vector<T> out = apply_generator(q, f);
  for (std::size_t x = 0; x < out.size(); ++x) out[x] -= beta * f[x];
  return out;
}

#define DYNKIN_INSTANTIATE_RESOLVENT(T)                                                   \
  template T classification_tolerance<T>(const T&, std::span<const T>, std::span<const T>); \
  template struct GameSpec<T>;                                                            \
  template GameSpec<T> make_game_spec<T>(StateSpace, const std::vector<std::vector<T>>&,  \
                                         T, std::vector<T>, std::vector<T>,               \
                                         std::optional<T>);                               \
  template std::vector<T> masked_resolvent_solve<T>(const GeneratorMatrix<T>&, const T&,  \
                                                    const StoppingSet&,                   \
                                                    std::span<const T>);                  \
  template std::vector<T> hitting_payoff<T>(const GameSpec<T>&, const StoppingSet&,       \
                                            const StoppingSet&);                          \
  template std::vector<T> stopping_payoff<T>(const GameSpec<T>&, const StoppingSet&,      \
                                             const StoppingSet&);                         \
  template std::vector<T> defect<T>(const GeneratorMatrix<T>&, const T&, std::span<const T>);

DYNKIN_INSTANTIATE_RESOLVENT(double)
DYNKIN_INSTANTIATE_RESOLVENT(Rational)

}  // namespace dynkin
