#include "dynkin/stopping.hpp"

namespace dynkin {

template <Scalar T>
OnePlayerResult<T> forward_optimal_stopping(const GeneratorMatrix<T>& q, const T& beta,
                                            std::span<const T> psi,
                                            const StoppingSet& forbidden,
                                            std::span<const T> forbidden_payoff,
                                            const T& tol) {
  const std::size_t n = q.size();
  if (psi.size() != n) throw DimensionMismatch(n, psi.size());
  if (forbidden.universe() != n) throw DimensionMismatch(n, forbidden.universe());
  if (!forbidden.empty() && forbidden_payoff.size() != n)
    throw DimensionMismatch(n, forbidden_payoff.size());
  for (std::size_t x = 0; x < n; ++x) {
    if (psi[x] < 0) throw NonNegativityViolation(x);
  }

  auto nonpositive = [&](const std::vector<T>& d) {
    StoppingSet s(n);
    for (std::size_t x = 0; x < n; ++x)
      if (d[x] <= tol) s.insert(x);
    return s;
  };

  StoppingSet candidate = nonpositive(defect(q, beta, psi)) - forbidden;
  std::vector<T> boundary(n, T(0));
  for (std::size_t x : forbidden.members()) boundary[x] = forbidden_payoff[x];

  OnePlayerResult<T> result;
  while (true) {
    for (std::size_t x = 0; x < n; ++x) {
      if (!forbidden.contains(x)) boundary[x] = candidate.contains(x) ? psi[x] : T(0);
    }
    std::vector<T> value =
        masked_resolvent_solve<T>(q, beta, candidate | forbidden, boundary);
    result.trace.push_back({candidate, value});
    StoppingSet next = candidate & nonpositive(defect<T>(q, beta, value));
    if (next == candidate) break;
    candidate = std::move(next);
  }
  result.iterations = result.trace.size();
  result.value = result.trace.back().value;
  result.stop_set = result.trace.back().set;
  return result;
}

template <Scalar T>
OnePlayerResult<T> forward_optimal_stopping(const GameSpec<T>& spec,
                                            const StoppingSet& forbidden) {
  return forward_optimal_stopping<T>(spec.generator, spec.beta, spec.psi, forbidden,
                                     spec.phi, spec.tolerance());
}

#define DYNKIN_INSTANTIATE_STOPPING(T)                                             \
  template OnePlayerResult<T> forward_optimal_stopping<T>(                         \
      const GeneratorMatrix<T>&, const T&, std::span<const T>, const StoppingSet&, \
      std::span<const T>, const T&);                                               \
  template OnePlayerResult<T> forward_optimal_stopping<T>(const GameSpec<T>&,      \
                                                          const StoppingSet&);

DYNKIN_INSTANTIATE_STOPPING(double)
DYNKIN_INSTANTIATE_STOPPING(Rational)

}  // namespace dynkin
