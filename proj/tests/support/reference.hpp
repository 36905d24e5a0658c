#pragma once

// Reference computations that share no code with the solver.

#include <cmath>
#include <vector>

#include "dynkin/resolvent.hpp"

namespace dynkin::fixtures {

// Plain triple-loop product Q f.
inline std::vector<double> reference_apply(const std::vector<std::vector<double>>& q,
                                           const std::vector<double>& f) {
  std::vector<double> out(q.size(), 0.0);
  for (std::size_t x = 0; x < q.size(); ++x)
    for (std::size_t y = 0; y < f.size(); ++y) out[x] += q[x][y] * f[y];
  return out;
}

// Discounted hitting value of stop_set by Gauss-Seidel on the jump chain:
// g(x) = sum_{y != x} Q(x,y) g(y) / (beta + q_x) off the set. Each sweep
// contracts by at most max q_x / (beta + q_x).
inline std::vector<double> reference_hitting_value(const GameSpec<double>& spec,
                                                   const StoppingSet& stop_set,
                                                   const std::vector<double>& boundary,
                                                   double tol = 1e-14) {
  const std::size_t n = spec.size();
  std::vector<double> g(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    if (stop_set.contains(x)) g[x] = boundary[x];
  for (int sweep = 0; sweep < 2'000'000; ++sweep) {
    double delta = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (stop_set.contains(x)) continue;
      const double exit = -spec.generator(x, x);
      double acc = 0.0;
      for (std::size_t y = 0; y < n; ++y)
        if (y != x) acc += spec.generator(x, y) * g[y];
      const double v = acc / (spec.beta + exit);
      delta = std::max(delta, std::fabs(v - g[x]));
      g[x] = v;
    }
    if (delta <= tol) break;
  }
  return g;
}

inline double sup_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace dynkin::fixtures
