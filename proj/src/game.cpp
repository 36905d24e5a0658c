#include "dynkin/game.hpp"

#include <algorithm>

namespace dynkin {

const char* to_string(InitMode mode) { return mode == InitMode::kStrict ? "strict" : "weak"; }

std::optional<InitMode> parse_init_mode(const std::string& text) {
  if (text == "strict") return InitMode::kStrict;
  if (text == "weak") return InitMode::kWeak;
  return std::nullopt;
}

const char* to_string(Region region) {
  switch (region) {
    case Region::kSup: return "sup";
    case Region::kInf: return "inf";
    case Region::kEqual: return "equal";
    case Region::kContinue: return "continue";
  }
  return "?";
}

template <Scalar T>
StoppingSet classify_sets(const GameSpec<T>& spec, std::span<const T> v0, InitMode mode) {
  const std::size_t n = spec.size();
  if (v0.size() != n) throw DimensionMismatch(n, v0.size());
  const T tol = spec.tolerance();
  StoppingSet out(n);
  if (mode == InitMode::kStrict) {
    for (std::size_t x = 0; x < n; ++x)
      if (v0[x] > spec.phi[x] + tol) out.insert(x);
    out |= spec.equal_payoff_set();
  } else {
    for (std::size_t x = 0; x < n; ++x)
      if (v0[x] >= spec.phi[x] - tol) out.insert(x);
  }
  return out;
}

template <Scalar T>
Solution<T> solve_game(const GameSpec<T>& spec, InitMode mode) {
  const std::size_t n = spec.size();
  const T tol = spec.tolerance();
  const StoppingSet equal = spec.equal_payoff_set();

  Solution<T> sol;
  sol.trace.mode = mode;
  sol.trace.v0 = forward_optimal_stopping(spec, StoppingSet(n));
  sol.trace.total_inner_steps = sol.trace.v0.iterations;
  const std::vector<T>& v0 = sol.trace.v0.value;

  StoppingSet above(n);
  for (std::size_t x = 0; x < n; ++x)
    if (v0[x] > spec.phi[x] + tol) above.insert(x);

  if (above.empty()) {
    sol.shortcut_used = true;
    sol.value = v0;
    sol.sup_stop = sol.trace.v0.stop_set;
    sol.inf_stop = StoppingSet(n);
    for (std::size_t x = 0; x < n; ++x)
      if (scalar_abs(T(v0[x] - spec.phi[x])) <= tol) sol.inf_stop.insert(x);
    return sol;
  }

  StoppingSet inf_set = classify_sets<T>(spec, v0, mode);
  while (true) {
    if (sol.trace.outer.size() + 1 >= n) throw IterationOverflow(sol.trace.outer.size() + 1);
    OnePlayerResult<T> inner = forward_optimal_stopping(spec, inf_set);
    sol.trace.total_inner_steps += inner.iterations;
    std::vector<T> d = defect<T>(spec.generator, spec.beta, inner.value);
    sol.trace.outer.push_back({inf_set, std::move(inner)});

    StoppingSet next(n);
    for (std::size_t x : inf_set.members())
      if (d[x] >= -tol) next.insert(x);
    next |= equal;
    if (next == inf_set) break;
    inf_set = std::move(next);
  }

  const OuterIterate<T>& last = sol.trace.outer.back();
  sol.value = last.inner.value;
  sol.sup_stop = last.inner.stop_set | equal;
  sol.inf_stop = last.inf_set;
  return sol;
}

template <Scalar T>
NEReport<T> verify_equilibrium(const GameSpec<T>& spec, const StoppingSet& a,
                               const StoppingSet& b, std::span<const T> v) {
  const std::size_t n = spec.size();
  if (v.size() != n) throw DimensionMismatch(n, v.size());
  if (a.universe() != n) throw DimensionMismatch(n, a.universe());
  if (b.universe() != n) throw DimensionMismatch(n, b.universe());
  const StoppingSet equal = spec.equal_payoff_set();
  auto describe = [&](const StoppingSet& s) {
    std::string out = "{";
    for (std::size_t x : s.members()) out += (out.size() > 1 ? "," : "") + spec.states.label(x);
    return out + "}";
  };
  if (!(a & b).empty())
    throw PreconditionViolated("sup and inf sets overlap at " + describe(a & b));
  if (!(a & equal).empty())
    throw PreconditionViolated("sup set meets {phi = psi} at " + describe(a & equal));
  if (!(b & equal).empty())
    throw PreconditionViolated("inf set meets {phi = psi} at " + describe(b & equal));

  NEReport<T> report;
  report.tolerance = spec.tolerance();
  const T tol = report.tolerance;
  std::vector<T> d = defect<T>(spec.generator, spec.beta, v);
  for (std::size_t x = 0; x < n; ++x) {
    StateCheck<T> c;
    c.state = x;
    c.defect = d[x];
    c.above_psi = v[x] - spec.psi[x];
    c.below_phi = spec.phi[x] - v[x];
    if (a.contains(x)) {
      c.region = Region::kSup;
      if (d[x] > tol) c.broken.push_back("defect <= 0");
      if (scalar_abs(c.above_psi) > tol) c.broken.push_back("V = psi");
    } else if (b.contains(x)) {
      c.region = Region::kInf;
      if (d[x] < -tol) c.broken.push_back("defect >= 0");
      if (scalar_abs(c.below_phi) > tol) c.broken.push_back("V = phi");
    } else if (equal.contains(x)) {
      c.region = Region::kEqual;
    } else {
      c.region = Region::kContinue;
      if (scalar_abs(d[x]) > tol) c.broken.push_back("defect = 0");
    }
    if (c.above_psi < -tol) c.broken.push_back("V >= psi");
    if (c.below_phi < -tol) c.broken.push_back("V <= phi");
    c.ok = c.broken.empty();
    if (!c.ok) report.failing.push_back(x);
    report.states.push_back(std::move(c));
  }
  report.pass = report.failing.empty();
  return report;
}

template <Scalar T>
ModeComparison<T> compare_modes(const GameSpec<T>& spec) {
  ModeComparison<T> cmp;
  cmp.strict = solve_game(spec, InitMode::kStrict);
  cmp.weak = solve_game(spec, InitMode::kWeak);
  cmp.both_shortcut = cmp.strict.shortcut_used && cmp.weak.shortcut_used;
  cmp.limits_equal = cmp.strict.inf_stop == cmp.weak.inf_stop;
  const T tol = spec.tolerance();

  const auto& s = cmp.strict.trace.outer;
  const auto& w = cmp.weak.trace.outer;
  const std::size_t steps = std::max(s.size(), w.size());
  for (std::size_t k = 0; k < steps && !s.empty() && !w.empty(); ++k) {
    const OuterIterate<T>& a = s[std::min(k, s.size() - 1)];
    const OuterIterate<T>& b = w[std::min(k, w.size() - 1)];
    const std::string at = " at k=" + std::to_string(k + 1);
    if (!a.inf_set.subset_of(b.inf_set)) {
      cmp.inf_sets_nested = false;
      cmp.violations.push_back("S_k not inside S~_k" + at);
    }
    if (!b.inner.stop_set.subset_of(a.inner.stop_set)) {
      cmp.sup_sets_nested = false;
      cmp.violations.push_back("D~_k not inside D_k" + at);
    }
    for (std::size_t x = 0; x < spec.size(); ++x) {
      if (a.inner.value[x] > b.inner.value[x] + tol) {
        cmp.values_ordered = false;
        cmp.violations.push_back("V_k > V~_k" + at + ", state " + spec.states.label(x));
        break;
      }
    }
  }
  for (std::size_t x = 0; x < spec.size(); ++x) {
    double gap = to_double(scalar_abs(T(cmp.strict.value[x] - cmp.weak.value[x])));
    cmp.value_gap = std::max(cmp.value_gap, gap);
  }
  cmp.values_agree = cmp.value_gap <= 1e-8;
  if (!cmp.values_agree) cmp.violations.push_back("final values differ");
  return cmp;
}

#define DYNKIN_INSTANTIATE_GAME(T)                                                       \
  template StoppingSet classify_sets<T>(const GameSpec<T>&, std::span<const T>, InitMode); \
  template Solution<T> solve_game<T>(const GameSpec<T>&, InitMode);                     \
  template NEReport<T> verify_equilibrium<T>(const GameSpec<T>&, const StoppingSet&,    \
                                             const StoppingSet&, std::span<const T>);   \
  template ModeComparison<T> compare_modes<T>(const GameSpec<T>&);

DYNKIN_INSTANTIATE_GAME(double)
DYNKIN_INSTANTIATE_GAME(Rational)

}  // namespace dynkin
