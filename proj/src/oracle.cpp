#include "dynkin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dynkin {

double ValueIterationResult::contraction_ratio(std::size_t window) const {
  double worst = 0.0;
  const std::size_t m = residuals.size();
  const std::size_t start = m > window + 1 ? m - window - 1 : 0;
  for (std::size_t k = start; k + 1 < m; ++k) {
    if (residuals[k] == 0.0) continue;
    worst = std::max(worst, residuals[k + 1] / residuals[k]);
  }
  return worst;
}

ValueIterationResult value_iteration(const GameSpec<double>& spec,
                                     const ValueIterationOptions& options) {
  const std::size_t n = spec.size();
  const UniformizedChain<double> chain = uniformize(spec.generator, options.slack);
  ValueIterationResult out;
  out.alpha = chain.rate / (chain.rate + spec.beta);
  const double a = out.alpha;
  const double stop = options.tol * (1.0 - a) / a;

  std::vector<std::vector<std::pair<std::size_t, double>>> rows(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (chain(x, y) != 0.0) rows[x].emplace_back(y, chain(x, y));

  std::vector<double> w = spec.psi;
  std::vector<double> next(n);
  while (out.iterations < options.max_iter) {
    double delta = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      double pw = 0.0;
      for (const auto& [y, p] : rows[x]) pw += p * w[y];
      double v = std::max(spec.psi[x], a * pw);
      if (!options.one_player) v = std::min(spec.phi[x], v);
      next[x] = v;
      delta = std::max(delta, std::fabs(v - w[x]));
    }
    w.swap(next);
    ++out.iterations;
    out.residuals.push_back(delta);
    if (delta <= stop) {
      out.value = std::move(w);
      return out;
    }
  }
  throw MaxIterExceeded(out.iterations, out.residuals.empty() ? 0.0 : out.residuals.back());
}

std::vector<Equilibrium> enumerate_equilibria(const GameSpec<double>& spec,
                                              std::size_t max_states) {
  const std::size_t n = spec.size();
  if (n > max_states) throw TooManyStates(n, max_states);
  const StoppingSet equal = spec.equal_payoff_set();
  std::vector<std::size_t> open;
  for (std::size_t x = 0; x < n; ++x)
    if (!equal.contains(x)) open.push_back(x);

  std::size_t total = 1;
  for (std::size_t k = 0; k < open.size(); ++k) total *= 3;

  std::vector<Equilibrium> found;
  for (std::size_t code = 0; code < total; ++code) {
    StoppingSet a(n), b(n);
    std::size_t c = code;
    for (std::size_t x : open) {
      if (c % 3 == 1) a.insert(x);
      if (c % 3 == 2) b.insert(x);
      c /= 3;
    }
    std::vector<double> v = hitting_payoff(spec, a, b | equal);
    if (verify_equilibrium<double>(spec, a, b, v).pass)
      found.push_back({std::move(a), std::move(b), std::move(v)});
  }
  return found;
}

double default_horizon(const GameSpec<double>& spec) {
  double top = 1.0;
  for (double p : spec.phi) top = std::max(top, p);
  return std::log(top / 1e-4) / spec.beta;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t truncated = 0;

  void add(double v) {
    ++count;
    double d = v - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (v - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double na = static_cast<double>(count), nb = static_cast<double>(o.count);
    const double d = o.mean - mean;
    const double total = na + nb;
    mean += d * nb / total;
    m2 += o.m2 + d * d * na * nb / total;
    count += o.count;
    truncated += o.truncated;
  }
};

}  // namespace

PayoffEstimate simulate_hitting_payoff(const GameSpec<double>& spec, const StoppingSet& b,
                                       const StoppingSet& c, std::size_t x,
                                       const SimulationConfig& cfg) {
  const std::size_t n = spec.size();
  if (b.universe() != n) throw DimensionMismatch(n, b.universe());
  if (c.universe() != n) throw DimensionMismatch(n, c.universe());
  if (x >= n) throw DimensionMismatch(n, x);
  if (!(b & c).empty()) throw OverlappingSets((b & c).members());
  if (cfg.paths == 0 || cfg.batch_size == 0) throw BadParameter("paths must be positive");
  const double horizon = cfg.horizon ? *cfg.horizon : default_horizon(spec);
  if (!(horizon > 0)) throw BadParameter("horizon must be positive");

  // Jump chain: exit rate and cumulative jump distribution per state.
  std::vector<double> exit_rate(n);
  std::vector<std::vector<std::pair<std::size_t, double>>> jumps(n);
  for (std::size_t s = 0; s < n; ++s) {
    exit_rate[s] = -spec.generator(s, s);
    double acc = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      if (y == s || spec.generator(s, y) <= 0.0) continue;
      acc += spec.generator(s, y) / exit_rate[s];
      jumps[s].emplace_back(y, acc);
    }
  }

  Moments total;
  const std::uint64_t batches = (cfg.paths + cfg.batch_size - 1) / cfg.batch_size;
  for (std::uint64_t batch = 0; batch < batches; ++batch) {
    std::uint64_t mix = cfg.seed ^ (batch * 0xd1b54a32d192ed03ULL);
    std::mt19937_64 rng(splitmix64(mix));
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const std::uint64_t count = std::min(cfg.batch_size, cfg.paths - batch * cfg.batch_size);
    Moments m;
    for (std::uint64_t p = 0; p < count; ++p) {
      std::size_t s = x;
      double t = 0.0;
      double payoff = 0.0;
      while (true) {
        if (b.contains(s)) {
          payoff = std::exp(-spec.beta * t) * spec.psi[s];
          break;
        }
        if (c.contains(s)) {
          payoff = std::exp(-spec.beta * t) * spec.phi[s];
          break;
        }
        if (exit_rate[s] <= 0.0) break;
        t += -std::log1p(-uniform()) / exit_rate[s];
        if (t > horizon) {
          ++m.truncated;
          break;
        }
        const double u = uniform();
        const auto& js = jumps[s];
        auto it = std::upper_bound(js.begin(), js.end(), u,
                                   [](double v, const auto& j) { return v < j.second; });
        s = it == js.end() ? js.back().first : it->first;
      }
      m.add(payoff);
    }
    total.merge(m);
  }

  PayoffEstimate est;
  est.mean = total.mean;
  est.paths_used = total.count;
  est.truncated = total.truncated;
  double var = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
  est.std_error = std::sqrt(var / static_cast<double>(total.count));
  double top = 0.0;
  for (double p : spec.phi) top = std::max(top, p);
  est.bias_bound = std::exp(-spec.beta * horizon) * top;
  est.horizon = horizon;
  est.rng = "mt19937_64 per batch, seeded by splitmix64(seed ^ batch * 0xd1b54a32d192ed03)";
  return est;
}

GameSpec<double> construct_phi_c(const GameSpec<double>& spec, const std::vector<double>& v,
                                 const StoppingSet& i) {
  const std::size_t n = spec.size();
  if (v.size() != n) throw DimensionMismatch(n, v.size());
  if (i.universe() != n) throw DimensionMismatch(n, i.universe());
  const double tol = spec.tolerance();
  std::vector<std::size_t> bad;
  for (std::size_t x : i.members()) {
    if (!(v[x] > spec.psi[x] + tol && v[x] < spec.phi[x] - tol)) bad.push_back(x);
  }
  if (!bad.empty()) throw SubsetViolation(std::move(bad));
  GameSpec<double> out = spec;
  for (std::size_t x : i.members()) out.phi[x] = v[x];
  return out;
}

}  // namespace dynkin
