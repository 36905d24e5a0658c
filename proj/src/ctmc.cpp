#include "dynkin/ctmc.hpp"

#include <algorithm>
#include <sstream>

namespace dynkin {

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::vector<std::string> problems;
  if (labels_.empty()) problems.push_back("states: state space must be non-empty");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto [it, inserted] = index_.emplace(labels_[i], i);
    if (!inserted) problems.push_back("states: duplicate label '" + labels_[i] + "'");
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

StateSpace StateSpace::numbered(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return StateSpace(std::move(labels));
}

std::optional<std::size_t> StateSpace::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string GeneratorViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kNonSquare:
      os << "NonSquare: row " << row << " has " << col << " entries";
      break;
    case Kind::kNegativeOffDiagonal:
      os << "NegativeOffDiagonal(" << row << "," << col << ")";
      break;
    case Kind::kRowSumNonzero:
      os << "RowSumNonzero(" << row << ", " << format_double(residual) << ")";
      break;
  }
  return os.str();
}

namespace {

std::string describe_all(const std::vector<GeneratorViolation>& vs) {
  std::string out = "invalid generator:";
  for (const auto& v : vs) out += " " + v.describe() + ";";
  return out;
}

}  // namespace

InvalidGenerator::InvalidGenerator(std::vector<GeneratorViolation> violations)
    : Error(describe_all(violations)), violations_(std::move(violations)) {}

template <Scalar T>
T GeneratorMatrix<T>::max_exit_rate() const {
  T best(0);
  for (std::size_t x = 0; x < n_; ++x) {
    T r = scalar_abs((*this)(x, x));
    if (r > best) best = r;
  }
  return best;
}

template <Scalar T>
GeneratorMatrix<T> validate_generator(const std::vector<std::vector<T>>& rows,
                                      std::optional<T> tol) {
  using Violation = GeneratorViolation;
  const std::size_t n = rows.size();
  std::vector<Violation> violations;
  if (n == 0) violations.push_back({Violation::Kind::kNonSquare, 0, 0, 0.0});
  for (std::size_t x = 0; x < n; ++x) {
    if (rows[x].size() != n)
      violations.push_back({Violation::Kind::kNonSquare, x, rows[x].size(), 0.0});
  }
  if (!violations.empty()) throw InvalidGenerator(std::move(violations));

  T max_diag(0);
  for (std::size_t x = 0; x < n; ++x) {
    T d = scalar_abs(rows[x][x]);
    if (d > max_diag) max_diag = d;
  }
  T row_tol(0);
  if (tol) {
    row_tol = *tol;
  } else if constexpr (!FieldTraits<T>::kExact) {
    row_tol = 1e-9 * std::max(1.0, max_diag);
  }

  for (std::size_t x = 0; x < n; ++x) {
    T sum(0);
    for (std::size_t y = 0; y < n; ++y) {
      sum += rows[x][y];
      if (x != y && rows[x][y] < 0)
        violations.push_back({Violation::Kind::kNegativeOffDiagonal, x, y,
                              to_double(rows[x][y])});
    }
    if (scalar_abs(sum) > row_tol)
      violations.push_back({Violation::Kind::kRowSumNonzero, x, 0, to_double(sum)});
  }
  if (!violations.empty()) throw InvalidGenerator(std::move(violations));

  GeneratorMatrix<T> q;
  q.n_ = n;
  q.entries_.reserve(n * n);
  for (const auto& r : rows) q.entries_.insert(q.entries_.end(), r.begin(), r.end());
  return q;
}

template <Scalar T>
std::vector<T> apply_generator(const GeneratorMatrix<T>& q, std::span<const T> f) {
  const std::size_t n = q.size();
  if (f.size() != n) throw DimensionMismatch(n, f.size());
  std::vector<T> out(n, T(0));
  for (std::size_t x = 0; x < n; ++x) {
    auto row = q.row(x);
    T acc(0);
    for (std::size_t y = 0; y < n; ++y) {
      if (row[y] != 0) acc += row[y] * f[y];
    }
    out[x] = acc;
  }
  return out;
}

template <Scalar T>
UniformizedChain<T> uniformize(const GeneratorMatrix<T>& q, const T& slack) {
  if (slack < 0) throw BadParameter("uniformization slack must be nonnegative");
  UniformizedChain<T> chain;
  chain.n = q.size();
  T max_rate = q.max_exit_rate();
  chain.rate = max_rate == 0 ? T(1) : T((1 + slack) * max_rate);
  chain.p.assign(chain.n * chain.n, T(0));
  for (std::size_t x = 0; x < chain.n; ++x) {
    for (std::size_t y = 0; y < chain.n; ++y) {
      T v = q(x, y) / chain.rate;
      if (x == y) v += 1;
      chain.p[x * chain.n + y] = v;
    }
  }
  return chain;
}

std::vector<StoppingSet> ClassDecomposition::recurrent_classes(std::size_t universe) const {
  std::vector<StoppingSet> out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (recurrent[c]) out.emplace_back(universe, std::span<const std::size_t>(classes[c]));
  }
  return out;
}

template <Scalar T>
ClassDecomposition recurrent_classes(const GeneratorMatrix<T>& q) {
  const std::size_t n = q.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && q(x, y) > 0) adj[x].push_back(y);

  // Iterative Tarjan.
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), lowlink(n, 0), component(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next edge)
  std::size_t counter = 0;
  ClassDecomposition out;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge == 0 && index[v] == kUnvisited) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (edge < adj[v].size()) {
        std::size_t w = adj[v][edge++];
        if (index[w] == kUnvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        std::vector<std::size_t> cls;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = out.classes.size();
          cls.push_back(w);
        } while (w != v);
        std::sort(cls.begin(), cls.end());
        out.classes.push_back(std::move(cls));
      }
      std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        std::size_t parent = call.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[finished]);
      }
    }
  }

  out.recurrent.assign(out.classes.size(), true);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y : adj[x])
      if (component[x] != component[y]) out.recurrent[component[x]] = false;

  // Order classes by smallest member for a stable presentation.
  std::vector<std::size_t> order(out.classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.classes[a].front() < out.classes[b].front();
  });
  ClassDecomposition sorted;
  for (std::size_t i : order) {
    sorted.classes.push_back(std::move(out.classes[i]));
    sorted.recurrent.push_back(out.recurrent[i]);
  }
  return sorted;
}

#define DYNKIN_INSTANTIATE_CTMC(T)                                                   \
  template class GeneratorMatrix<T>;                                                 \
  template GeneratorMatrix<T> validate_generator<T>(const std::vector<std::vector<T>>&, \
                                                    std::optional<T>);               \
  template std::vector<T> apply_generator<T>(const GeneratorMatrix<T>&,              \
                                             std::span<const T>);                    \
  template UniformizedChain<T> uniformize<T>(const GeneratorMatrix<T>&, const T&);   \
  template ClassDecomposition recurrent_classes<T>(const GeneratorMatrix<T>&);

DYNKIN_INSTANTIATE_CTMC(double)
DYNKIN_INSTANTIATE_CTMC(Rational)

}  // namespace dynkin
