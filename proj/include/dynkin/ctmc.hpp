#pragma once

// Finite-state continuous-time Markov chain generators and their structural
// analyses.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynkin/errors.hpp"
#include "dynkin/field.hpp"
#include "dynkin/stopping_set.hpp"

namespace dynkin {

// Ordered, pairwise-distinct state labels.
class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels);
  // Labels "0", "1", ..., "n-1".
  static StateSpace numbered(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t x) const { return labels_.at(x); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  friend bool operator==(const StateSpace& a, const StateSpace& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct GeneratorViolation {
  enum class Kind { kNonSquare, kNegativeOffDiagonal, kRowSumNonzero };
  Kind kind;
  std::size_t row = 0;
  std::size_t col = 0;
  double residual = 0.0;

  std::string describe() const;
};

class InvalidGenerator : public Error {
 public:
  explicit InvalidGenerator(std::vector<GeneratorViolation> violations);
  const std::vector<GeneratorViolation>& violations() const { return violations_; }

 private:
  std::vector<GeneratorViolation> violations_;
};

template <Scalar T>
class GeneratorMatrix;

// Checks squareness, sign of off-diagonal rates and zero row sums. Without an
// explicit tolerance rows must sum to zero within 1e-9 * max(1, max|Q(x,x)|)
// (exactly, in the rational field). Throws InvalidGenerator listing every
// violated constraint.
template <Scalar T>
GeneratorMatrix<T> validate_generator(const std::vector<std::vector<T>>& rows,
                                      std::optional<T> tol = std::nullopt);

// Validated rate matrix: off-diagonal entries nonnegative, rows sum to zero.
// Only validate_generator constructs one from raw data.
template <Scalar T>
class GeneratorMatrix {
 public:
  GeneratorMatrix() = default;

  std::size_t size() const { return n_; }
  const T& operator()(std::size_t x, std::size_t y) const { return entries_[x * n_ + y]; }
  std::span<const T> row(std::size_t x) const {
    return std::span<const T>(entries_).subspan(x * n_, n_);
  }
  // max_x |Q(x,x)|
  T max_exit_rate() const;

  friend GeneratorMatrix validate_generator<T>(const std::vector<std::vector<T>>& rows,
                                               std::optional<T> tol);

 private:
  std::size_t n_ = 0;
  std::vector<T> entries_;
};

// (Q f)(x) = sum_y Q(x,y) f(y)
template <Scalar T>
std::vector<T> apply_generator(const GeneratorMatrix<T>& q, std::span<const T> f);

template <Scalar T>
struct UniformizedChain {
  std::size_t n = 0;
  std::vector<T> p;  // row-major, row-stochastic
  T rate{};          // L

  const T& operator()(std::size_t x, std::size_t y) const { return p[x * n + y]; }
};

// P = I + Q/L with L = (1 + slack) * max_x |Q(x,x)|, or L = 1 when Q == 0.
template <Scalar T>
UniformizedChain<T> uniformize(const GeneratorMatrix<T>& q, const T& slack = T(0));

struct ClassDecomposition {
  std::vector<std::vector<std::size_t>> classes;  // each sorted ascending
  std::vector<bool> recurrent;                    // parallel to classes

  std::vector<StoppingSet> recurrent_classes(std::size_t universe) const;
};

// Communicating classes of the support graph {(x,y): x != y, Q(x,y) > 0}; a
// class is recurrent iff no positive rate leaves it.
template <Scalar T>
ClassDecomposition recurrent_classes(const GeneratorMatrix<T>& q);

}  // namespace dynkin
