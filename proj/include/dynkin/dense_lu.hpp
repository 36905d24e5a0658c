#pragma once

// Dense LU factorization with partial pivoting, templated over the scalar
// field. Floating-point pivots are chosen by largest magnitude; exact fields
// take the first nonzero entry of the column.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "dynkin/errors.hpp"
#include "dynkin/field.hpp"

namespace dynkin {

template <Scalar T>
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<T> a;  // row-major

  explicit DenseMatrix(std::size_t size = 0) : n(size), a(size * size, T(0)) {}
  T& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  // max_i sum_j |a(i,j)|
  double inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += to_double(scalar_abs((*this)(i, j)));
      if (s > best) best = s;
    }
    return best;
  }
};

template <Scalar T>
class LuFactorization {
 public:
  // Throws SolverFailure when a zero pivot is met.
  explicit LuFactorization(DenseMatrix<T> m) : lu_(std::move(m)), piv_(lu_.n) {
    const std::size_t n = lu_.n;
    for (std::size_t i = 0; i < n; ++i) piv_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      if constexpr (FieldTraits<T>::kExact) {
        while (p < n && lu_(p, k) == 0) ++p;
        if (p == n) throw SolverFailure(0.0);
      } else {
        double best = std::fabs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
          if (std::fabs(lu_(i, k)) > best) {
            best = std::fabs(lu_(i, k));
            p = i;
          }
        }
        if (best == 0.0) throw SolverFailure(0.0);
      }
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
        std::swap(piv_[k], piv_[p]);
      }
      const T pivot = lu_(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        if (lu_(i, k) == 0) continue;
        T factor = lu_(i, k) / pivot;
        lu_(i, k) = factor;
        for (std::size_t j = k + 1; j < n; ++j) {
          if (lu_(k, j) != 0) lu_(i, j) -= factor * lu_(k, j);
        }
      }
    }
  }

  std::size_t size() const { return lu_.n; }

  std::vector<T> solve(std::span<const T> b) const {
    const std::size_t n = lu_.n;
    if (b.size() != n) throw DimensionMismatch(n, b.size());
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[piv_[i]];
    for (std::size_t i = 0; i < n; ++i) {
      T acc = x[i];
      for (std::size_t j = 0; j < i; ++j) {
        if (lu_(i, j) != 0) acc -= lu_(i, j) * x[j];
      }
      x[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
      T acc = x[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        if (lu_(i, j) != 0) acc -= lu_(i, j) * x[j];
      }
      x[i] = acc / lu_(i, i);
    }
    return x;
  }

 private:
  DenseMatrix<T> lu_;
  std::vector<std::size_t> piv_;
};

// r = b - A x, accumulated in long double for floating point.
template <Scalar T>
std::vector<T> residual(const DenseMatrix<T>& m, std::span<const T> x, std::span<const T> b) {
  std::vector<T> r(m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    if constexpr (FieldTraits<T>::kExact) {
      T acc = b[i];
      for (std::size_t j = 0; j < m.n; ++j) acc -= m(i, j) * x[j];
      r[i] = acc;
    } else {
      long double acc = b[i];
      for (std::size_t j = 0; j < m.n; ++j)
        acc -= static_cast<long double>(m(i, j)) * static_cast<long double>(x[j]);
      r[i] = static_cast<T>(acc);
    }
  }
  return r;
}

// Solves A x = b; floating point gets one step of iterative refinement.
template <Scalar T>
std::vector<T> lu_solve(const DenseMatrix<T>& m, std::span<const T> b) {
  LuFactorization<T> lu(m);
  std::vector<T> x = lu.solve(b);
  if constexpr (!FieldTraits<T>::kExact) {
    std::vector<T> r = residual(m, std::span<const T>(x), b);
    std::vector<T> dx = lu.solve(r);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  }
  return x;
}

}  // namespace dynkin
