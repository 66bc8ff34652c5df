// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "congrig/number_field.hpp"
#include "congrig/rational.hpp"

namespace congrig {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline bool is_zero_value(const Rational& x) { return x == 0; }
inline bool is_zero_value(const AlgebraicNumber& x) { return x.is_zero(); }

/// In-place reduced row echelon form; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!is_zero_value(m[i][c])) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    T inv = T(m[r][c]);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] / inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero_value(m[i][c])) continue;
      T f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank_of(Matrix<T> m) {
  return rref(m).size();
}

/// Basis of {x : m x = 0}. `zero` and `one` fix the scalar type's ring context.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m, std::size_t cols, const T& zero, const T& one) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols, zero);
    v[free] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = zero - m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves sum_j x_j * columns[j] = target; nullopt when inconsistent.
/// Columns must be linearly independent.
template <class T>
std::optional<std::vector<T>> solve_columns(const std::vector<std::vector<T>>& columns, const std::vector<T>& target,
                                            const T& zero) {
  std::size_t n = columns.size(), rows = target.size();
  Matrix<T> aug(rows, std::vector<T>(n + 1, zero));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = columns[j][i];
    aug[i][n] = target[i];
  }
  auto pivots = rref(aug);
  std::vector<T> x(n, zero);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == n) return std::nullopt;
    x[pivots[r]] = aug[r][n];
  }
  return x;
}

/// Incrementally maintained echelon basis of a subspace of Q^n.
class RationalSpan {
 public:
  explicit RationalSpan(std::size_t n) : n_(n) {}
  /// Adds v; returns true when v was not already in the span.
  bool add(const std::vector<Rational>& v);
  bool contains(const std::vector<Rational>& v) const;
  std::size_t dimension() const { return rows_.size(); }
  const std::vector<std::vector<Rational>>& original() const { return original_; }

 private:
  std::vector<Rational> reduce(std::vector<Rational> v) const;
  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<Rational>> original_;
};

}  // namespace congrig
