// SPDX-License-Identifier: Apache-2.0
#include "congrig/linalg.hpp"

namespace congrig {

std::vector<Rational> RationalSpan::reduce(std::vector<Rational> v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::size_t c = pivots_[r];
    if (v[c] == 0) continue;
    Rational f = v[c];
    for (std::size_t j = 0; j < n_; ++j) v[j] -= f * rows_[r][j];
  }
  return v;
}

bool RationalSpan::contains(const std::vector<Rational>& v) const {
  auto r = reduce(v);
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

bool RationalSpan::add(const std::vector<Rational>& v) {
  auto r = reduce(v);
  std::size_t c = 0;
  while (c < n_ && r[c] == 0) ++c;
  if (c == n_) return false;
  Rational inv = 1 / r[c];
  for (auto& x : r) x *= inv;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (rows_[k][c] == 0) continue;
    Rational f = rows_[k][c];
    for (std::size_t j = 0; j < n_; ++j) rows_[k][j] -= f * r[j];
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(c);
  original_.push_back(v);
  return true;
}

}  // namespace congrig
