// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "congrig/finite_field.hpp"

namespace congrig {

/// GR(p^m, f) = (Z/p^m)[x]/(g) with g the coefficient lift of the canonical
/// F_{p^f} modulus. Elements are coefficient vectors of length f.
class GaloisRing {
 public:
  using Elem = std::vector<std::int64_t>;

  GaloisRing(std::uint64_t p, int m, int f);

  std::uint64_t characteristic_prime() const { return p_; }
  int precision() const { return m_; }
  int degree() const { return f_; }
  std::int64_t modulus_int() const { return pm_; }
  /// Number of elements, q^m.
  std::uint64_t size() const;
  const FiniteField& residue_field() const { return *residue_; }

  Elem zero() const { return Elem(f_, 0); }
  Elem one() const;
  Elem from_int(std::int64_t n) const;
  /// Element number `index` in a fixed enumeration of the ring.
  Elem element(std::uint64_t index) const;
  std::uint64_t index_of(const Elem& a) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, std::int64_t s) const;
  bool is_unit(const Elem& a) const;
  Elem inverse(const Elem& a) const;
  /// Ring automorphism lifting x -> x^p. Implemented for f <= 2.
  Elem frobenius(const Elem& a) const;
  /// p-adic valuation (precision m for zero).
  int valuation(const Elem& a) const;
  FiniteField::Elem residue(const Elem& a) const;
  /// Reduction to a lower precision m' <= m.
  Elem truncate(const Elem& a, int new_precision) const;

 private:
  std::int64_t md(__int128 x) const;
  std::uint64_t p_;
  int m_, f_;
  std::int64_t pm_;
  std::vector<std::int64_t> modulus_;  // low coefficients of the monic modulus
  FieldRef residue_;
};

}  // namespace congrig
