// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "congrig/finite_field.hpp"
#include "congrig/fp_poly.hpp"
#include "congrig/number_field.hpp"

namespace congrig {

/// A prime of o_k above an odd rational prime p not dividing disc(minpoly).
struct PrimeIdealData {
  FieldPtr field;
  std::uint64_t p = 0;
  FpPoly local_factor{3, {}};
  int residue_degree = 0;
  /// Canonical F_{p^f}; null when the residue field exceeds the table limit.
  FieldRef residue_field;
  /// Image of theta in residue_field.
  FiniteField::Elem theta_image = 0;

  std::uint64_t norm() const;
  /// "(p, x - 4)" style description.
  std::string to_string() const;
};

/// Good prime test used everywhere: p odd, prime, and p does not divide disc.
bool is_good_prime(const FieldPtr& field, std::uint64_t p);

std::vector<PrimeIdealData> factor_prime(const FieldPtr& field, std::uint64_t p);

FiniteField::Elem residue_reduce(const AlgebraicNumber& a, const PrimeIdealData& prime);
/// Residue of a rational number at p (denominator prime to p).
FiniteField::Elem residue_reduce(const Rational& a, const PrimeIdealData& prime);

}  // namespace congrig
