// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "congrig/fuchsian.hpp"
#include "congrig/prime_ideal.hpp"
#include "congrig/psl2.hpp"
#include "congrig/subfield.hpp"

namespace congrig {

/// The o_k-order generated by the determinant-one generator lifts of a group
/// satisfying the trace field condition, with k = Q or a norm-Euclidean real
/// quadratic field.
struct QuaternionOrderData {
  Subfield k;
  FieldPtr entry_field;
  /// o_k-basis of the order as matrices over the entry field.
  std::array<Mat2, 4> basis;
  /// basis[i] * basis[j] = sum_l mult[i][j][l] basis[l], entries in o_k.
  std::vector<std::vector<std::vector<AlgebraicNumber>>> mult;
  /// Coordinates of the identity matrix.
  std::vector<AlgebraicNumber> one;
  /// Determinant of the reduced trace form on the basis (an element of o_k).
  AlgebraicNumber discriminant;
  Integer discriminant_norm;
  /// S: 2, 3, primes dividing the discriminant norm and primes dividing disc(k).
  std::vector<std::uint64_t> bad_primes;
  /// Number of enlargement rounds until the module was closed.
  int rounds = 0;

  /// o_k-coordinates of m in the basis; nullopt when m is outside the order.
  std::optional<std::vector<AlgebraicNumber>> coords_of(const Mat2& m) const;
  bool is_bad(std::uint64_t p) const;

  // k-linear coordinate system used internally
  std::array<Mat2, 4> frame;
  std::vector<std::vector<Rational>> frame_columns;
  /// Echelon rows (in frame coordinates over k) spanning the order.
  std::vector<std::vector<AlgebraicNumber>> rows;
};

inline constexpr int kOrderMaxRounds = 6;

QuaternionOrderData order_basis(const FuchsianRep& rep);

const std::vector<std::uint64_t>& bad_primes(const QuaternionOrderData& order);

/// Algebra isomorphism O/PO -> M(2, F_q) given by the images of the basis.
struct SplitMap {
  PrimeIdealData prime;
  FieldRef residue;
  std::array<Mat2q, 4> images;

  /// Image of an element with o_k-coordinates `coords`.
  Mat2q apply(const std::vector<AlgebraicNumber>& coords) const;
};

SplitMap split_order_mod_p(const QuaternionOrderData& order, const PrimeIdealData& prime);

}  // namespace congrig
