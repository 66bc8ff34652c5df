// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "congrig/fp_poly.hpp"

namespace congrig {

/// F_q with q = p^f, p odd. An element is encoded as the integer
/// sum c_i p^i of its coefficient vector over the fixed modulus; the encoding
/// order is the total order used for canonical representatives.
class FiniteField {
 public:
  using Elem = std::uint32_t;

  /// Shared canonical instance; throws PreconditionError for p = 2, p not
  /// prime, or q above the table limit.
  static std::shared_ptr<const FiniteField> get(std::uint64_t p, int f);
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  std::uint64_t characteristic() const { return p_; }
  int degree() const { return f_; }
  std::uint64_t order() const { return q_; }
  /// Lexicographically least monic irreducible polynomial of degree f.
  const FpPoly& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t n) const;
  Elem from_coeffs(const std::vector<std::uint64_t>& c) const;
  std::vector<std::uint64_t> coeffs(Elem a) const;
  /// Image of x (the class of the polynomial variable).
  Elem generator_x() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a, int times = 1) const;
  bool is_square(Elem a) const;
  /// Some square root of a square; the smaller encoding of the pair.
  Elem sqrt(Elem a) const;
  /// Evaluates a polynomial over F_p at an element of F_q.
  Elem eval(const FpPoly& g, Elem x) const;
  /// Roots in F_q of a polynomial over F_p, increasing encoding.
  std::vector<Elem> roots(const FpPoly& g) const;

  std::string to_string(Elem a) const;

 private:
  FiniteField(std::uint64_t p, int f);
  Elem slow_mul(Elem a, Elem b) const;

  std::uint64_t p_;
  int f_;
  std::uint64_t q_;
  FpPoly modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldRef = std::shared_ptr<const FiniteField>;

}  // namespace congrig
