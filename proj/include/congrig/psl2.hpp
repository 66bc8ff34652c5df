// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "congrig/finite_field.hpp"

namespace congrig {

/// 2x2 matrix over F_q in row-major order (a, b, c, d).
using Mat2q = std::array<FiniteField::Elem, 4>;

/// PSL(2, q) as canonical representatives of {M, -M}.
class PSL2 {
 public:
  explicit PSL2(FieldRef field);
  static PSL2 over(std::uint64_t p, int f) { return PSL2(FiniteField::get(p, f)); }

  const FiniteField& field() const { return *field_; }
  const FieldRef& field_ref() const { return field_; }
  std::uint64_t q() const { return field_->order(); }

  /// Requires det M = 1. The first nonzero entry x of the result satisfies
  /// enc(x) < enc(-x).
  Mat2q canonical(const Mat2q& m) const;
  Mat2q identity() const { return {1, 0, 0, 1}; }
  Mat2q mul(const Mat2q& a, const Mat2q& b) const;
  Mat2q inverse(const Mat2q& a) const;
  Mat2q power(const Mat2q& a, std::int64_t e) const;
  bool is_identity(const Mat2q& a) const { return canonical(a) == identity(); }
  Mat2q from_ints(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) const;
  std::uint64_t key(const Mat2q& a) const;

  // GL(2, q) helpers on raw (non-canonical) matrices.
  Mat2q raw_mul(const Mat2q& a, const Mat2q& b) const;
  FiniteField::Elem det(const Mat2q& a) const;
  FiniteField::Elem trace(const Mat2q& a) const;
  Mat2q gl_inverse(const Mat2q& a) const;
  Mat2q frobenius(const Mat2q& a, int e) const;

  Mat2q random_element(std::mt19937_64& rng) const;
  Mat2q random_gl(std::mt19937_64& rng) const;
  std::string to_string(const Mat2q& a) const;

 private:
  FieldRef field_;
};

/// (1/2) q (q^2 - 1).
std::uint64_t psl2_order(std::uint64_t q);

inline constexpr std::uint64_t kClosureCap = 1000000;

struct ClosureResult {
  std::uint64_t order = 0;
  std::vector<Mat2q> elements;
};

/// Breadth-first closure; throws PreconditionError past `cap` elements.
ClosureResult group_closure(const PSL2& g, const std::vector<Mat2q>& generators, std::uint64_t cap = kClosureCap);

/// [[1,1],[0,1]], [[0,-1],[1,0]] and, for f > 1, [[1,x],[0,1]]; they generate PSL(2, q).
std::vector<Mat2q> standard_generators(const PSL2& g);

struct SimplicityCertificate {
  bool simple = false;
  std::size_t classes = 0;
  std::uint64_t group_order = 0;
};

/// Checks that every nontrivial conjugacy class normally generates the whole group.
SimplicityCertificate simplicity_certificate(const PSL2& g);

struct Tr2Value {
  FiniteField::Elem value = 0;
  /// Frobenius orbit of the value, increasing encoding.
  std::vector<FiniteField::Elem> orbit;
};
Tr2Value tr2_finite(const PSL2& g, const Mat2q& m);

/// alpha(x) = C * phi^e(x) * C^-1 with C in GL(2, q), phi the p-power map.
struct AutomorphismDescriptor {
  int frobenius_power = 0;
  Mat2q conjugator{1, 0, 0, 1};
};

Mat2q apply_automorphism(const PSL2& g, const AutomorphismDescriptor& alpha, const Mat2q& m);
std::optional<AutomorphismDescriptor> match_automorphism(const PSL2& g, const std::vector<Mat2q>& h1,
                                                         const std::vector<Mat2q>& h2);

/// Generators of one factor PSL(2, q_j) and their images in the target.
struct FactorImages {
  PSL2 group;
  std::vector<Mat2q> generators;
  std::vector<Mat2q> images;
};

struct EpimorphismFactor {
  std::size_t factor = 0;  // zero-based
  AutomorphismDescriptor automorphism;
};

EpimorphismFactor factor_product_epimorphism(const std::vector<FactorImages>& factors, const PSL2& target);

/// Integer 2x2 matrix (a, b, c, d).
using IntMat2 = std::array<std::int64_t, 4>;

/// Lifts M with det M = 1 mod p^r to a matrix over Z/p^(r+s) with det exactly 1
/// that reduces to M.
IntMat2 sl2_lift(const IntMat2& m, std::uint64_t p, int r, int s);

std::int64_t mod_inverse_i64(std::int64_t a, std::int64_t n);

}  // namespace congrig
