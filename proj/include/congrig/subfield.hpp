// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "congrig/number_field.hpp"

namespace congrig {

/// A field L = Q(gamma) containing K1 and K2, with the images of their generators.
struct Compositum {
  FieldPtr field;
  AlgebraicNumber first;   // image of theta_1
  AlgebraicNumber second;  // image of theta_2
  long multiplier;         // gamma = theta_1 + multiplier * theta_2
};

/// Compositum of two linearly disjoint fields; the distinguished embedding of
/// the result restricts to the distinguished embeddings of both inputs.
Compositum compositum(const FieldPtr& k1, const FieldPtr& k2, const std::string& name = "");

/// Image of a under the field map sending theta to `theta_image`.
AlgebraicNumber map_element(const AlgebraicNumber& a, const AlgebraicNumber& theta_image);

/// A subfield k of a field L together with the embedding k -> L.
class Subfield {
 public:
  Subfield() = default;
  Subfield(FieldPtr k, AlgebraicNumber generator_in_l);

  const FieldPtr& field() const { return k_; }
  const FieldPtr& ambient() const { return generator_in_l_.field(); }
  int degree() const { return k_->degree(); }
  const AlgebraicNumber& generator_in_ambient() const { return generator_in_l_; }

  bool contains(const AlgebraicNumber& x) const;
  /// Coordinates of x in k; throws PreconditionError when x is not in k.
  AlgebraicNumber to_sub(const AlgebraicNumber& x) const;
  std::optional<AlgebraicNumber> try_to_sub(const AlgebraicNumber& x) const;
  AlgebraicNumber to_ambient(const AlgebraicNumber& a) const;

 private:
  FieldPtr k_;
  AlgebraicNumber generator_in_l_;
  std::vector<std::vector<Rational>> power_columns_;
};

/// The subfield of L generated over Q by the given elements. A quadratic
/// result is presented as Q(sqrt D) or Q((1+sqrt D)/2) so that Z[theta] is
/// the full ring of integers; rational results are Q itself.
Subfield generated_subfield(const FieldPtr& l, const std::vector<AlgebraicNumber>& elements,
                            const std::string& name = "");

/// Squarefree integer D with Q(sqrt D) = k, for quadratic k.
Integer quadratic_discriminant_root(const FieldPtr& k);

}  // namespace congrig
