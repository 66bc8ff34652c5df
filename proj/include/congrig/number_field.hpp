// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "congrig/qpoly.hpp"
#include "congrig/rational.hpp"

namespace congrig {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// A totally real number field Q(theta) = Q[x]/(minpoly) together with a
/// distinguished real embedding (the "identity" embedding). Embeddings are
/// indexed by the real roots of minpoly in increasing order.
class NumberField {
 public:
  /// Validates minpoly (monic, integral, irreducible, all roots real) and
  /// picks the unique root inside the closed interval `root_selector`.
  static FieldPtr create(const QPoly& minpoly, const Interval& root_selector, std::string name = "");
  /// Q presented as Q[x]/(x).
  static FieldPtr rationals();

  /// Same field with embedding `index` promoted to the distinguished one.
  FieldPtr with_distinguished(int index) const;

  const QPoly& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  bool totally_real() const { return true; }
  int distinguished() const { return distinguished_; }
  int embedding_count() const { return static_cast<int>(roots_.size()); }
  /// Isolating interval of the root defining embedding `index`.
  const Interval& root_interval(int index) const { return roots_.at(index); }
  const Interval& selector() const { return roots_.at(distinguished_); }
  const Integer& discriminant() const { return disc_; }
  const std::string& name() const { return name_; }
  bool is_rationals() const { return degree() == 1; }

  /// Coordinates of x^(d+k) in the power basis, k = 0..d-2.
  const std::vector<std::vector<Rational>>& reduction_table() const { return reduction_; }

  bool same_as(const NumberField& other) const;

 private:
  NumberField() = default;
  void build_tables();

  QPoly minpoly_;
  std::vector<Interval> roots_;
  int distinguished_ = 0;
  Integer disc_;
  std::string name_;
  std::vector<std::vector<Rational>> reduction_;
};

/// Exact element of a NumberField in the power basis 1, theta, ..., theta^(d-1).
class AlgebraicNumber {
 public:
  AlgebraicNumber() = default;
  AlgebraicNumber(FieldPtr field, std::vector<Rational> coords);
  AlgebraicNumber(FieldPtr field, const Rational& value);
  static AlgebraicNumber generator(FieldPtr field);
  static AlgebraicNumber from_poly(FieldPtr field, const QPoly& p);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;
  QPoly as_poly() const { return QPoly(coords_); }

  AlgebraicNumber operator-() const;
  AlgebraicNumber inverse() const;
  AlgebraicNumber pow(long e) const;
  friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator*(const Rational& s, const AlgebraicNumber& a);
  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);
  AlgebraicNumber& operator+=(const AlgebraicNumber& o) { return *this = *this + o; }
  AlgebraicNumber& operator-=(const AlgebraicNumber& o) { return *this = *this - o; }
  AlgebraicNumber& operator*=(const AlgebraicNumber& o) { return *this = *this * o; }

  /// Enclosure of sigma_i(a) of width at most `width`.
  Interval enclosure(int embedding, const Rational& width) const;
  double approx(int embedding) const;
  /// Polynomial expression in `var`, e.g. "1/2 + 1/2*t".
  std::string to_string(const std::string& var = "t") const;

 private:
  FieldPtr field_;
  std::vector<Rational> coords_;
};

void require_same_field(const AlgebraicNumber& a, const AlgebraicNumber& b);

/// Matrix of multiplication by a in the power basis (column j = a * theta^j).
std::vector<std::vector<Rational>> multiplication_matrix(const AlgebraicNumber& a);
QPoly matrix_char_poly(const std::vector<std::vector<Rational>>& a);

/// Characteristic polynomial of multiplication-by-a over Q (degree d).
QPoly char_poly(const AlgebraicNumber& a);
/// Minimal polynomial of a over Q.
QPoly min_poly(const AlgebraicNumber& a);
Rational field_trace(const AlgebraicNumber& a);
Rational field_norm(const AlgebraicNumber& a);

/// Exact sign of sigma_i(a).
int sign_at(const AlgebraicNumber& a, int embedding);
/// Sign of sigma_i(a) at the distinguished embedding.
int sign(const AlgebraicNumber& a);
/// Compares |sigma_i(a)| with |sigma_j(b)|; equality decided symbolically.
std::strong_ordering compare_abs(const AlgebraicNumber& a, const AlgebraicNumber& b, int i, int j);

struct RealIntegralFlags {
  bool totally_real;
  bool integral;
};
RealIntegralFlags is_totally_real_integral(const AlgebraicNumber& a);

}  // namespace congrig
