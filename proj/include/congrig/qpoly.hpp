// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "congrig/rational.hpp"

namespace congrig {

/// Dense univariate polynomial over Q, coefficients stored low degree first.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  QPoly(std::initializer_list<long> coeffs);

  static QPoly constant(const Rational& c);
  static QPoly monomial(const Rational& c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return c_.back(); }

  QPoly monic() const;
  QPoly derivative() const;
  Rational eval(const Rational& x) const;
  Interval eval(const Interval& x) const;
  bool has_integer_coeffs() const;
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  QPoly operator-() const;
  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rational& s, const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly poly_gcd(QPoly a, QPoly b);
QPoly poly_pow(const QPoly& a, unsigned e);
/// Product of the distinct monic irreducible factors of f.
QPoly squarefree_part(const QPoly& f);

// Real root machinery. All functions expect a squarefree polynomial.

std::vector<QPoly> sturm_sequence(const QPoly& f);
/// Number of distinct real roots in the half-open interval (a, b].
int count_roots(const std::vector<QPoly>& sturm, const Rational& a, const Rational& b);
/// Number of distinct real roots in the closed interval.
int count_roots_closed(const QPoly& f, const Interval& iv);
/// Disjoint isolating intervals in increasing order. A point interval marks an
/// exact rational root; otherwise f has opposite nonzero signs at the endpoints.
std::vector<Interval> isolate_real_roots(const QPoly& f);
/// Shrinks an isolating interval (as produced above) by bisection until its
/// width is at most `width`.
void refine_root(const QPoly& f, Interval& iv, const Rational& width);
/// One bisection step on an isolating interval.
void bisect_root(const QPoly& f, Interval& iv);

/// For monic integer f whose roots are all real and simple: a monic integer
/// factor of degree between 1 and deg(f)/2, or nullopt when f is irreducible.
std::optional<QPoly> find_integer_factor_real_rooted(const QPoly& f);

}  // namespace congrig
