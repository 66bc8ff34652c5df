// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace congrig {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "n" or "n/d" (optionally signed). Throws PreconditionError.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }
Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);
int sign_of(const Rational& r);

/// Value of r modulo m for r with denominator prime to m. Throws if not invertible.
std::int64_t rational_mod(const Rational& r, std::int64_t m);

/// Closed rational interval.
struct Interval {
  Rational lo;
  Rational hi;

  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool overlaps(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
  bool inside(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& s, const Interval& a);

/// Prime factorization of |n| (trial division then Pollard rho).
std::vector<Integer> prime_factors(Integer n);
bool is_prime(std::int64_t n);
std::int64_t int_pow(std::int64_t base, unsigned exp);

}  // namespace congrig
