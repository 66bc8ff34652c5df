// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "congrig/qpoly.hpp"

namespace congrig {

/// Polynomial over the prime field F_p (p < 2^31), coefficients low degree first.
class FpPoly {
 public:
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
  static FpPoly from_qpoly(const QPoly& f, std::uint64_t p);
  static FpPoly x(std::uint64_t p) { return FpPoly(p, {0, 1}); }

  std::uint64_t prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t coeff(int i) const { return i <= degree() ? c_[i] : 0; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

  FpPoly monic() const;
  FpPoly derivative() const;
  std::uint64_t eval(std::uint64_t x) const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  /// Deterministic total order: degree, then coefficients from the top.
  friend bool operator<(const FpPoly& a, const FpPoly& b);

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t m);

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly poly_gcd(FpPoly a, FpPoly b);
FpPoly powmod(const FpPoly& base, const Integer& exp, const FpPoly& modulus);

bool is_irreducible(const FpPoly& f);
bool is_squarefree(const FpPoly& f);
/// Monic irreducible factors of a squarefree polynomial, sorted.
std::vector<FpPoly> factor_squarefree(const FpPoly& f);

}  // namespace congrig
