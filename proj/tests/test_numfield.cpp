// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "congrig/errors.hpp"
#include "congrig/linalg.hpp"
#include "congrig/number_field.hpp"
#include "congrig/prime_ideal.hpp"
#include "congrig/subfield.hpp"
#include "doctest.h"

using namespace congrig;

namespace {

FieldPtr sqrt_field(long n) { return NumberField::create(QPoly{-n, 0, 1}, {0, n + 1}); }
FieldPtr golden_field() { return NumberField::create(QPoly{-1, -1, 1}, {1, 2}); }

AlgebraicNumber random_element(const FieldPtr& k, std::mt19937_64& rng, bool integral) {
  std::vector<Rational> c(k->degree());
  for (auto& x : c) {
    long num = static_cast<long>(rng() % 21) - 10;
    long den = integral ? 1 : static_cast<long>(rng() % 5) + 1;
    x = Rational(num, den);
    x.canonicalize();
  }
  return AlgebraicNumber(k, c);
}

}  // namespace

TEST_CASE("field creation") {
  auto q = NumberField::create(QPoly{-1, 1}, {0, 2});
  CHECK(q->degree() == 1);

  auto k = sqrt_field(5);
  CHECK(k->degree() == 2);
  CHECK(k->embedding_count() == 2);
  const auto& iv = k->selector();
  CHECK(iv.lo > 2);
  CHECK(iv.lo * iv.lo <= 5);
  CHECK(iv.hi * iv.hi >= 5);
  CHECK(k->discriminant() == 20);

  CHECK_THROWS_AS(NumberField::create(QPoly{2, -2, 1}, {-10, 10}), PreconditionError);
  CHECK_THROWS_AS(NumberField::create(QPoly{-1, 0, 1}, {0, 2}), PreconditionError);
  CHECK_THROWS_AS(NumberField::create(QPoly{-5, 0, 1}, {-3, 3}), PreconditionError);
  CHECK_THROWS_AS(NumberField::create(QPoly{-5, 0, 1}, {3, 4}), PreconditionError);
  CHECK_THROWS_AS(NumberField::create(QPoly{-5, 0, 2}, {1, 2}), PreconditionError);

  // irreducible over Q yet reducible modulo every prime
  auto k4 = NumberField::create(QPoly{1, 0, -10, 0, 1}, {3, 4});
  CHECK(k4->degree() == 4);
}

TEST_CASE("arithmetic") {
  auto k = golden_field();
  AlgebraicNumber phi = AlgebraicNumber::generator(k);
  AlgebraicNumber one(k, Rational(1));
  CHECK(phi * phi == phi + one);
  CHECK(phi + AlgebraicNumber(k, Rational(0)) == phi);

  auto k5 = sqrt_field(5);
  AlgebraicNumber r5 = AlgebraicNumber::generator(k5);
  CHECK(r5.inverse() == Rational(1, 5) * r5);
  CHECK_THROWS_AS(AlgebraicNumber(k5, Rational(0)).inverse(), PreconditionError);
  CHECK_THROWS_AS(r5 + phi, PreconditionError);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto a = random_element(k5, rng, false);
    if (a.is_zero()) continue;
    CHECK(a * a.inverse() == AlgebraicNumber(k5, Rational(1)));
  }
}

TEST_CASE("characteristic polynomials") {
  auto k = golden_field();
  CHECK(char_poly(AlgebraicNumber::generator(k)) == QPoly{-1, -1, 1});
  auto k4 = NumberField::create(QPoly{1, 0, -10, 0, 1}, {3, 4});
  CHECK(char_poly(AlgebraicNumber(k4, Rational(4))) == poly_pow(QPoly{-4, 1}, 4));
  auto q = NumberField::rationals();
  CHECK(char_poly(AlgebraicNumber(q, Rational(3, 7))) == QPoly(std::vector<Rational>{Rational(-3, 7), 1}));
}

TEST_CASE("trace of products matches the multiplication matrices") {
  auto k4 = NumberField::create(QPoly{1, 0, -10, 0, 1}, {3, 4});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto a = random_element(k4, rng, false), b = random_element(k4, rng, false);
    auto ma = multiplication_matrix(a), mb = multiplication_matrix(b);
    Rational tr = 0;
    for (std::size_t r = 0; r < ma.size(); ++r)
      for (std::size_t s = 0; s < ma.size(); ++s) tr += ma[r][s] * mb[s][r];
    QPoly c = char_poly(a * b);
    CHECK(tr == -c.coeff(c.degree() - 1));
    CHECK(field_trace(a * b) == tr);
  }
}

TEST_CASE("signs and absolute values") {
  auto k5 = sqrt_field(5);
  AlgebraicNumber r5 = AlgebraicNumber::generator(k5);
  int other = 1 - k5->distinguished();
  CHECK(sign_at(r5, other) == -1);
  CHECK(sign(r5) == 1);
  CHECK(sign_at(AlgebraicNumber(k5, Rational(0)), 0) == 0);

  auto k2 = sqrt_field(2);
  AlgebraicNumber t = Rational(2) * AlgebraicNumber::generator(k2);
  CHECK(compare_abs(t, t, 1, 0) == std::strong_ordering::equal);
  AlgebraicNumber u = t + AlgebraicNumber(k2, Rational(1));
  CHECK(compare_abs(u, u, 0, 1) == std::strong_ordering::less);
}

TEST_CASE("sign is stable under refinement depth") {
  auto k4 = NumberField::create(QPoly{1, 0, -10, 0, 1}, {3, 4});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    auto a = random_element(k4, rng, false);
    for (int e = 0; e < 4; ++e) {
      int s = sign_at(a, e);
      Rational w(1, 4);
      for (int depth = 0; depth < 6; ++depth, w /= 64) {
        Interval v = a.enclosure(e, w);
        if (v.lo > 0) CHECK(s == 1);
        if (v.hi < 0) CHECK(s == -1);
      }
    }
  }
}

TEST_CASE("totally real and integral") {
  auto k = golden_field();
  auto f = is_totally_real_integral(AlgebraicNumber::generator(k));
  CHECK(f.totally_real);
  CHECK(f.integral);
  CHECK_FALSE(is_totally_real_integral(AlgebraicNumber(NumberField::rationals(), Rational(1, 2))).integral);
  auto k5 = sqrt_field(5);
  CHECK_FALSE(is_totally_real_integral(Rational(1, 2) * AlgebraicNumber::generator(k5)).integral);
}

TEST_CASE("prime factorization") {
  auto k5 = sqrt_field(5);
  auto p11 = factor_prime(k5, 11);
  REQUIRE(p11.size() == 2);
  CHECK(p11[0].residue_degree == 1);
  CHECK(p11[1].residue_degree == 1);
  auto p3 = factor_prime(k5, 3);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].residue_degree == 2);
  auto q7 = factor_prime(NumberField::rationals(), 7);
  REQUIRE(q7.size() == 1);
  CHECK(q7[0].residue_degree == 1);
  CHECK_THROWS_AS(factor_prime(k5, 5), PreconditionError);
  CHECK_THROWS_AS(factor_prime(k5, 2), PreconditionError);
}

TEST_CASE("residue reduction") {
  auto k5 = sqrt_field(5);
  AlgebraicNumber r5 = AlgebraicNumber::generator(k5);
  AlgebraicNumber phi = Rational(1, 2) * (r5 + AlgebraicNumber(k5, Rational(1)));
  const PrimeIdealData* at4 = nullptr;
  auto primes = factor_prime(k5, 11);
  for (const auto& p : primes)
    if (p.local_factor == FpPoly(11, {7, 1})) at4 = &p;
  REQUIRE(at4 != nullptr);
  CHECK(residue_reduce(phi, *at4) == 8);
  CHECK(residue_reduce(AlgebraicNumber(k5, Rational(-30)), *at4) == 3);
  CHECK_THROWS_AS(residue_reduce(AlgebraicNumber(k5, Rational(1, 11)), *at4), PreconditionError);

  std::mt19937_64 rng(5);
  auto k4 = NumberField::create(QPoly{1, 0, -10, 0, 1}, {3, 4});
  for (std::uint64_t p : {7ull, 13ull, 23ull}) {
    for (const auto& P : factor_prime(k4, p)) {
      const auto& F = *P.residue_field;
      for (int i = 0; i < 100; ++i) {
        auto a = random_element(k4, rng, true), b = random_element(k4, rng, true);
        CHECK(residue_reduce(a + b, P) == F.add(residue_reduce(a, P), residue_reduce(b, P)));
        CHECK(residue_reduce(a * b, P) == F.mul(residue_reduce(a, P), residue_reduce(b, P)));
      }
    }
  }
}

TEST_CASE("residue degrees sum to the field degree") {
  std::vector<FieldPtr> fields{NumberField::rationals(), sqrt_field(5), golden_field(),
                               NumberField::create(QPoly{1, 0, -10, 0, 1}, {3, 4})};
  for (const auto& k : fields)
    for (std::uint64_t p = 3; p <= 100; p += 2) {
      if (!is_good_prime(k, p)) continue;
      int total = 0;
      for (const auto& P : factor_prime(k, p)) total += P.residue_degree;
      CHECK(total == k->degree());
    }
}

TEST_CASE("compositum and subfields") {
  auto c = compositum(sqrt_field(2), sqrt_field(3));
  CHECK(c.field->degree() == 4);
  CHECK(c.first * c.first == AlgebraicNumber(c.field, Rational(2)));
  CHECK(c.second * c.second == AlgebraicNumber(c.field, Rational(3)));
  CHECK(sign(c.first) == 1);
  CHECK(sign(c.second) == 1);

  auto c3 = compositum(c.field, sqrt_field(5));
  CHECK(c3.field->minpoly() == QPoly{576, 0, -960, 0, 352, 0, -40, 0, 1});
  CHECK_THROWS_AS(compositum(sqrt_field(2), NumberField::create(QPoly{-8, 0, 1}, {2, 3})), PreconditionError);

  auto l = c3.field;
  AlgebraicNumber r2 = map_element(c.first, c3.first), r3 = map_element(c.second, c3.first), r5 = c3.second;
  auto sub15 = generated_subfield(l, {r3 * r5});
  CHECK(sub15.field()->minpoly() == QPoly{-15, 0, 1});
  auto sub5 = generated_subfield(l, {r5});
  CHECK(sub5.field()->minpoly() == QPoly{-1, -1, 1});
  CHECK(sign(sub5.generator_in_ambient()) == 1);
  CHECK(sub5.contains(r5));
  CHECK_FALSE(sub5.contains(r2));
  auto back = sub5.to_sub(r5);
  CHECK(sub5.to_ambient(back) == r5);
  auto q = generated_subfield(l, {AlgebraicNumber(l, Rational(3))});
  CHECK(q.degree() == 1);
  auto big = generated_subfield(l, {r3, r5});
  CHECK(big.degree() == 4);
  CHECK(big.contains(r3 * r5));
}
