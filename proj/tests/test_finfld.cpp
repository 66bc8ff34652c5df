// SPDX-License-Identifier: Apache-2.0
#include <random>
#include <set>

#include "congrig/errors.hpp"
#include "congrig/galois_ring.hpp"
#include "congrig/psl2.hpp"
#include "doctest.h"

using namespace congrig;

TEST_CASE("finite field axioms") {
  for (auto [p, f] : std::vector<std::pair<std::uint64_t, int>>{{3, 1}, {5, 1}, {3, 2}, {5, 2}, {7, 3}}) {
    auto F = FiniteField::get(p, f);
    std::uint64_t q = F->order();
    CHECK(q == static_cast<std::uint64_t>(int_pow(static_cast<std::int64_t>(p), f)));
    std::mt19937_64 rng(p * 10 + f);
    for (int i = 0; i < 200; ++i) {
      auto a = static_cast<FiniteField::Elem>(rng() % q), b = static_cast<FiniteField::Elem>(rng() % q);
      auto c = static_cast<FiniteField::Elem>(rng() % q);
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->frobenius(F->mul(a, b)) == F->mul(F->frobenius(a), F->frobenius(b)));
      CHECK(F->frobenius(a, f) == a);
      if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
      if (F->is_square(a)) CHECK(F->mul(F->sqrt(a), F->sqrt(a)) == a);
    }
  }
  CHECK_THROWS_AS(FiniteField::get(2, 1), PreconditionError);
  CHECK_THROWS_AS(FiniteField::get(9, 1), PreconditionError);
}

TEST_CASE("canonical representatives") {
  auto g = PSL2::over(5, 1);
  Mat2q a{0, 4, 1, 0}, b{0, 1, 4, 0};
  CHECK(g.canonical(a) == g.canonical(b));
  CHECK(g.canonical(a) == Mat2q{0, 1, 4, 0});
  CHECK(g.canonical(g.from_ints(-1, 0, 0, -1)) == g.identity());
}

TEST_CASE("group orders by closure") {
  std::vector<std::pair<std::pair<std::uint64_t, int>, std::uint64_t>> cases{
      {{5, 1}, 60}, {{7, 1}, 168}, {{3, 2}, 360}, {{11, 1}, 660}, {{13, 1}, 1092}};
  for (const auto& [pf, order] : cases) {
    auto g = PSL2::over(pf.first, pf.second);
    CHECK(psl2_order(g.q()) == order);
    CHECK(group_closure(g, standard_generators(g)).order == order);
  }
  auto g = PSL2::over(7, 1);
  CHECK_THROWS_AS(group_closure(g, standard_generators(g), 100), PreconditionError);
}

TEST_CASE("simplicity") {
  for (auto [p, f] : std::vector<std::pair<std::uint64_t, int>>{{5, 1}, {7, 1}, {3, 2}}) {
    auto cert = simplicity_certificate(PSL2::over(p, f));
    CHECK(cert.simple);
    CHECK(cert.group_order == psl2_order(int_pow(static_cast<std::int64_t>(p), f)));
  }
}

TEST_CASE("squared trace") {
  auto g = PSL2::over(7, 1);
  auto t = tr2_finite(g, g.from_ints(1, 1, 0, 1));
  CHECK(t.value == 4);
  auto g9 = PSL2::over(3, 2);
  auto F = g9.field();
  FiniteField::Elem x = F.generator_x();
  Mat2q m{x, 0, 0, F.inv(x)};
  auto t9 = tr2_finite(g9, m);
  FiniteField::Elem tr = F.add(x, F.inv(x));
  CHECK(t9.value == F.mul(tr, tr));
  CHECK(t9.orbit.size() <= 2);
  CHECK(std::find(t9.orbit.begin(), t9.orbit.end(), F.frobenius(t9.value)) != t9.orbit.end());
}

TEST_CASE("automorphism matching") {
  std::mt19937_64 rng(17);
  auto g7 = PSL2::over(7, 1);
  auto gens = standard_generators(g7);
  Mat2q c = g7.random_gl(rng);
  AutomorphismDescriptor alpha{0, c};
  std::vector<Mat2q> imgs;
  for (const auto& s : gens) imgs.push_back(apply_automorphism(g7, alpha, s));
  auto found = match_automorphism(g7, gens, imgs);
  REQUIRE(found);
  CHECK(found->frobenius_power == 0);
  for (const auto& s : gens) CHECK(apply_automorphism(g7, *found, s) == apply_automorphism(g7, alpha, s));

  auto g9 = PSL2::over(3, 2);
  auto gens9 = standard_generators(g9);
  AutomorphismDescriptor beta{1, g9.random_gl(rng)};
  std::vector<Mat2q> imgs9;
  for (const auto& s : gens9) imgs9.push_back(apply_automorphism(g9, beta, s));
  auto found9 = match_automorphism(g9, gens9, imgs9);
  REQUIRE(found9);
  CHECK(found9->frobenius_power == 1);
  for (int i = 0; i < 20; ++i) {
    Mat2q x = g9.random_element(rng);
    CHECK(apply_automorphism(g9, *found9, x) == apply_automorphism(g9, beta, x));
  }

  std::vector<Mat2q> bad = imgs;
  bad[0] = g7.identity();
  CHECK_FALSE(match_automorphism(g7, gens, bad).has_value());
}

TEST_CASE("epimorphisms from products") {
  std::mt19937_64 rng(23);
  auto g5 = PSL2::over(5, 1);
  auto g7 = PSL2::over(7, 1);
  auto gens5 = standard_generators(g5), gens7 = standard_generators(g7);

  // first projection onto PSL(2,5)
  std::vector<FactorImages> f1{{g5, gens5, gens5}, {g7, gens7, std::vector<Mat2q>(gens7.size(), g5.identity())}};
  auto e1 = factor_product_epimorphism(f1, g5);
  CHECK(e1.factor == 0);
  CHECK(e1.automorphism.frobenius_power == 0);

  // second projection twisted by an inner automorphism
  AutomorphismDescriptor alpha{0, g7.random_gl(rng)};
  std::vector<Mat2q> twisted;
  for (const auto& s : gens7) twisted.push_back(apply_automorphism(g7, alpha, s));
  auto g7b = PSL2::over(7, 1);
  std::vector<FactorImages> f2{{g7, gens7, std::vector<Mat2q>(gens7.size(), g7.identity())}, {g7b, gens7, twisted}};
  auto e2 = factor_product_epimorphism(f2, g7);
  CHECK(e2.factor == 1);
  for (const auto& s : gens7) CHECK(apply_automorphism(g7, e2.automorphism, s) == apply_automorphism(g7, alpha, s));

  // a target not isomorphic to any factor
  auto g11 = PSL2::over(11, 1);
  std::vector<FactorImages> f3{{g5, gens5, std::vector<Mat2q>(gens5.size(), g11.identity())}};
  CHECK_THROWS_AS(factor_product_epimorphism(f3, g11), PreconditionError);
}

TEST_CASE("integer lifting to higher precision") {
  std::set<IntMat2> preimages;
  for (std::int64_t a = 0; a < 5; ++a)
    for (std::int64_t b = 0; b < 5; ++b)
      for (std::int64_t c = 0; c < 5; ++c)
        for (std::int64_t d = 0; d < 5; ++d) {
          if ((a * d - b * c - 1) % 5 != 0) continue;
          IntMat2 l = sl2_lift({a, b, c, d}, 5, 1, 1);
          CHECK((l[0] * l[3] - l[1] * l[2] - 1) % 25 == 0);
          CHECK(l[0] % 5 == a);
          CHECK(l[3] % 5 == d);
        }
  // the fibre over the identity in SL(2, Z/25) has 125 elements
  for (std::int64_t a = 0; a < 25; ++a)
    for (std::int64_t b = 0; b < 25; b += 5)
      for (std::int64_t c = 0; c < 25; c += 5)
        for (std::int64_t d = 0; d < 25; ++d)
          if (a % 5 == 1 && d % 5 == 1 && ((a * d - b * c - 1) % 25 + 25) % 25 == 0) preimages.insert({a, b, c, d});
  CHECK(preimages.size() == 125);
}

TEST_CASE("Galois ring arithmetic") {
  GaloisRing r(3, 2, 2);
  CHECK(r.size() == 81);
  std::set<GaloisRing::Elem> fixed;
  for (std::uint64_t i = 0; i < r.size(); ++i) {
    auto a = r.element(i);
    CHECK(r.index_of(a) == i);
    CHECK(r.frobenius(r.frobenius(a)) == a);
    if (r.frobenius(a) == a) fixed.insert(a);
    for (std::uint64_t j = 0; j < r.size(); j += 7) {
      auto b = r.element(j);
      CHECK(r.frobenius(r.mul(a, b)) == r.mul(r.frobenius(a), r.frobenius(b)));
    }
    if (r.is_unit(a)) CHECK(r.mul(a, r.inverse(a)) == r.one());
  }
  // the fixed subring is Z/9
  CHECK(fixed.size() == 9);
}
