// SPDX-License-Identifier: Apache-2.0
#include <map>
#include <random>

#include "congrig/builtins.hpp"
#include "congrig/errors.hpp"
#include "congrig/quaternion_order.hpp"
#include "congrig/reduction.hpp"
#include "congrig/rigidity.hpp"
#include "doctest.h"

using namespace congrig;

namespace {

const QuaternionOrderData& cached_order(const std::string& name) {
  static std::map<std::string, QuaternionOrderData> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, order_basis(builtin_group(name))).first;
  return it->second;
}

PrimeIdealData rational_prime(std::uint64_t p) { return factor_prime(NumberField::rationals(), p).at(0); }

}  // namespace

TEST_CASE("order of the modular group") {
  const auto& o = cached_order("modular");
  CHECK(o.k.degree() == 1);
  CHECK(o.bad_primes == std::vector<std::uint64_t>{2, 3});
  CHECK(o.discriminant_norm == 1);
  auto q = NumberField::rationals();
  // the order is M(2, Z): integral matrices are inside, halves are not
  for (auto m : {Mat2::from_rationals(q, 1, 0, 0, 0), Mat2::from_rationals(q, 0, 1, 0, 0),
                 Mat2::from_rationals(q, 0, 0, 1, 0), Mat2::from_rationals(q, 0, 0, 0, 1)})
    CHECK(o.coords_of(m).has_value());
  CHECK_FALSE(o.coords_of(Mat2::from_rationals(q, Rational(1, 2), 0, 0, 0)).has_value());
  for (const auto& b : o.basis)
    for (const auto& e : b.entries()) CHECK(is_integer(e.rational_value()));
}

TEST_CASE("orders are closed and contain the group") {
  std::mt19937_64 rng(0x0bde);
  for (const char* name : {"modular", "takeuchi-A2", "takeuchi-B2", "conj-sqrt2-demo"}) {
    CAPTURE(name);
    auto rep = builtin_group(name);
    const auto& o = cached_order(name);
    for (const auto& g : rep.generators) {
      CHECK(o.coords_of(g).has_value());
      CHECK(o.coords_of(g.adjugate()).has_value());
    }
    for (int i = 0; i < 40; ++i) CHECK(o.coords_of(word_matrix(rep, random_word(rep.rank(), 5, rng))).has_value());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (const auto& c : o.mult[i][j])
          for (const auto& x : c.coords()) CHECK(is_integer(x));
    CHECK(o.is_bad(2));
    CHECK(o.is_bad(3));
  }
  CHECK(cached_order("takeuchi-A2").is_bad(5));
}

TEST_CASE("unsupported base fields") {
  auto k = NumberField::create(QPoly{-10, 0, 1}, Interval{3, 4});
  AlgebraicNumber r(k, std::vector<Rational>{0, 1});
  AlgebraicNumber one(k, Rational(1)), zero(k, Rational(0));
  Mat2 a{one + r, one, -one, zero};
  Mat2 b{one, one, zero, one};
  auto rep = load_group(k, {a, b}, {"a", "b"});
  CHECK_THROWS_AS(order_basis(rep), PreconditionError);
  CHECK_THROWS_AS(order_basis(builtin_group("takeuchi-A")), PreconditionError);
}

TEST_CASE("residue splitting") {
  const auto& o = cached_order("modular");
  auto split = split_order_mod_p(o, rational_prime(5));
  PSL2 g = PSL2::over(5, 1);
  for (int i = 0; i < 4; ++i) {
    const Mat2& b = o.basis[i];
    auto img = split.images[i];
    CHECK(g.trace(img) == g.field().from_int(rational_mod(b.trace().rational_value(), 5)));
    CHECK(g.det(img) == g.field().from_int(rational_mod(b.det().rational_value(), 5)));
  }
  CHECK_THROWS_AS(split_order_mod_p(o, factor_prime(NumberField::rationals(), 3).at(0)), PreconditionError);
  auto split7 = split_order_mod_p(cached_order("takeuchi-A2"), rational_prime(7));
  CHECK(split7.images.size() == 4);
}

TEST_CASE("reduction homomorphisms") {
  auto modular = builtin_group("modular");
  auto h = reduction_hom(modular, cached_order("modular"), rational_prime(5));
  REQUIRE(h.surjective.has_value());
  CHECK(*h.surjective);
  CHECK(h.image_order == 60);
  for (const auto& r : modular.relators) CHECK(h.group.is_identity(h.image_of(r)));

  auto a2 = builtin_group("takeuchi-A2");
  auto h7 = reduction_hom(a2, cached_order("takeuchi-A2"), rational_prime(7));
  CHECK(h7.surjective.value_or(false));
  CHECK(h7.image_order == 168);
  for (const auto& r : a2.relators) CHECK(h7.group.is_identity(h7.image_of(r)));
  CHECK_THROWS_AS(reduction_hom(modular, cached_order("modular"), rational_prime(3)), PreconditionError);
}

TEST_CASE("reductions are homomorphisms") {
  std::mt19937_64 rng(0x4011);
  for (const char* name : {"modular", "takeuchi-B2", "conj-sqrt2-demo"}) {
    CAPTURE(name);
    auto rep = builtin_group(name);
    const auto& o = cached_order(name);
    for (std::uint64_t p : {7ull, 11ull}) {
      if (o.is_bad(p)) continue;
      for (const auto& prime : factor_prime(o.k.field(), p)) {
        auto h = reduction_hom(rep, o, prime);
        for (int i = 0; i < 20; ++i) {
          Word x = random_word(rep.rank(), 1 + rng() % 6, rng), y = random_word(rep.rank(), 1 + rng() % 6, rng);
          CHECK(h.image_of(concat_words(x, y)) == h.group.canonical(h.group.mul(h.image_of(x), h.image_of(y))));
          // the same image computed from the order coordinates of the product
          Mat2q direct = reduce_element(o, h.split, word_matrix(rep, concat_words(x, y)));
          CHECK(h.group.canonical(direct) == h.image_of(concat_words(x, y)));
        }
      }
    }
  }
}

TEST_CASE("principal congruence subgroups") {
  auto modular = builtin_group("modular");
  const auto& o = cached_order("modular");
  auto p5 = rational_prime(5);
  CHECK(in_congruence_subgroup(modular, o, p5, Word{}));
  CHECK_FALSE(in_congruence_subgroup(modular, o, p5, parse_word("T", modular.labels)));
  CHECK(in_congruence_subgroup(modular, o, p5, parse_word("T^5", modular.labels)));
  auto h = reduction_hom(modular, o, p5);
  std::mt19937_64 rng(0xc0c0);
  int inside = 0;
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(2, 1 + rng() % 10, rng);
    if (i % 4 == 0) w = concat_words(w, concat_words(parse_word("T^5", modular.labels), inverse_word(w)));
    bool member = in_congruence_subgroup(modular, o, p5, w);
    CHECK(member == h.group.is_identity(h.image_of(w)));
    inside += member;
  }
  CHECK(inside >= 50);
}

TEST_CASE("identifying quotients") {
  auto modular = builtin_group("modular");
  const auto& o = cached_order("modular");
  auto h = reduction_hom(modular, o, rational_prime(5));
  auto id = identify_quotient(modular, o, h.group, h.images);
  CHECK(id.prime.p == 5);

  std::mt19937_64 rng(0x1de7);
  auto a2 = builtin_group("takeuchi-A2");
  auto h7 = reduction_hom(a2, cached_order("takeuchi-A2"), rational_prime(7));
  Mat2q c = h7.group.random_gl(rng);
  std::vector<Mat2q> twisted;
  for (const auto& m : h7.images)
    twisted.push_back(h7.group.canonical(h7.group.raw_mul(h7.group.raw_mul(c, m), h7.group.gl_inverse(c))));
  auto id7 = identify_quotient(a2, cached_order("takeuchi-A2"), h7.group, twisted);
  CHECK(id7.prime.p == 7);
  for (std::size_t i = 0; i < twisted.size(); ++i)
    CHECK(apply_automorphism(h7.group, id7.automorphism, h7.images[i]) == twisted[i]);

  // the two primes above 7 in Q(sqrt 2) are told apart
  auto demo = builtin_group("conj-sqrt2-demo");
  const auto& od = cached_order("conj-sqrt2-demo");
  auto primes = factor_prime(od.k.field(), 7);
  REQUIRE(primes.size() == 2);
  for (const auto& prime : primes) {
    auto hp = reduction_hom(demo, od, prime);
    auto got = identify_quotient(demo, od, hp.group, hp.images);
    CHECK(got.prime.to_string() == prime.to_string());
    CHECK(got.candidates_checked == 2);
  }

  // a homomorphism that is not a reduction of this group
  std::vector<Mat2q> wrong{h.group.from_ints(1, 1, 0, 1), h.group.from_ints(1, 1, 0, 1)};
  CHECK_THROWS_AS(identify_quotient(modular, o, h.group, wrong), NegativeResult);
}

TEST_CASE("congruence spectra") {
  auto spec = congruence_spectrum(builtin_group("modular"), cached_order("modular"), 31);
  for (const auto& e : spec.entries) {
    if (e.p <= 3) {
      CHECK_FALSE(e.good);
      continue;
    }
    CHECK(e.good);
    CHECK(e.residue_degrees == std::vector<int>{1});
    CHECK(e.surjective.at(0).value_or(false));
  }
  auto demo = congruence_spectrum(builtin_group("conj-sqrt2-demo"), cached_order("conj-sqrt2-demo"), 31);
  auto rec = reconstruct_field_data(demo);
  CHECK(rec.degree == 2);
  CHECK(rec.consistent);
  for (const auto& e : demo.entries) {
    if (!e.good) continue;
    int sum = 0;
    for (int f : e.residue_degrees) sum += f;
    CHECK(sum == 2);
    // p splits in Q(sqrt 2) exactly when p = +-1 mod 8
    bool split = e.p % 8 == 1 || e.p % 8 == 7;
    CHECK(e.residue_degrees.size() == (split ? 2u : 1u));
  }
  auto rq = reconstruct_field_data(spec, spec);
  CHECK(rq.degree == 1);
  CHECK(rq.same_splitting.value_or(false));
}

TEST_CASE("splitting reconstruction on a synthetic quadratic spectrum") {
  SpectrumReport synthetic;
  synthetic.p_max = 100;
  for (std::uint64_t p = 7; p <= 100; ++p) {
    if (!is_prime(static_cast<std::int64_t>(p))) continue;
    SpectrumEntry e;
    e.p = p;
    e.good = true;
    if (p % 5 == 1 || p % 5 == 4)
      e.residue_degrees = {1, 1};
    else
      e.residue_degrees = {2};
    synthetic.entries.push_back(e);
  }
  auto rec = reconstruct_field_data(synthetic);
  CHECK(rec.degree == 2);
  CHECK(rec.consistent);
  // oracle: factorization of p in Q(sqrt 5) = Q((1+sqrt 5)/2)
  auto k = NumberField::create(QPoly{-1, -1, 1}, Interval{1, 2});
  SpectrumReport oracle;
  for (const auto& e : synthetic.entries) {
    SpectrumEntry o{e.p, true, "", {}, {}};
    for (const auto& pr : factor_prime(k, e.p)) o.residue_degrees.push_back(pr.residue_degree);
    oracle.entries.push_back(o);
  }
  auto cmp = reconstruct_field_data(synthetic, oracle);
  CHECK(cmp.same_splitting.value_or(false));
  auto bad = synthetic;
  bad.entries[0].residue_degrees = {1, 1, 1};
  auto r2 = reconstruct_field_data(bad);
  CHECK_FALSE(r2.consistent);
  CHECK(r2.inconsistent_primes == std::vector<std::uint64_t>{7});
}

TEST_CASE("trace rigidity between the two groups") {
  auto a = builtin_group("takeuchi-A"), b = builtin_group("takeuchi-B");
  auto rep = rigidity(a, b, {0, 1}, 2, 31);
  REQUIRE(rep.contradicted);
  REQUIRE(rep.witness_row.has_value());
  const auto& row = rep.rows[*rep.witness_row];
  CHECK(word_to_string(row.word_a, a.labels) == "a^2");
  CHECK(row.chi_a == QPoly{-9, 1});
  CHECK(row.chi_b == QPoly{-36, 1});
  CHECK(row.disagreeing_primes == rep.good_primes);
  for (auto p : rep.good_primes) CHECK(p >= 5);

  auto self = rigidity(a, a, {0, 1}, 3, 31);
  CHECK_FALSE(self.contradicted);
  REQUIRE(self.conjugator.has_value());
  CHECK(in_squares_class(a, parse_word("a^2", a.labels)));
  CHECK_FALSE(in_squares_class(a, parse_word("a b", a.labels)));
  CHECK_THROWS_AS(rigidity(a, b, {0, 0}, 2, 31), PreconditionError);
}
