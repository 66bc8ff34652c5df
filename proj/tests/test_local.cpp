// SPDX-License-Identifier: Apache-2.0
#include "congrig/errors.hpp"
#include "congrig/local_structure.hpp"
#include "doctest.h"

using namespace congrig;

namespace {

// Counts (a, b, c, d) over GR(p^r, f) with ad - bc = 1 by exhaustive search.
std::uint64_t brute_sl2(std::uint64_t p, int r, int f) {
  GaloisRing ring(p, r, f);
  std::uint64_t n = ring.size(), count = 0;
  for (std::uint64_t ia = 0; ia < n; ++ia)
    for (std::uint64_t id = 0; id < n; ++id) {
      auto ad = ring.mul(ring.element(ia), ring.element(id));
      for (std::uint64_t ib = 0; ib < n; ++ib)
        for (std::uint64_t ic = 0; ic < n; ++ic)
          if (ring.sub(ad, ring.mul(ring.element(ib), ring.element(ic))) == ring.one()) ++count;
    }
  return count;
}

// Norm-one classes in the Z_p-order with basis 1, i, j, ij (i^2 = u, j^2 = p),
// counted modulo p^e: x0^2 - u x1^2 - p x2^2 + u p x3^2 = 1.
std::uint64_t brute_quaternion(std::int64_t p, std::int64_t u, int e) {
  std::int64_t n = int_pow(p, e);
  std::uint64_t count = 0;
  for (std::int64_t x0 = 0; x0 < n; ++x0)
    for (std::int64_t x1 = 0; x1 < n; ++x1)
      for (std::int64_t x2 = 0; x2 < n; ++x2)
        for (std::int64_t x3 = 0; x3 < n; ++x3) {
          std::int64_t v = x0 * x0 - u * x1 * x1 - p * x2 * x2 + u * p * x3 * x3 - 1;
          if (((v % n) + n) % n == 0) ++count;
        }
  return count;
}

}  // namespace

TEST_CASE("unramified orders agree with exhaustive search") {
  for (auto [q, r] : std::vector<std::pair<std::uint64_t, int>>{{3, 1}, {3, 2}, {5, 1}, {5, 2}, {9, 1}}) {
    auto [p, f] = split_prime_power(q);
    auto rep = local_unramified(q, r);
    std::uint64_t brute = brute_sl2(p, r, f);
    CHECK(rep.order == Integer(static_cast<unsigned long>(brute)));
    REQUIRE(rep.enumerated_order.has_value());
    CHECK(*rep.enumerated_order == brute);
  }
  CHECK(local_unramified(5, 2).order == 15000);
  CHECK(local_unramified(3, 1).order == 24);
}

TEST_CASE("unramified step kernels") {
  auto rep = local_unramified(3, 4);
  REQUIRE(rep.steps.size() == 3);
  REQUIRE(rep.enumerated_order.has_value());
  CHECK(Integer(static_cast<unsigned long>(*rep.enumerated_order)) == rep.order);
  for (const auto& st : rep.steps) {
    CHECK(st.kernel_order == 27);
    CHECK(st.trace_zero_count == 27);
    CHECK(st.all_trace_zero);
    CHECK(st.exponent_p);
    CHECK(st.additive);
    CHECK(st.lift_surjective);
  }
  auto rep9 = local_unramified(9, 2);
  REQUIRE(rep9.steps.size() == 1);
  CHECK(rep9.steps[0].kernel_order == 729);
  CHECK(rep9.steps[0].lift_surjective);
}

TEST_CASE("ramified model agrees with a quaternion basis model") {
  // (-1, 3) is ramified at 3 and (2, 5) at 5; both orders are maximal there.
  CHECK(local_ramified(3, 2).order == brute_quaternion(3, -1, 1));
  CHECK(local_ramified(3, 4).order == brute_quaternion(3, -1, 2));
  CHECK(local_ramified(5, 2).order == brute_quaternion(5, 2, 1));
}

TEST_CASE("ramified filtration") {
  for (std::uint64_t q : {3ull, 5ull, 7ull}) {
    auto rep = local_ramified(q, 1);
    CHECK(rep.level1_order == q + 1);
    CHECK(rep.level1_cyclic);
  }
  auto rep = local_ramified(3, 5);
  CHECK(rep.order == rep.expected_order);
  REQUIRE(rep.steps.size() == 4);
  for (const auto& st : rep.steps) {
    CHECK(st.order == (st.level % 2 ? 9u : 3u));
    CHECK(st.exponent_p);
    CHECK(st.abelian);
  }
  CHECK_THROWS_AS(local_ramified(9, 1), PreconditionError);
}

TEST_CASE("composition accounts") {
  auto a = composition_account(5, 1, false);
  CHECK(a.group_order == 120);
  CHECK(a.psl_order == 60);
  auto b = composition_account(3, 1, false);
  CHECK(b.group_order == 24);
  CHECK_FALSE(b.caveat.empty());
  auto c = composition_account(3, 1, true);
  CHECK(c.group_order == local_ramified(3, 2).order);
  for (const auto& x : c.group_factors) CHECK((x == 2 || x == 3));
  CHECK(composition_account(5, 2, false).group_order == local_unramified(5, 2).order);
}

TEST_CASE("chinese remainder verification") {
  auto q = NumberField::rationals();
  auto r = crt_quotient_check(q, {{3, 1}, {5, 1}});
  CHECK(r.sl_order == 2880);
  CHECK(r.bijective);
  CHECK(r.psl_kernel_order == 2);
  CHECK(r.kernel_rank == 1);
  CHECK(r.kernel_elementary_abelian);
  auto r3 = crt_quotient_check(q, {{3, 1}, {5, 1}, {7, 1}});
  CHECK(r3.bijective);
  CHECK(r3.psl_kernel_order == 4);
  CHECK_THROWS_AS(crt_quotient_check(q, {{3, 1}, {3, 2}}), PreconditionError);
  CHECK_THROWS_AS(crt_quotient_check(q, {{2, 1}}), PreconditionError);
}
