// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "congrig/galois_ring.hpp"
#include "congrig/number_field.hpp"

namespace congrig {

/// Splits q = p^f; throws PreconditionError unless q is an odd prime power.
std::pair<std::uint64_t, int> split_prime_power(std::uint64_t q);

/// 2x2 matrix over a Galois ring, row-major.
struct RingMat2 {
  GaloisRing::Elem a, b, c, d;
};

RingMat2 ring_mat_mul(const GaloisRing& r, const RingMat2& x, const RingMat2& y);
GaloisRing::Elem ring_mat_det(const GaloisRing& r, const RingMat2& x);
bool ring_mat_is_identity(const GaloisRing& r, const RingMat2& x);

/// Lift of an SL(2) element from precision r to precision r+s with det exactly 1,
/// by rescaling the first row by the inverse determinant of a naive lift.
RingMat2 sl2_lift_ring(const GaloisRing& source, const GaloisRing& target, const RingMat2& m);

/// |SL(2, o/p^r)| for o unramified with residue field F_q.
Integer sl2_order_unramified(std::uint64_t q, int r);

struct UnramifiedStep {
  int level = 0;                   // kernel of level+1 -> level
  std::uint64_t kernel_order = 0;  // elements I + p^level A with det 1
  std::uint64_t trace_zero_count = 0;
  bool all_trace_zero = false;
  bool exponent_p = false;
  bool additive = false;  // (I + p^s A)(I + p^s B) = I + p^s (A + B)
  std::uint64_t lifts_checked = 0;
  bool lift_surjective = false;
  bool lift_sampled = false;
};

struct UnramifiedReport {
  std::uint64_t q = 0, p = 0;
  int f = 0, r = 0;
  Integer order;
  std::optional<std::uint64_t> enumerated_order;
  std::vector<UnramifiedStep> steps;
  std::uint64_t enumeration_cap = 0;
};

inline constexpr std::uint64_t kLocalEnumerationCap = 10000000;

/// Order formula, enumeration (when q^(3r) is within the cap) and the
/// per-step kernel checks for levels 1..r-1.
UnramifiedReport local_unramified(std::uint64_t q, int r);

struct RamifiedStep {
  int level = 0;  // kernel of level+1 -> level
  std::uint64_t order = 0;
  bool exponent_p = false;
  bool abelian = false;
};

struct RamifiedReport {
  std::uint64_t q = 0, p = 0;
  int m = 0;
  std::uint64_t order = 0;
  std::uint64_t expected_order = 0;
  std::uint64_t level1_order = 0;
  bool level1_cyclic = false;
  std::vector<RamifiedStep> steps;
  std::uint64_t enumeration_cap = 0;
};

/// Pair model (a, b) <-> [[a, b], [p b', a']] of the norm-one units modulo M^m,
/// M the maximal ideal of the maximal order of the ramified quaternion algebra
/// over Q_p (so M^2 = pO).
RamifiedReport local_ramified(std::uint64_t q, int m);

struct CompositionAccount {
  std::vector<Integer> group_factors;
  std::vector<Integer> psl_factors;
  Integer group_order;
  Integer psl_order;
  std::string caveat;
};

/// Composition-factor orders of O^1/O^1(p^r) and of its quotient by {+-1}.
CompositionAccount composition_account(std::uint64_t q, int r, bool ramified);

struct CrtReport {
  std::vector<std::uint64_t> moduli;
  std::uint64_t modulus = 0;
  std::uint64_t sl_order = 0;
  std::uint64_t product_order = 0;
  bool injective = false;
  bool bijective = false;
  std::uint64_t psl_kernel_order = 0;
  int kernel_rank = 0;
  bool kernel_elementary_abelian = false;
  std::size_t prime_count = 0;
};

/// Componentwise reduction SL(2, Z/N) -> prod SL(2, Z/p_i^r_i) and the kernel
/// of the induced map on PSL. Only the rational field is supported.
CrtReport crt_quotient_check(const FieldPtr& field, const std::vector<std::pair<std::uint64_t, int>>& ideals);

}  // namespace congrig
