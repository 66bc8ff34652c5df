// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "congrig/fuchsian.hpp"
#include "congrig/prime_ideal.hpp"
#include "congrig/psl2.hpp"
#include "congrig/quaternion_order.hpp"

namespace congrig {

/// pi_P : G -> PSL(2, O/P) on the generators.
struct ReductionHom {
  PrimeIdealData prime;
  PSL2 group;
  SplitMap split;
  std::vector<Mat2q> images;  // canonical representatives
  /// Filled when |PSL(2, q)| is within the closure cap.
  std::optional<bool> surjective;
  std::uint64_t image_order = 0;

  Mat2q image_of(const Word& w) const;
};

/// Requires P above a prime outside S.
ReductionHom reduction_hom(const FuchsianRep& rep, const QuaternionOrderData& order, const PrimeIdealData& prime);

/// Reduction of an arbitrary element of the order, as a raw GL(2, q) matrix.
Mat2q reduce_element(const QuaternionOrderData& order, const SplitMap& split, const Mat2& m);

/// Whether the word lies in the principal congruence subgroup G(P).
bool in_congruence_subgroup(const FuchsianRep& rep, const QuaternionOrderData& order, const PrimeIdealData& prime,
                            const Word& w);

struct IdentifyResult {
  PrimeIdealData prime;
  AutomorphismDescriptor automorphism;
  std::size_t candidates_checked = 0;
};

/// Finds the prime P and automorphism alpha with alpha o pi_P = the given
/// homomorphism (generator images in PSL(2, q)). Throws NegativeResult when no
/// prime matches and ConsistencyError when several do.
IdentifyResult identify_quotient(const FuchsianRep& rep, const QuaternionOrderData& order, const PSL2& target,
                                 const std::vector<Mat2q>& images);

struct SpectrumEntry {
  std::uint64_t p = 0;
  bool good = false;
  std::string note;
  std::vector<int> residue_degrees;
  std::vector<std::optional<bool>> surjective;
};

struct SpectrumReport {
  std::uint64_t p_max = 0;
  int field_degree = 1;
  std::vector<SpectrumEntry> entries;
};

SpectrumReport congruence_spectrum(const FuchsianRep& rep, const QuaternionOrderData& order, std::uint64_t p_max);

struct ReconstructionReport {
  /// Majority value of the residue degree sums over good primes.
  int degree = 0;
  bool consistent = true;
  std::vector<std::uint64_t> inconsistent_primes;
  /// Present when a second spectrum is given: same splitting at every common good prime.
  std::optional<bool> same_splitting;
  std::vector<std::uint64_t> splitting_differences;
};

ReconstructionReport reconstruct_field_data(const SpectrumReport& spectrum,
                                            const std::optional<SpectrumReport>& other = std::nullopt);

}  // namespace congrig
