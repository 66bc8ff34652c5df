// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "congrig/fuchsian.hpp"
#include "congrig/qpoly.hpp"

namespace congrig {

/// The group itself when it satisfies the trace field condition, otherwise its
/// squares subgroup.
FuchsianRep tfc_model(const FuchsianRep& rep, bool* squared = nullptr);

/// Whether the word lies in the subgroup generated by squares, judged by its
/// exponent sums modulo 2 and the relators.
bool in_squares_class(const FuchsianRep& rep, const Word& w);

/// prod over embeddings sigma of k of (x - sigma(a)), for a in the subfield k.
QPoly field_char_poly(const Subfield& k, const AlgebraicNumber& a_in_ambient);

struct RigidityRow {
  Word word_a, word_b;
  AlgebraicNumber tr2_a, tr2_b;
  QPoly chi_a, chi_b;
  bool exact_agreement = false;
  std::vector<std::uint64_t> disagreeing_primes;
};

struct RigidityReport {
  std::size_t max_length = 0;
  std::uint64_t p_max = 0;
  std::vector<std::uint64_t> good_primes;
  std::vector<RigidityRow> rows;
  /// Some word disagrees modulo some good prime.
  bool contradicted = false;
  std::optional<std::size_t> witness_row;
  std::optional<std::uint64_t> witness_prime;
  /// Searched only when every word agrees and both groups share a field.
  std::optional<ConjugatorResult> conjugator;
};

/// Compares characteristic polynomials of tr^2 over the invariant trace
/// fields on words of the squares class, generator i of A corresponding to
/// generator map[i] of B. Good primes are p >= 5 outside the bad sets of both
/// groups' orders.
RigidityReport rigidity(const FuchsianRep& a, const FuchsianRep& b, const std::vector<std::size_t>& map,
                        std::size_t max_length, std::uint64_t p_max);

}  // namespace congrig
