// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "congrig/number_field.hpp"
#include "congrig/subfield.hpp"

namespace congrig {

/// 2x2 matrix over a number field, entries (a, b; c, d).
struct Mat2 {
  AlgebraicNumber a, b, c, d;

  static Mat2 identity(const FieldPtr& l);
  static Mat2 from_rationals(const FieldPtr& l, const Rational& a, const Rational& b, const Rational& c,
                             const Rational& d);
  const FieldPtr& field() const { return a.field(); }
  AlgebraicNumber trace() const { return a + d; }
  AlgebraicNumber det() const { return a * d - b * c; }
  /// Adjugate; the inverse for determinant one.
  Mat2 adjugate() const;
  bool is_identity() const;
  /// M = I or M = -I.
  bool is_projective_identity() const;
  Mat2 operator-() const;
  std::vector<AlgebraicNumber> entries() const { return {a, b, c, d}; }
  std::string to_string() const;
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(const AlgebraicNumber& s, const Mat2& x);
bool operator==(const Mat2& x, const Mat2& y);

struct Letter {
  std::size_t gen = 0;
  long exp = 0;
  bool operator==(const Letter&) const = default;
};

/// Freely reduced word in the generators.
using Word = std::vector<Letter>;

Word reduce_word(const Word& w);
Word inverse_word(const Word& w);
Word concat_words(const Word& x, const Word& y);
/// Number of letters, counting exponents with multiplicity.
std::size_t word_length(const Word& w);
/// "a^2 b^-1"; the empty word is "1".
std::string word_to_string(const Word& w, const std::vector<std::string>& labels);
/// Inverse of word_to_string. Tokens are labels with an optional ^n and are
/// separated by blanks or '*'. Throws PreconditionError on unknown labels.
Word parse_word(const std::string& text, const std::vector<std::string>& labels);
/// Exponent sum of each generator.
std::vector<long> exponent_sums(const Word& w, std::size_t generator_count);

/// Finitely generated subgroup of PSL(2, R) given by determinant-one lifts of
/// its generators over a totally real field L.
struct FuchsianRep {
  FieldPtr field;
  std::vector<Mat2> generators;
  std::vector<std::string> labels;
  std::vector<Word> relators;
  std::string label;

  std::size_t rank() const { return generators.size(); }
};

/// Validates determinants, fields, labels and (when given) that each relator
/// evaluates to +-I.
FuchsianRep load_group(const FieldPtr& field, std::vector<Mat2> generators, std::vector<std::string> labels,
                       std::vector<Word> relators = {}, std::string label = "");

struct WordValue {
  Mat2 matrix;
  AlgebraicNumber trace_squared;
};

Mat2 word_matrix(const FuchsianRep& rep, const Word& w);
WordValue word_eval(const FuchsianRep& rep, const Word& w);

enum class ElementType { identity, elliptic, parabolic, hyperbolic };
std::string to_string(ElementType t);
ElementType classify_matrix(const Mat2& m);
ElementType classify(const FuchsianRep& rep, const Word& w);

/// Visits every freely reduced word with 1 <= length <= max_length together
/// with its matrix, in a deterministic order. The callback returns false to stop.
void for_each_word(const FuchsianRep& rep, std::size_t max_length,
                   const std::function<bool(const Word&, const Mat2&)>& visit);
Word random_word(std::size_t generator_count, std::size_t length, std::mt19937_64& rng);

/// Q(tr G) as a subfield of the entry field, from words of length <= 3 and a
/// stabilization check on random longer words.
Subfield trace_field(const FuchsianRep& rep);

struct SquaresResult {
  FuchsianRep rep;
  /// The new generators as words in the old ones.
  std::vector<Word> words;
  std::size_t index = 1;
};

inline constexpr std::size_t kSquaresGeneratorCap = 8;

/// G^(2) via Reidemeister-Schreier on the mod-2 abelianization (relators of
/// the input are used to cut the quotient down).
SquaresResult squares_subgroup(const FuchsianRep& rep);

/// Trace field of the squares subgroup.
Subfield invariant_trace_field(const FuchsianRep& rep);

/// Trace field equals invariant trace field.
bool trace_field_condition(const FuchsianRep& rep);

struct SemiArithmeticReport {
  bool semi_arithmetic = false;
  bool integral_traces = false;
  bool totally_real = true;
  std::optional<Word> non_integral_witness;
  Subfield invariant_trace_field;
};

SemiArithmeticReport is_semi_arithmetic(const FuchsianRep& rep);

struct QuaternionSymbol {
  Subfield field;         // the trace field k
  AlgebraicNumber a, b;   // elements of k
  Word x, y;              // a = tr^2 x - 4, b = tr [x, y] - 2
  std::vector<bool> ramified_at;  // indexed by embeddings of k
  int identity_embedding = 0;
  int r_split = 0;
};

/// Requires the trace field condition and an irreducible, non-elementary group.
QuaternionSymbol quaternion_symbol(const FuchsianRep& rep);

struct ArithmeticityReport {
  Subfield trace_field;
  bool tfc = false;
  bool semi_arithmetic = false;
  bool analyzed_squares = false;
  QuaternionSymbol symbol;
  bool arithmetic = false;
};

/// Decides arithmeticity. Without the trace field condition this throws unless
/// `allow_squares` is set, in which case the squares subgroup is analyzed
/// (arithmeticity is a commensurability invariant).
ArithmeticityReport is_arithmetic(const FuchsianRep& rep, bool allow_squares = false);

/// Applies the real embedding `embedding` of the entry field to every entry.
FuchsianRep galois_conjugate(const FuchsianRep& rep, int embedding);

struct ObstructionReport {
  bool violation = false;
  std::optional<Word> witness;
  int witness_embedding = -1;
  Subfield trace_field;
  bool tfc = false;
  std::size_t words_checked = 0;
  std::size_t hyperbolic_checked = 0;
};

/// Checks |sigma(tr g)| < |tr g| for hyperbolic g in the sample and every
/// non-identity embedding sigma of the trace field.
ObstructionReport modular_embedding_obstruction(const FuchsianRep& rep, const std::vector<Word>& sample);
std::vector<Word> words_up_to(const FuchsianRep& rep, std::size_t max_length);

struct HyperbolicGenerators {
  FuchsianRep rep;
  std::vector<Word> new_in_old;
  std::vector<Word> old_in_new;
};

HyperbolicGenerators hyperbolic_generators(const FuchsianRep& rep);

/// Some word pair (x, y) with tr [x, y] != 2, searched up to length 2.
std::optional<std::pair<Word, Word>> irreducibility_witness(const FuchsianRep& rep, std::size_t max_length = 2);

struct ConjugatorResult {
  Mat2 matrix;             // normalized so that its first nonzero entry is 1
  std::vector<int> signs;  // sign applied to each generator lift of the second group
};

/// a with a rep1(g_i) a^-1 = +-rep2(g_i) for all i, up to scalars; nullopt when
/// no sign assignment admits one. Requires rep1 irreducible.
std::optional<ConjugatorResult> conjugator(const FuchsianRep& rep1, const FuchsianRep& rep2);

}  // namespace congrig
