// SPDX-License-Identifier: Apache-2.0
#include "congrig/fuchsian.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <map>
#include <set>
#include <sstream>

#include "congrig/errors.hpp"
#include "congrig/linalg.hpp"

namespace congrig {

// ---------------------------------------------------------------- matrices

Mat2 Mat2::identity(const FieldPtr& l) {
  AlgebraicNumber one(l, Rational(1)), zero(l, Rational(0));
  return {one, zero, zero, one};
}

Mat2 Mat2::from_rationals(const FieldPtr& l, const Rational& a, const Rational& b, const Rational& c,
                          const Rational& d) {
  return {AlgebraicNumber(l, a), AlgebraicNumber(l, b), AlgebraicNumber(l, c), AlgebraicNumber(l, d)};
}

Mat2 Mat2::adjugate() const { return {d, -b, -c, a}; }

bool Mat2::is_identity() const {
  AlgebraicNumber one(field(), Rational(1));
  return b.is_zero() && c.is_zero() && a == one && d == one;
}

bool Mat2::is_projective_identity() const {
  if (!b.is_zero() || !c.is_zero() || !(a == d)) return false;
  AlgebraicNumber one(field(), Rational(1));
  return a == one || a == -one;
}

Mat2 Mat2::operator-() const { return {-a, -b, -c, -d}; }

std::string Mat2::to_string() const {
  return "[[" + a.to_string() + ", " + b.to_string() + "], [" + c.to_string() + ", " + d.to_string() + "]]";
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
Mat2 operator*(const AlgebraicNumber& s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
bool operator==(const Mat2& x, const Mat2& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }

// ------------------------------------------------------------------- words

Word reduce_word(const Word& w) {
  Word out;
  for (const auto& l : w) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.exp = -l.exp;
  return out;
}

Word concat_words(const Word& x, const Word& y) {
  Word out = x;
  out.insert(out.end(), y.begin(), y.end());
  return reduce_word(out);
}

std::size_t word_length(const Word& w) {
  std::size_t n = 0;
  for (const auto& l : w) n += static_cast<std::size_t>(std::labs(l.exp));
  return n;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& labels) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += labels.at(l.gen);
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

Word parse_word(const std::string& text, const std::vector<std::string>& labels) {
  Word w;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw PreconditionError("word \"" + text + "\" at position " + std::to_string(i) + ": " + why);
  };
  while (i < text.size()) {
    char ch = text[i];
    if (ch == ' ' || ch == '*' || ch == '\t') {
      ++i;
      continue;
    }
    if (ch == '1' && w.empty() && text.find_first_not_of(" \t", i + 1) == std::string::npos) return {};
    std::size_t best = labels.size(), best_len = 0;
    for (std::size_t g = 0; g < labels.size(); ++g) {
      const auto& lab = labels[g];
      if (lab.size() > best_len && text.compare(i, lab.size(), lab) == 0) {
        best = g;
        best_len = lab.size();
      }
    }
    if (best == labels.size()) fail("unknown generator");
    i += best_len;
    long e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start])))) fail("bad exponent");
      e = std::stol(text.substr(start, i - start));
      if (e == 0) fail("zero exponent");
    }
    w.push_back({best, e});
  }
  return reduce_word(w);
}

std::vector<long> exponent_sums(const Word& w, std::size_t generator_count) {
  std::vector<long> s(generator_count, 0);
  for (const auto& l : w) s.at(l.gen) += l.exp;
  return s;
}

// ------------------------------------------------------------- groups

FuchsianRep load_group(const FieldPtr& field, std::vector<Mat2> generators, std::vector<std::string> labels,
                       std::vector<Word> relators, std::string label) {
  if (!field) throw PreconditionError("missing entry field");
  if (generators.empty()) throw PreconditionError("a group needs at least one generator");
  if (labels.empty())
    for (std::size_t i = 0; i < generators.size(); ++i) labels.push_back("g" + std::to_string(i + 1));
  if (labels.size() != generators.size()) throw PreconditionError("one label per generator is required");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw PreconditionError("empty generator label");
    if (!seen.insert(l).second) throw PreconditionError("duplicate generator label " + l);
  }
  AlgebraicNumber one(field, Rational(1));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (const auto& e : generators[i].entries())
      if (!e.field() || !e.field()->same_as(*field))
        throw PreconditionError("generator " + labels[i] + " has an entry outside the entry field");
    AlgebraicNumber det = generators[i].det();
    if (!(det == one))
      throw PreconditionError("generator " + labels[i] + " has determinant " + det.to_string() + ", not 1");
  }
  FuchsianRep rep{field, std::move(generators), std::move(labels), {}, std::move(label)};
  for (auto& r : relators) {
    for (const auto& l : r)
      if (l.gen >= rep.rank()) throw PreconditionError("relator refers to an unknown generator");
    r = reduce_word(r);
    if (!word_matrix(rep, r).is_projective_identity())
      throw PreconditionError("relator " + word_to_string(r, rep.labels) + " does not evaluate to the identity");
  }
  rep.relators = std::move(relators);
  return rep;
}

namespace {

Mat2 letter_power(const FuchsianRep& rep, std::size_t gen, long exp) {
  const Mat2& g = rep.generators.at(gen);
  Mat2 base = exp < 0 ? g.adjugate() : g;
  Mat2 acc = Mat2::identity(rep.field);
  for (long i = 0; i < std::labs(exp); ++i) acc = acc * base;
  return acc;
}

AlgebraicNumber commutator_trace(const Mat2& x, const Mat2& y) {
  return (x * y * x.adjugate() * y.adjugate()).trace();
}

}  // namespace

Mat2 word_matrix(const FuchsianRep& rep, const Word& w) {
  Mat2 acc = Mat2::identity(rep.field);
  for (const auto& l : w) acc = acc * letter_power(rep, l.gen, l.exp);
  return acc;
}

WordValue word_eval(const FuchsianRep& rep, const Word& w) {
  Mat2 m = word_matrix(rep, w);
  AlgebraicNumber t = m.trace();
  return {m, t * t};
}

std::string to_string(ElementType t) {
  switch (t) {
    case ElementType::identity:
      return "identity";
    case ElementType::elliptic:
      return "elliptic";
    case ElementType::parabolic:
      return "parabolic";
    case ElementType::hyperbolic:
      return "hyperbolic";
  }
  return "?";
}

ElementType classify_matrix(const Mat2& m) {
  if (m.is_projective_identity()) return ElementType::identity;
  AlgebraicNumber t = m.trace();
  int s = sign(t * t - AlgebraicNumber(m.field(), Rational(4)));
  if (s < 0) return ElementType::elliptic;
  if (s == 0) return ElementType::parabolic;
  return ElementType::hyperbolic;
}

ElementType classify(const FuchsianRep& rep, const Word& w) { return classify_matrix(word_matrix(rep, w)); }

void for_each_word(const FuchsianRep& rep, std::size_t max_length,
                   const std::function<bool(const Word&, const Mat2&)>& visit) {
  std::size_t m = rep.rank();
  std::vector<Mat2> letters;
  for (std::size_t g = 0; g < m; ++g) {
    letters.push_back(rep.generators[g]);
    letters.push_back(rep.generators[g].adjugate());
  }
  std::vector<std::size_t> seq;
  std::vector<Mat2> prefix{Mat2::identity(rep.field)};
  bool stop = false;
  std::function<void()> rec = [&]() {
    if (stop || seq.size() == max_length) return;
    for (std::size_t li = 0; li < 2 * m && !stop; ++li) {
      if (!seq.empty() && (seq.back() ^ 1) == li) continue;
      seq.push_back(li);
      prefix.push_back(prefix.back() * letters[li]);
      Word w;
      for (auto s : seq) w.push_back({s / 2, (s % 2) ? -1L : 1L});
      if (!visit(reduce_word(w), prefix.back())) stop = true;
      rec();
      prefix.pop_back();
      seq.pop_back();
    }
  };
  rec();
}

Word random_word(std::size_t generator_count, std::size_t length, std::mt19937_64& rng) {
  Word w;
  std::size_t last = 2 * generator_count;
  for (std::size_t i = 0; i < length; ++i) {
    std::size_t li;
    do {
      li = rng() % (2 * generator_count);
    } while (last < 2 * generator_count && (last ^ 1) == li);
    w.push_back({li / 2, (li % 2) ? -1L : 1L});
    last = li;
  }
  return reduce_word(w);
}

std::vector<Word> words_up_to(const FuchsianRep& rep, std::size_t max_length) {
  std::vector<Word> out;
  for_each_word(rep, max_length, [&](const Word& w, const Mat2&) {
    out.push_back(w);
    return true;
  });
  return out;
}

// ------------------------------------------------------------ trace fields

namespace {

// Q-subalgebra of L spanned by the traces seen so far, closed under products.
class TraceAlgebra {
 public:
  explicit TraceAlgebra(const FieldPtr& l) : l_(l), span_(l->degree()) { span_.add(AlgebraicNumber(l, Rational(1)).coords()); }

  void add(const AlgebraicNumber& t) {
    if (!span_.add(t.coords())) return;
    bool grew = true;
    while (grew) {
      grew = false;
      auto basis = span_.original();
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j)
          if (span_.add((AlgebraicNumber(l_, basis[i]) * AlgebraicNumber(l_, basis[j])).coords())) grew = true;
    }
  }
  int dimension() const { return static_cast<int>(span_.dimension()); }
  std::vector<AlgebraicNumber> basis() const {
    std::vector<AlgebraicNumber> out;
    for (const auto& v : span_.original()) out.emplace_back(l_, v);
    return out;
  }

 private:
  FieldPtr l_;
  RationalSpan span_;
};

// Traces of g_i, g_i g_j and g_i g_j g_k (i < j < k) generate the trace ring,
// so they generate the trace field. Stops early once `bound` is reached.
Subfield trace_field_bounded(const FuchsianRep& rep, int bound) {
  TraceAlgebra alg(rep.field);
  std::size_t m = rep.rank();
  const auto& g = rep.generators;
  for (std::size_t i = 0; i < m && alg.dimension() < bound; ++i) alg.add(g[i].trace());
  for (std::size_t i = 0; i < m && alg.dimension() < bound; ++i)
    for (std::size_t j = i + 1; j < m && alg.dimension() < bound; ++j) {
      Mat2 gij = g[i] * g[j];
      alg.add(gij.trace());
      for (std::size_t k = j + 1; k < m && alg.dimension() < bound; ++k) alg.add((gij * g[k]).trace());
    }
  Subfield k = generated_subfield(rep.field, alg.basis());
  std::mt19937_64 rng(0x7ace);
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(rep.rank(), 4 + rng() % 9, rng);
    AlgebraicNumber t = word_matrix(rep, w).trace();
    if (!k.contains(t))
      throw ConsistencyError("trace field did not stabilize: tr(" + word_to_string(w, rep.labels) +
                             ") lies outside the field generated by short words");
  }
  return k;
}

}  // namespace

Subfield trace_field(const FuchsianRep& rep) { return trace_field_bounded(rep, rep.field->degree()); }

SquaresResult squares_subgroup(const FuchsianRep& rep) {
  std::size_t m = rep.rank();
  if (m > kSquaresGeneratorCap)
    throw PreconditionError("squares subgroup supports at most " + std::to_string(kSquaresGeneratorCap) +
                            " generators");
  // echelon basis of the relator span in (Z/2)^m
  std::vector<std::uint32_t> basis;
  auto reduce = [&](std::uint32_t v) {
    for (auto b : basis) {
      std::uint32_t top = 1u << (31 - __builtin_clz(b));
      if (v & top) v ^= b;
    }
    return v;
  };
  for (const auto& r : rep.relators) {
    auto s = exponent_sums(r, m);
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (s[i] % 2) v |= 1u << i;
    v = reduce(v);
    if (!v) continue;
    std::uint32_t top = 1u << (31 - __builtin_clz(v));
    for (auto& b : basis)
      if (b & top) b ^= v;
    basis.push_back(v);
    std::sort(basis.begin(), basis.end(), std::greater<>());
  }
  std::map<std::uint32_t, Word> coset_word;
  std::vector<std::uint32_t> order{0};
  coset_word[0] = {};
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::uint32_t t = order[i];
    for (std::size_t g = 0; g < m; ++g) {
      std::uint32_t n = reduce(t ^ (1u << g));
      if (coset_word.count(n)) continue;
      Word w = coset_word[t];
      w.push_back({g, 1});
      coset_word[n] = reduce_word(w);
      order.push_back(n);
    }
  }
  std::vector<Word> words;
  for (auto t : order)
    for (std::size_t g = 0; g < m; ++g) {
      std::uint32_t n = reduce(t ^ (1u << g));
      Word w = coset_word[t];
      w.push_back({g, 1});
      w = concat_words(w, inverse_word(coset_word[n]));
      if (w.empty()) continue;
      if (std::find(words.begin(), words.end(), w) != words.end()) continue;
      words.push_back(w);
    }
  std::vector<Mat2> mats;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < words.size(); ++i) {
    mats.push_back(word_matrix(rep, words[i]));
    labels.push_back("s" + std::to_string(i + 1));
  }
  SquaresResult res{load_group(rep.field, std::move(mats), std::move(labels), {},
                               rep.label.empty() ? std::string() : rep.label + "-squares"),
                    std::move(words), order.size()};
  return res;
}

namespace {

// The invariant trace field lies inside the trace field, whose degree bounds it.
Subfield invariant_within(const FuchsianRep& rep, int trace_field_degree) {
  return trace_field_bounded(squares_subgroup(rep).rep, trace_field_degree);
}

}  // namespace

Subfield invariant_trace_field(const FuchsianRep& rep) { return invariant_within(rep, trace_field(rep).degree()); }

bool trace_field_condition(const FuchsianRep& rep) {
  int d = trace_field(rep).degree();
  return invariant_within(rep, d).degree() == d;
}

SemiArithmeticReport is_semi_arithmetic(const FuchsianRep& rep) {
  SemiArithmeticReport r;
  r.integral_traces = true;
  std::set<std::vector<Rational>> seen;
  for_each_word(rep, 3, [&](const Word& w, const Mat2& m) {
    AlgebraicNumber t = m.trace();
    if (t.is_zero()) return true;
    std::vector<Rational> key = t.coords();
    auto first = std::find_if(key.begin(), key.end(), [](const Rational& x) { return x != 0; });
    if (*first < 0)
      for (auto& x : key) x = -x;
    if (!seen.insert(key).second) return true;
    bool integral = t.is_rational() ? is_integer(t.rational_value()) : is_totally_real_integral(t).integral;
    if (!integral) {
      r.integral_traces = false;
      r.non_integral_witness = w;
      return false;
    }
    return true;
  });
  r.invariant_trace_field = invariant_trace_field(rep);
  r.totally_real = r.invariant_trace_field.field()->totally_real();
  r.semi_arithmetic = r.integral_traces && r.totally_real;
  return r;
}

QuaternionSymbol quaternion_symbol(const FuchsianRep& rep) {
  Subfield k = trace_field(rep);
  if (k.degree() != invariant_within(rep, k.degree()).degree())
    throw PreconditionError("the trace field condition fails; analyze the squares subgroup instead");
  AlgebraicNumber four(rep.field, Rational(4)), two(rep.field, Rational(2));
  for (std::size_t len = 1; len <= 4; ++len) {
    std::vector<std::pair<Word, Mat2>> words;
    for_each_word(rep, len, [&](const Word& w, const Mat2& m) {
      words.emplace_back(w, m);
      return true;
    });
    for (const auto& [x, mx] : words) {
      AlgebraicNumber t = mx.trace();
      AlgebraicNumber a = t * t - four;
      if (a.is_zero()) continue;
      for (const auto& [y, my] : words) {
        AlgebraicNumber b = commutator_trace(mx, my) - two;
        if (b.is_zero()) continue;
        QuaternionSymbol s;
        s.field = k;
        s.a = k.to_sub(a);
        s.b = k.to_sub(b);
        s.x = x;
        s.y = y;
        const auto& kf = k.field();
        s.identity_embedding = kf->distinguished();
        for (int e = 0; e < kf->embedding_count(); ++e) {
          bool ram = sign_at(s.a, e) < 0 && sign_at(s.b, e) < 0;
          s.ramified_at.push_back(ram);
          if (!ram) ++s.r_split;
        }
        if (s.ramified_at[s.identity_embedding])
          throw ConsistencyError("quaternion algebra ramified at the identity embedding");
        return s;
      }
    }
  }
  throw PreconditionError("no words with tr^2 x != 4 and tr[x, y] != 2 up to length 4 (reducible or elementary group)");
}

ArithmeticityReport is_arithmetic(const FuchsianRep& rep, bool allow_squares) {
  ArithmeticityReport r;
  r.tfc = trace_field_condition(rep);
  const FuchsianRep* target = &rep;
  FuchsianRep squares;
  if (!r.tfc) {
    if (!allow_squares) throw PreconditionError("the trace field condition fails; analyze the squares subgroup instead");
    squares = squares_subgroup(rep).rep;
    target = &squares;
    r.analyzed_squares = true;
  }
  r.trace_field = trace_field(*target);
  r.semi_arithmetic = is_semi_arithmetic(*target).semi_arithmetic;
  r.symbol = quaternion_symbol(*target);
  bool all_ramified = true;
  for (std::size_t e = 0; e < r.symbol.ramified_at.size(); ++e)
    if (static_cast<int>(e) != r.symbol.identity_embedding && !r.symbol.ramified_at[e]) all_ramified = false;
  r.arithmetic = r.semi_arithmetic && all_ramified;
  return r;
}

FuchsianRep galois_conjugate(const FuchsianRep& rep, int embedding) {
  FieldPtr l2 = rep.field->with_distinguished(embedding);
  auto move = [&](const AlgebraicNumber& x) { return AlgebraicNumber(l2, x.coords()); };
  std::vector<Mat2> gens;
  for (const auto& g : rep.generators) gens.push_back({move(g.a), move(g.b), move(g.c), move(g.d)});
  return load_group(l2, std::move(gens), rep.labels, rep.relators,
                    rep.label.empty() ? std::string() : rep.label + "^sigma" + std::to_string(embedding));
}

ObstructionReport modular_embedding_obstruction(const FuchsianRep& rep, const std::vector<Word>& sample) {
  ObstructionReport r;
  r.trace_field = trace_field(rep);
  r.tfc = r.trace_field.degree() == invariant_within(rep, r.trace_field.degree()).degree();
  const auto& kf = r.trace_field.field();
  int id = kf->distinguished();
  for (const auto& w : sample) {
    ++r.words_checked;
    Mat2 m = word_matrix(rep, w);
    if (classify_matrix(m) != ElementType::hyperbolic) continue;
    ++r.hyperbolic_checked;
    AlgebraicNumber t = r.trace_field.to_sub(m.trace());
    for (int e = 0; e < kf->embedding_count(); ++e) {
      if (e == id) continue;
      if (compare_abs(t, t, e, id) != std::strong_ordering::less) {
        r.violation = true;
        r.witness = w;
        r.witness_embedding = e;
        return r;
      }
    }
  }
  return r;
}

std::optional<std::pair<Word, Word>> irreducibility_witness(const FuchsianRep& rep, std::size_t max_length) {
  std::vector<std::pair<Word, Mat2>> words;
  for_each_word(rep, max_length, [&](const Word& w, const Mat2& m) {
    words.emplace_back(w, m);
    return true;
  });
  AlgebraicNumber two(rep.field, Rational(2));
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      if (!(commutator_trace(words[i].second, words[j].second) == two)) return std::make_pair(words[i].first, words[j].first);
  return std::nullopt;
}

HyperbolicGenerators hyperbolic_generators(const FuchsianRep& rep) {
  std::size_t m = rep.rank();
  bool all = true;
  for (const auto& g : rep.generators)
    if (classify_matrix(g) != ElementType::hyperbolic) all = false;
  HyperbolicGenerators out;
  if (all) {
    out.rep = rep;
    for (std::size_t i = 0; i < m; ++i) {
      out.new_in_old.push_back({{i, 1}});
      out.old_in_new.push_back({{i, 1}});
    }
    return out;
  }
  std::vector<std::pair<Word, Mat2>> hyp;
  for_each_word(rep, 4, [&](const Word& w, const Mat2& mat) {
    if (classify_matrix(mat) == ElementType::hyperbolic) hyp.emplace_back(w, mat);
    return true;
  });
  if (hyp.empty()) throw PreconditionError("no hyperbolic element among words of length at most 4");
  AlgebraicNumber two(rep.field, Rational(2));
  std::optional<std::size_t> partner;
  for (std::size_t j = 1; j < hyp.size() && !partner; ++j)
    if (!(commutator_trace(hyp[0].second, hyp[j].second) == two)) partner = j;
  if (!partner) throw PreconditionError("no pair of hyperbolic words without common fixed points up to length 4");

  const Word& t_old = hyp[0].first;
  const Word& u_old = hyp[*partner].first;
  const Mat2& t = hyp[0].second;
  const Mat2& u = hyp[*partner].second;
  std::vector<Word> new_words{t_old, u_old};
  std::vector<Mat2> new_mats{t, u};
  auto power_word = [](const Word& w, long n) {
    Word base = n < 0 ? inverse_word(w) : w;
    Word acc;
    for (long i = 0; i < std::labs(n); ++i) acc = concat_words(acc, base);
    return acc;
  };
  // prefixes as (word in old generators, word in new generators, matrix)
  std::vector<std::tuple<Word, Word, Mat2>> prefixes{{Word{}, Word{}, Mat2::identity(rep.field)},
                                                     {u_old, Word{{1, 1}}, u},
                                                     {inverse_word(u_old), Word{{1, -1}}, u.adjugate()},
                                                     {t_old, Word{{0, 1}}, t},
                                                     {inverse_word(t_old), Word{{0, -1}}, t.adjugate()}};
  for (std::size_t i = 0; i < m; ++i) {
    const Mat2& g = rep.generators[i];
    if (classify_matrix(g) == ElementType::hyperbolic) {
      out.old_in_new.push_back({{new_words.size(), 1}});
      new_words.push_back({{i, 1}});
      new_mats.push_back(g);
      continue;
    }
    bool done = false;
    for (const auto& [p_old, p_new, p_mat] : prefixes) {
      Mat2 base = p_mat * g;
      for (long step = 1; step <= 80 && !done; ++step) {
        long n = (step % 2) ? (step + 1) / 2 : -(step / 2);
        Mat2 tn = Mat2::identity(rep.field);
        Mat2 tb = n < 0 ? t.adjugate() : t;
        for (long k = 0; k < std::labs(n); ++k) tn = tn * tb;
        Mat2 cand = tn * base;
        if (classify_matrix(cand) != ElementType::hyperbolic) continue;
        Word w_old = concat_words(concat_words(power_word(t_old, n), p_old), Word{{i, 1}});
        std::size_t idx = new_words.size();
        new_words.push_back(w_old);
        new_mats.push_back(cand);
        out.old_in_new.push_back(concat_words(concat_words(inverse_word(p_new), Word{{0, -n}}), Word{{idx, 1}}));
        done = true;
      }
      if (done) break;
    }
    if (!done) throw ConsistencyError("could not make generator " + rep.labels[i] + " hyperbolic");
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < new_mats.size(); ++i) labels.push_back("h" + std::to_string(i + 1));
  out.rep = load_group(rep.field, std::move(new_mats), std::move(labels), {},
                       rep.label.empty() ? std::string() : rep.label + "-hyperbolic");
  out.new_in_old = std::move(new_words);
  return out;
}

std::optional<ConjugatorResult> conjugator(const FuchsianRep& rep1, const FuchsianRep& rep2) {
  if (!rep1.field->same_as(*rep2.field)) throw PreconditionError("both groups must share the entry field");
  std::size_t m = rep1.rank();
  if (rep2.rank() != m) throw PreconditionError("generator counts differ");
  if (m > kSquaresGeneratorCap) throw PreconditionError("sign search supports at most 8 generators");
  if (!irreducibility_witness(rep1)) throw PreconditionError("the first group is reducible (all short commutators have trace 2)");
  const auto& l = rep1.field;
  const auto& a_gen = rep1.generators;
  const auto& b_gen = rep2.generators;
  AlgebraicNumber zero(l, Rational(0)), one(l, Rational(1));

  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    auto sg = [&](std::size_t i) { return (mask >> i) & 1u ? -1 : 1; };
    auto signed_trace = [&](const AlgebraicNumber& t, int s) { return s < 0 ? -t : t; };
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i)
      if (!(a_gen[i].trace() == signed_trace(b_gen[i].trace(), sg(i)))) ok = false;
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = i + 1; j < m && ok; ++j)
        if (!((a_gen[i] * a_gen[j]).trace() == signed_trace((b_gen[i] * b_gen[j]).trace(), sg(i) * sg(j)))) ok = false;
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = i + 1; j < m && ok; ++j)
        for (std::size_t k = j + 1; k < m && ok; ++k)
          if (!((a_gen[i] * a_gen[j] * a_gen[k]).trace() ==
                signed_trace((b_gen[i] * b_gen[j] * b_gen[k]).trace(), sg(i) * sg(j) * sg(k))))
            ok = false;
    if (!ok) continue;

    // a A_i - B_i a = 0 in the unknowns x0..x3 of a = [[x0, x1], [x2, x3]]
    Matrix<AlgebraicNumber> sys;
    for (std::size_t i = 0; i < m; ++i) {
      Mat2 bi = sg(i) < 0 ? -b_gen[i] : b_gen[i];
      auto ae = a_gen[i].entries(), be = bi.entries();
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          std::vector<AlgebraicNumber> row(4, zero);
          for (int k = 0; k < 2; ++k) {
            row[2 * r + k] += ae[2 * k + c];
            row[2 * k + c] -= be[2 * r + k];
          }
          sys.push_back(std::move(row));
        }
    }
    auto ns = nullspace(sys, 4, zero, one);
    if (ns.size() != 1) continue;
    auto& v = ns[0];
    std::size_t lead = 0;
    while (lead < 4 && v[lead].is_zero()) ++lead;
    if (lead == 4) continue;
    AlgebraicNumber inv = v[lead].inverse();
    for (auto& x : v) x = x * inv;
    Mat2 a{v[0], v[1], v[2], v[3]};
    if (a.det().is_zero()) continue;
    bool verified = true;
    for (std::size_t i = 0; i < m && verified; ++i) {
      Mat2 bi = sg(i) < 0 ? -b_gen[i] : b_gen[i];
      if (!(a * a_gen[i] == bi * a)) verified = false;
    }
    if (!verified) throw ConsistencyError("conjugator failed verification after solving");
    ConjugatorResult res{a, {}};
    for (std::size_t i = 0; i < m; ++i) res.signs.push_back(sg(i));
    return res;
  }
  return std::nullopt;
}

}  // namespace congrig
