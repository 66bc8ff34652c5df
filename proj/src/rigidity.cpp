// SPDX-License-Identifier: Apache-2.0
#include "congrig/rigidity.hpp"

#include <algorithm>
#include <functional>

#include "congrig/errors.hpp"
#include "congrig/quaternion_order.hpp"

namespace congrig {

FuchsianRep tfc_model(const FuchsianRep& rep, bool* squared) {
  bool tfc = trace_field_condition(rep);
  if (squared) *squared = !tfc;
  return tfc ? rep : squares_subgroup(rep).rep;
}

bool in_squares_class(const FuchsianRep& rep, const Word& w) {
  std::size_t m = rep.rank();
  if (m > 64) throw PreconditionError("too many generators");
  auto parity = [&](const Word& x) {
    auto s = exponent_sums(x, m);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (s[i] % 2) v |= std::uint64_t{1} << i;
    return v;
  };
  // echelon basis over F_2 keyed by highest set bit
  std::vector<std::uint64_t> basis;
  auto reduce = [&](std::uint64_t v) {
    for (auto b : basis)
      if (v & (std::uint64_t{1} << (63 - __builtin_clzll(b)))) v ^= b;
    return v;
  };
  for (const auto& r : rep.relators) {
    std::uint64_t v = reduce(parity(r));
    if (!v) continue;
    basis.push_back(v);
    std::sort(basis.begin(), basis.end(), std::greater<>());
  }
  return reduce(parity(w)) == 0;
}

QPoly field_char_poly(const Subfield& k, const AlgebraicNumber& a_in_ambient) {
  return char_poly(k.to_sub(a_in_ambient));
}

namespace {

bool agree_mod(const QPoly& f, const QPoly& g, std::uint64_t p) {
  int d = std::max(f.degree(), g.degree());
  auto m = static_cast<std::int64_t>(p);
  for (int i = 0; i <= d; ++i)
    if (rational_mod(f.coeff(i), m) != rational_mod(g.coeff(i), m)) return false;
  return true;
}

}  // namespace

RigidityReport rigidity(const FuchsianRep& a, const FuchsianRep& b, const std::vector<std::size_t>& map,
                        std::size_t max_length, std::uint64_t p_max) {
  if (map.size() != a.rank() || b.rank() != a.rank())
    throw PreconditionError("the correspondence must be a bijection between generator sets");
  std::vector<std::size_t> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw PreconditionError("the correspondence must be a bijection between generator sets");

  RigidityReport report;
  report.max_length = max_length;
  report.p_max = p_max;

  QuaternionOrderData oa = order_basis(tfc_model(a));
  QuaternionOrderData ob = order_basis(tfc_model(b));
  for (std::uint64_t p = 5; p <= p_max; ++p)
    if (is_prime(static_cast<std::int64_t>(p)) && !oa.is_bad(p) && !ob.is_bad(p)) report.good_primes.push_back(p);

  Subfield ka = invariant_trace_field(a), kb = invariant_trace_field(b);
  auto rename = [&](const Word& w) {
    Word out = w;
    for (auto& l : out) l.gen = map[l.gen];
    return out;
  };

  for_each_word(a, max_length, [&](const Word& w, const Mat2& ma) {
    if (!in_squares_class(a, w)) return true;
    RigidityRow row;
    row.word_a = w;
    row.word_b = rename(w);
    Mat2 mb = word_matrix(b, row.word_b);
    row.tr2_a = ma.trace() * ma.trace();
    row.tr2_b = mb.trace() * mb.trace();
    row.chi_a = field_char_poly(ka, row.tr2_a);
    row.chi_b = field_char_poly(kb, row.tr2_b);
    row.exact_agreement = row.chi_a == row.chi_b;
    for (auto p : report.good_primes)
      if (!agree_mod(row.chi_a, row.chi_b, p)) row.disagreeing_primes.push_back(p);
    if (!row.disagreeing_primes.empty() && !report.contradicted) {
      report.contradicted = true;
      report.witness_row = report.rows.size();
      report.witness_prime = row.disagreeing_primes.front();
    }
    report.rows.push_back(std::move(row));
    return true;
  });

  if (!report.contradicted && a.field->same_as(*b.field)) {
    FuchsianRep reordered = b;
    for (std::size_t i = 0; i < map.size(); ++i) {
      reordered.generators[i] = b.generators[map[i]];
      reordered.labels[i] = b.labels[map[i]];
    }
    reordered.relators.clear();
    try {
      report.conjugator = conjugator(a, reordered);
    } catch (const PreconditionError&) {
      report.conjugator.reset();
    }
  }
  return report;
}

}  // namespace congrig
