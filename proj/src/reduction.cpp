// SPDX-License-Identifier: Apache-2.0
#include "congrig/reduction.hpp"

#include <algorithm>
#include <map>

#include "congrig/errors.hpp"

namespace congrig {

Mat2q ReductionHom::image_of(const Word& w) const {
  Mat2q out = group.identity();
  for (const auto& l : w) out = group.mul(out, group.power(images.at(l.gen), l.exp));
  return group.canonical(out);
}

Mat2q reduce_element(const QuaternionOrderData& order, const SplitMap& split, const Mat2& m) {
  auto c = order.coords_of(m);
  if (!c) throw PreconditionError("element does not lie in the order");
  return split.apply(*c);
}

ReductionHom reduction_hom(const FuchsianRep& rep, const QuaternionOrderData& order, const PrimeIdealData& prime) {
  SplitMap split = split_order_mod_p(order, prime);
  PSL2 g(prime.residue_field);
  ReductionHom h{prime, g, split, {}, std::nullopt, 0};
  for (const auto& gen : rep.generators) {
    Mat2q m = reduce_element(order, split, gen);
    if (g.det(m) != 1) throw ConsistencyError("reduced generator does not have determinant one");
    h.images.push_back(g.canonical(m));
  }
  if (psl2_order(g.q()) <= kClosureCap) {
    auto closure = group_closure(g, h.images);
    h.image_order = closure.order;
    h.surjective = closure.order == psl2_order(g.q());
  }
  return h;
}

bool in_congruence_subgroup(const FuchsianRep& rep, const QuaternionOrderData& order, const PrimeIdealData& prime,
                            const Word& w) {
  SplitMap split = split_order_mod_p(order, prime);
  Mat2q m = reduce_element(order, split, word_matrix(rep, w));
  const FiniteField& F = *split.residue;
  return m[1] == 0 && m[2] == 0 && (m[0] == m[3]) && (m[0] == F.one() || m[0] == F.neg(F.one()));
}

IdentifyResult identify_quotient(const FuchsianRep& rep, const QuaternionOrderData& order, const PSL2& target,
                                 const std::vector<Mat2q>& images) {
  if (images.size() != rep.rank()) throw PreconditionError("expected one image per generator");
  std::uint64_t p = target.field().characteristic();
  int f = target.field().degree();
  if (order.is_bad(p)) throw PreconditionError("characteristic " + std::to_string(p) + " lies in S");
  std::vector<Mat2q> given;
  for (const auto& m : images) {
    if (target.det(m) != 1) throw PreconditionError("image matrices must have determinant one");
    given.push_back(target.canonical(m));
  }
  std::vector<IdentifyResult> matches;
  std::size_t checked = 0;
  for (const auto& prime : factor_prime(order.k.field(), p)) {
    if (prime.residue_degree != f) continue;
    ++checked;
    auto h = reduction_hom(rep, order, prime);
    auto alpha = match_automorphism(target, h.images, given);
    if (alpha) matches.push_back({prime, *alpha, 0});
  }
  if (matches.empty())
    throw NegativeResult("no prime of residue field size " + std::to_string(target.q()) +
                         " reproduces the homomorphism up to automorphism");
  if (matches.size() > 1) throw ConsistencyError("several primes reproduce the homomorphism");
  matches[0].candidates_checked = checked;
  return matches[0];
}

SpectrumReport congruence_spectrum(const FuchsianRep& rep, const QuaternionOrderData& order, std::uint64_t p_max) {
  SpectrumReport out;
  out.p_max = p_max;
  out.field_degree = order.k.degree();
  for (std::uint64_t p = 2; p <= p_max; ++p) {
    if (!is_prime(static_cast<std::int64_t>(p))) continue;
    SpectrumEntry e;
    e.p = p;
    if (order.is_bad(p)) {
      e.note = "in S";
      out.entries.push_back(std::move(e));
      continue;
    }
    e.good = true;
    for (const auto& prime : factor_prime(order.k.field(), p)) {
      e.residue_degrees.push_back(prime.residue_degree);
      if (!prime.residue_field) {
        e.surjective.push_back(std::nullopt);
        continue;
      }
      e.surjective.push_back(reduction_hom(rep, order, prime).surjective);
    }
    std::sort(e.residue_degrees.begin(), e.residue_degrees.end());
    out.entries.push_back(std::move(e));
  }
  return out;
}

ReconstructionReport reconstruct_field_data(const SpectrumReport& spectrum, const std::optional<SpectrumReport>& other) {
  ReconstructionReport r;
  std::map<int, std::size_t> votes;
  auto degree_sum = [](const SpectrumEntry& e) {
    int sum = 0;
    for (int f : e.residue_degrees) sum += f;
    return sum;
  };
  for (const auto& e : spectrum.entries)
    if (e.good) ++votes[degree_sum(e)];
  std::size_t best = 0;
  for (const auto& [d, n] : votes)
    if (n > best) {
      best = n;
      r.degree = d;
    }
  for (const auto& e : spectrum.entries)
    if (e.good && degree_sum(e) != r.degree) {
      r.consistent = false;
      r.inconsistent_primes.push_back(e.p);
    }
  if (other) {
    r.same_splitting = true;
    for (const auto& e : spectrum.entries) {
      if (!e.good) continue;
      auto it = std::find_if(other->entries.begin(), other->entries.end(),
                             [&](const SpectrumEntry& x) { return x.p == e.p && x.good; });
      if (it == other->entries.end()) continue;
      auto a = e.residue_degrees, b = it->residue_degrees;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) {
        r.same_splitting = false;
        r.splitting_differences.push_back(e.p);
      }
    }
  }
  return r;
}

}  // namespace congrig
