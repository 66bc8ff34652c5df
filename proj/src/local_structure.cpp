// SPDX-License-Identifier: Apache-2.0
#include "congrig/local_structure.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

#include "congrig/errors.hpp"
#include "congrig/psl2.hpp"

namespace congrig {

using GElem = GaloisRing::Elem;

std::pair<std::uint64_t, int> split_prime_power(std::uint64_t q) {
  if (q < 3 || q % 2 == 0) throw PreconditionError("q = " + std::to_string(q) + " must be an odd prime power");
  std::uint64_t p = 0;
  for (std::uint64_t d = 3; d * d <= q; d += 2)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return {q, 1};
  int f = 0;
  std::uint64_t n = q;
  while (n % p == 0) {
    n /= p;
    ++f;
  }
  if (n != 1) throw PreconditionError("q = " + std::to_string(q) + " is not a prime power");
  return {p, f};
}

RingMat2 ring_mat_mul(const GaloisRing& r, const RingMat2& x, const RingMat2& y) {
  return {r.add(r.mul(x.a, y.a), r.mul(x.b, y.c)), r.add(r.mul(x.a, y.b), r.mul(x.b, y.d)),
          r.add(r.mul(x.c, y.a), r.mul(x.d, y.c)), r.add(r.mul(x.c, y.b), r.mul(x.d, y.d))};
}

GElem ring_mat_det(const GaloisRing& r, const RingMat2& x) { return r.sub(r.mul(x.a, x.d), r.mul(x.b, x.c)); }

bool ring_mat_is_identity(const GaloisRing& r, const RingMat2& x) {
  return x.a == r.one() && x.d == r.one() && x.b == r.zero() && x.c == r.zero();
}

RingMat2 sl2_lift_ring(const GaloisRing& source, const GaloisRing& target, const RingMat2& m) {
  if (ring_mat_det(source, m) != source.one())
    throw PreconditionError("matrix does not have determinant 1 at the source precision");
  // representatives mod p^r are valid representatives mod p^(r+s)
  RingMat2 naive = m;
  GElem di = target.inverse(ring_mat_det(target, naive));
  return {target.mul(naive.a, di), target.mul(naive.b, di), naive.c, naive.d};
}

Integer sl2_order_unramified(std::uint64_t q, int r) {
  Integer qz(static_cast<unsigned long>(q));
  Integer base = qz * (qz * qz - 1);
  Integer pw;
  mpz_pow_ui(pw.get_mpz_t(), qz.get_mpz_t(), 3 * (r - 1));
  return base * pw;
}

namespace {

std::uint64_t checked_pow(std::uint64_t b, int e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / b) return cap + 1;
    r *= b;
  }
  return r;
}

GElem lift_residue(const GaloisRing& ring, FiniteField::Elem x) {
  auto c = ring.residue_field().coeffs(x);
  GElem e(c.begin(), c.end());
  return e;
}

// Elements of SL(2, GR) (every element, or a seeded sample when larger than `limit`).
std::vector<RingMat2> sl2_elements(const GaloisRing& ring, std::size_t limit, bool& sampled) {
  std::uint64_t n = ring.size();
  std::vector<RingMat2> out;
  sampled = n * n * n > limit * 8;
  if (!sampled) {
    for (std::uint64_t i = 0; i < n; ++i) {
      GElem a = ring.element(i);
      for (std::uint64_t j = 0; j < n; ++j) {
        GElem b = ring.element(j);
        for (std::uint64_t k = 0; k < n; ++k) {
          GElem x = ring.element(k);
          if (ring.is_unit(a)) {
            // x plays c; d = (1 + b c) / a
            out.push_back({a, b, x, ring.mul(ring.add(ring.one(), ring.mul(b, x)), ring.inverse(a))});
          } else if (ring.is_unit(b)) {
            // x plays d; c = (a d - 1) / b
            out.push_back({a, b, ring.mul(ring.sub(ring.mul(a, x), ring.one()), ring.inverse(b)), x});
          }
        }
      }
    }
    return out;
  }
  std::mt19937_64 rng(0x10ca1);
  while (out.size() < limit) {
    GElem a = ring.element(rng() % n), b = ring.element(rng() % n), x = ring.element(rng() % n);
    if (ring.is_unit(a))
      out.push_back({a, b, x, ring.mul(ring.add(ring.one(), ring.mul(b, x)), ring.inverse(a))});
    else if (ring.is_unit(b))
      out.push_back({a, b, ring.mul(ring.sub(ring.mul(a, x), ring.one()), ring.inverse(b)), x});
  }
  return out;
}

UnramifiedStep unramified_step(std::uint64_t p, int f, int s) {
  UnramifiedStep st;
  st.level = s;
  GaloisRing top(p, s + 1, f);
  const FiniteField& F = top.residue_field();
  std::uint64_t q = F.order();
  std::int64_t ps = 1;
  for (int i = 0; i < s; ++i) ps *= static_cast<std::int64_t>(p);
  std::vector<std::array<FiniteField::Elem, 4>> residues;
  std::vector<RingMat2> kernel;
  std::uint64_t tz = 0;
  bool all_tz = true;
  for (std::uint64_t idx = 0; idx < q * q * q * q; ++idx) {
    std::array<FiniteField::Elem, 4> a;
    std::uint64_t rest = idx;
    for (auto& x : a) {
      x = static_cast<FiniteField::Elem>(rest % q);
      rest /= q;
    }
    bool trace_zero = F.add(a[0], a[3]) == 0;
    if (trace_zero) ++tz;
    RingMat2 m{top.add(top.one(), top.scale(lift_residue(top, a[0]), ps)), top.scale(lift_residue(top, a[1]), ps),
               top.scale(lift_residue(top, a[2]), ps), top.add(top.one(), top.scale(lift_residue(top, a[3]), ps))};
    if (ring_mat_det(top, m) != top.one()) continue;
    if (!trace_zero) all_tz = false;
    residues.push_back(a);
    kernel.push_back(m);
  }
  st.kernel_order = kernel.size();
  st.trace_zero_count = tz;
  st.all_trace_zero = all_tz;
  st.exponent_p = true;
  for (const auto& m : kernel) {
    RingMat2 acc = m;
    for (std::uint64_t i = 1; i < p; ++i) acc = ring_mat_mul(top, acc, m);
    if (!ring_mat_is_identity(top, acc)) st.exponent_p = false;
  }
  st.additive = true;
  if (kernel.size() <= 1000) {
    for (std::size_t i = 0; i < kernel.size() && st.additive; ++i)
      for (std::size_t j = 0; j < kernel.size(); ++j) {
        RingMat2 prod = ring_mat_mul(top, kernel[i], kernel[j]);
        std::array<FiniteField::Elem, 4> sum;
        for (int t = 0; t < 4; ++t) sum[t] = F.add(residues[i][t], residues[j][t]);
        RingMat2 expect{top.add(top.one(), top.scale(lift_residue(top, sum[0]), ps)),
                        top.scale(lift_residue(top, sum[1]), ps), top.scale(lift_residue(top, sum[2]), ps),
                        top.add(top.one(), top.scale(lift_residue(top, sum[3]), ps))};
        if (prod.a != expect.a || prod.b != expect.b || prod.c != expect.c || prod.d != expect.d) {
          st.additive = false;
          break;
        }
      }
  }
  GaloisRing low(p, s, f);
  bool sampled = false;
  auto elems = sl2_elements(low, 20000, sampled);
  st.lift_sampled = sampled;
  st.lift_surjective = true;
  for (const auto& m : elems) {
    RingMat2 l = sl2_lift_ring(low, top, m);
    bool ok = ring_mat_det(top, l) == top.one() && low.truncate(l.a, s) == m.a && low.truncate(l.b, s) == m.b &&
              low.truncate(l.c, s) == m.c && low.truncate(l.d, s) == m.d;
    if (!ok) st.lift_surjective = false;
  }
  st.lifts_checked = elems.size();
  return st;
}

}  // namespace

UnramifiedReport local_unramified(std::uint64_t q, int r) {
  auto [p, f] = split_prime_power(q);
  if (r < 1) throw PreconditionError("level r must be at least 1");
  UnramifiedReport rep;
  rep.q = q;
  rep.p = p;
  rep.f = f;
  rep.r = r;
  rep.order = sl2_order_unramified(q, r);
  rep.enumeration_cap = kLocalEnumerationCap;
  std::uint64_t triples = checked_pow(q, 3 * r, kLocalEnumerationCap);
  if (triples <= kLocalEnumerationCap) {
    GaloisRing ring(p, r, f);
    std::uint64_t n = ring.size();
    std::vector<GElem> elems;
    std::vector<int> vals;
    for (std::uint64_t i = 0; i < n; ++i) {
      elems.push_back(ring.element(i));
      vals.push_back(ring.valuation(elems.back()));
    }
    std::vector<std::uint64_t> qpow(r + 1, 1);
    for (int i = 1; i <= r; ++i) qpow[i] = qpow[i - 1] * q;
    std::uint64_t count = 0;
    for (std::uint64_t ib = 0; ib < n; ++ib)
      for (std::uint64_t ic = 0; ic < n; ++ic) {
        int vt = ring.valuation(ring.add(ring.one(), ring.mul(elems[ib], elems[ic])));
        for (std::uint64_t ia = 0; ia < n; ++ia) {
          int k = vals[ia];
          if (vt >= k) count += qpow[k];
        }
      }
    rep.enumerated_order = count;
  }
  for (int s = 1; s < r; ++s) {
    if (checked_pow(q, 4, kLocalEnumerationCap) > kLocalEnumerationCap)
      throw PreconditionError("step kernel enumeration exceeds the cap");
    rep.steps.push_back(unramified_step(p, f, s));
  }
  return rep;
}

namespace {

// O/M^n in the pair model: a mod p^ceil(n/2), b mod p^floor(n/2), both over GR(., 2).
struct RamLevel {
  std::uint64_t p;
  int n;
  GaloisRing ring;
  int bprec;
  std::int64_t bmod;

  RamLevel(std::uint64_t p_, int n_) : p(p_), n(n_), ring(p_, (n_ + 1) / 2, 2), bprec(n_ / 2), bmod(1) {
    for (int i = 0; i < bprec; ++i) bmod *= static_cast<std::int64_t>(p);
  }
  using Pair = std::pair<GElem, GElem>;

  GElem trunc_b(const GElem& b) const { return {b[0] % bmod, b[1] % bmod}; }

  Pair mul(const Pair& x, const Pair& y) const {
    const auto& R = ring;
    GElem a = R.add(R.mul(x.first, y.first), R.scale(R.mul(x.second, R.frobenius(y.second)), static_cast<std::int64_t>(p)));
    GElem b = R.add(R.mul(x.first, y.second), R.mul(x.second, R.frobenius(y.first)));
    return {a, trunc_b(b)};
  }
  bool is_identity(const Pair& x) const { return x.first == ring.one() && x.second == trunc_b(ring.zero()); }

  std::vector<Pair> norm_one() const {
    std::vector<Pair> out;
    std::uint64_t na = ring.size();
    std::uint64_t nb = static_cast<std::uint64_t>(bmod) * static_cast<std::uint64_t>(bmod);
    for (std::uint64_t ia = 0; ia < na; ++ia) {
      GElem a = ring.element(ia);
      GElem na_ = ring.mul(a, ring.frobenius(a));
      for (std::uint64_t ib = 0; ib < nb; ++ib) {
        GElem b{static_cast<std::int64_t>(ib % static_cast<std::uint64_t>(bmod)),
                static_cast<std::int64_t>(ib / static_cast<std::uint64_t>(bmod))};
        GElem nrd = ring.sub(na_, ring.scale(ring.mul(b, ring.frobenius(b)), static_cast<std::int64_t>(p)));
        if (nrd == ring.one()) out.push_back({a, b});
      }
    }
    return out;
  }
};

}  // namespace

RamifiedReport local_ramified(std::uint64_t q, int m) {
  auto [p, f] = split_prime_power(q);
  if (f != 1) throw PreconditionError("ramified local model supports q = p only");
  if (m < 1) throw PreconditionError("level m must be at least 1");
  RamifiedReport rep;
  rep.q = q;
  rep.p = p;
  rep.m = m;
  rep.enumeration_cap = kLocalEnumerationCap;
  if (checked_pow(p, 2 * m, kLocalEnumerationCap) > kLocalEnumerationCap)
    throw PreconditionError("ramified enumeration exceeds the cap of " + std::to_string(kLocalEnumerationCap));

  RamLevel l1(p, 1);
  auto g1 = l1.norm_one();
  rep.level1_order = g1.size();
  for (const auto& x : g1) {
    std::uint64_t ord = 1;
    auto acc = x;
    while (!l1.is_identity(acc) && ord <= g1.size()) {
      acc = l1.mul(acc, x);
      ++ord;
    }
    if (ord == g1.size()) {
      rep.level1_cyclic = true;
      break;
    }
  }

  RamLevel top(p, m);
  rep.order = top.norm_one().size();
  rep.expected_order = q + 1;
  for (int r = 1; r < m; ++r) rep.expected_order *= (r % 2) ? q * q : q;

  for (int r = 1; r < m; ++r) {
    RamLevel lv(p, r + 1);
    auto elems = lv.norm_one();
    std::int64_t amod = 1, bmod = 1;
    for (int i = 0; i < (r + 1) / 2; ++i) amod *= static_cast<std::int64_t>(p);
    for (int i = 0; i < r / 2; ++i) bmod *= static_cast<std::int64_t>(p);
    std::vector<RamLevel::Pair> kernel;
    for (const auto& x : elems) {
      bool a1 = (x.first[0] - 1) % amod == 0 && x.first[1] % amod == 0;
      bool b0 = x.second[0] % bmod == 0 && x.second[1] % bmod == 0;
      if (a1 && b0) kernel.push_back(x);
    }
    RamifiedStep st;
    st.level = r;
    st.order = kernel.size();
    st.exponent_p = true;
    for (const auto& x : kernel) {
      auto acc = x;
      for (std::uint64_t i = 1; i < p; ++i) acc = lv.mul(acc, x);
      if (!lv.is_identity(acc)) st.exponent_p = false;
    }
    st.abelian = true;
    for (std::size_t i = 0; i < kernel.size() && st.abelian; ++i)
      for (std::size_t j = i + 1; j < kernel.size(); ++j)
        if (lv.mul(kernel[i], kernel[j]) != lv.mul(kernel[j], kernel[i])) {
          st.abelian = false;
          break;
        }
    rep.steps.push_back(st);
  }
  return rep;
}

CompositionAccount composition_account(std::uint64_t q, int r, bool ramified) {
  auto [p, f] = split_prime_power(q);
  if (r < 1) throw PreconditionError("level r must be at least 1");
  CompositionAccount acc;
  Integer pz(static_cast<unsigned long>(p));
  if (!ramified) {
    acc.group_factors.push_back(2);
    if (q == 3) {
      acc.group_factors.push_back(2);
      acc.group_factors.push_back(2);
      acc.group_factors.push_back(3);
      acc.caveat =
          "q is not coprime to 6: PSL(2,3) is not simple and is replaced by its composition factors 2, 2, 3";
    } else {
      acc.group_factors.push_back(Integer(static_cast<unsigned long>(psl2_order(q))));
    }
    for (int i = 0; i < 3 * f * (r - 1); ++i) acc.group_factors.push_back(pz);
  } else {
    if (f != 1) throw PreconditionError("ramified account supports q = p only");
    std::uint64_t n = q + 1;
    for (std::uint64_t d = 2; d <= n; ++d)
      while (n % d == 0) {
        acc.group_factors.push_back(Integer(static_cast<unsigned long>(d)));
        n /= d;
      }
    // O^1(M)/O^1(M^2r): r odd steps of order q^2 and r-1 even steps of order q
    for (int i = 0; i < f * (3 * r - 1); ++i) acc.group_factors.push_back(pz);
  }
  acc.psl_factors = acc.group_factors;
  auto it = std::find(acc.psl_factors.begin(), acc.psl_factors.end(), Integer(2));
  if (it != acc.psl_factors.end()) acc.psl_factors.erase(it);
  acc.group_order = 1;
  for (const auto& x : acc.group_factors) acc.group_order *= x;
  acc.psl_order = 1;
  for (const auto& x : acc.psl_factors) acc.psl_order *= x;
  return acc;
}

namespace {

std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// All elements of SL(2, Z/n) as (a, b, c, d).
std::vector<std::array<std::uint64_t, 4>> sl2_zn(std::uint64_t n) {
  std::vector<std::array<std::uint64_t, 4>> out;
  for (std::uint64_t a = 0; a < n; ++a) {
    std::uint64_t g = gcd_u(a, n);
    std::uint64_t ng = n / g;
    std::uint64_t ainv = ng == 1 ? 0 : static_cast<std::uint64_t>(mod_inverse_i64(static_cast<std::int64_t>((a / g) % ng), static_cast<std::int64_t>(ng)));
    for (std::uint64_t b = 0; b < n; ++b)
      for (std::uint64_t c = 0; c < n; ++c) {
        std::uint64_t t = (1 + b * c) % n;
        if (t % g) continue;
        std::uint64_t d0 = ng == 1 ? 0 : ((t / g) % ng) * ainv % ng;
        for (std::uint64_t k = 0; k < g; ++k) out.push_back({a, b, c, d0 + k * ng});
      }
  }
  return out;
}

}  // namespace

CrtReport crt_quotient_check(const FieldPtr& field, const std::vector<std::pair<std::uint64_t, int>>& ideals) {
  if (!field->is_rationals())
    throw PreconditionError("CRT verification is implemented for the rational field only");
  if (ideals.empty()) throw PreconditionError("at least one prime power is required");
  CrtReport rep;
  std::set<std::uint64_t> seen;
  std::uint64_t n = 1;
  for (auto [p, e] : ideals) {
    if (p < 3 || !is_prime(static_cast<std::int64_t>(p))) throw PreconditionError(std::to_string(p) + " is not an odd prime");
    if (!seen.insert(p).second) throw PreconditionError("primes must be pairwise distinct");
    if (e < 1) throw PreconditionError("exponents must be positive");
    std::uint64_t m = static_cast<std::uint64_t>(int_pow(static_cast<std::int64_t>(p), e));
    rep.moduli.push_back(m);
    n *= m;
    if (n > 150) throw PreconditionError("CRT enumeration cap exceeded (modulus above 150)");
  }
  rep.modulus = n;
  rep.prime_count = ideals.size();
  auto all = sl2_zn(n);
  rep.sl_order = all.size();
  rep.product_order = 1;
  for (auto m : rep.moduli) rep.product_order *= sl2_zn(m).size();
  std::unordered_set<std::string> images;
  for (const auto& g : all) {
    std::string key;
    for (auto m : rep.moduli)
      for (auto x : g) key += std::to_string(x % m) + ",";
    images.insert(key);
  }
  rep.injective = images.size() == all.size();
  rep.bijective = rep.injective && rep.sl_order == rep.product_order;

  // PSL kernel: classes {g, -g} whose every component is +-I.
  std::vector<std::array<std::uint64_t, 4>> kernel;
  for (const auto& g : all) {
    bool ok = true;
    for (auto m : rep.moduli) {
      bool plus = g[0] % m == 1 % m && g[3] % m == 1 % m && g[1] % m == 0 && g[2] % m == 0;
      bool minus = g[0] % m == (m - 1) % m && g[3] % m == (m - 1) % m && g[1] % m == 0 && g[2] % m == 0;
      if (!plus && !minus) ok = false;
    }
    if (ok) kernel.push_back(g);
  }
  rep.psl_kernel_order = kernel.size() / 2;
  rep.kernel_elementary_abelian = true;
  for (const auto& g : kernel) {
    // g is diagonal with entries +-1 componentwise, so g^2 = I; verify directly
    std::uint64_t a2 = (g[0] * g[0] + g[1] * g[2]) % n, d2 = (g[2] * g[1] + g[3] * g[3]) % n;
    std::uint64_t b2 = (g[0] * g[1] + g[1] * g[3]) % n, c2 = (g[2] * g[0] + g[3] * g[2]) % n;
    if (!(a2 == 1 % n && d2 == 1 % n && b2 == 0 && c2 == 0)) rep.kernel_elementary_abelian = false;
  }
  int rank = 0;
  std::uint64_t k = rep.psl_kernel_order;
  while (k > 1 && k % 2 == 0) {
    k /= 2;
    ++rank;
  }
  if (k != 1) rep.kernel_elementary_abelian = false;
  rep.kernel_rank = rank;
  return rep;
}

}  // namespace congrig
