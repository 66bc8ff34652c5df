// SPDX-License-Identifier: Apache-2.0
#include "congrig/psl2.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "congrig/errors.hpp"

namespace congrig {

using Elem = FiniteField::Elem;

PSL2::PSL2(FieldRef field) : field_(std::move(field)) {}

Mat2q PSL2::raw_mul(const Mat2q& a, const Mat2q& b) const {
  const auto& F = *field_;
  return {F.add(F.mul(a[0], b[0]), F.mul(a[1], b[2])), F.add(F.mul(a[0], b[1]), F.mul(a[1], b[3])),
          F.add(F.mul(a[2], b[0]), F.mul(a[3], b[2])), F.add(F.mul(a[2], b[1]), F.mul(a[3], b[3]))};
}

Elem PSL2::det(const Mat2q& a) const {
  const auto& F = *field_;
  return F.sub(F.mul(a[0], a[3]), F.mul(a[1], a[2]));
}

Elem PSL2::trace(const Mat2q& a) const { return field_->add(a[0], a[3]); }

Mat2q PSL2::gl_inverse(const Mat2q& a) const {
  const auto& F = *field_;
  Elem di = F.inv(det(a));
  return {F.mul(a[3], di), F.mul(F.neg(a[1]), di), F.mul(F.neg(a[2]), di), F.mul(a[0], di)};
}

Mat2q PSL2::frobenius(const Mat2q& a, int e) const {
  Mat2q r = a;
  for (auto& x : r) x = field_->frobenius(x, e);
  return r;
}

Mat2q PSL2::canonical(const Mat2q& m) const {
  if (det(m) != 1) throw PreconditionError("matrix " + to_string(m) + " does not have determinant 1");
  for (Elem x : m) {
    if (x == 0) continue;
    if (field_->neg(x) < x) {
      Mat2q r = m;
      for (auto& y : r) y = field_->neg(y);
      return r;
    }
    break;
  }
  return m;
}

Mat2q PSL2::mul(const Mat2q& a, const Mat2q& b) const { return canonical(raw_mul(a, b)); }

Mat2q PSL2::inverse(const Mat2q& a) const {
  const auto& F = *field_;
  return canonical({a[3], F.neg(a[1]), F.neg(a[2]), a[0]});
}

Mat2q PSL2::power(const Mat2q& a, std::int64_t e) const {
  Mat2q base = e < 0 ? inverse(a) : a;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Mat2q r = identity();
  while (n) {
    if (n & 1) r = raw_mul(r, base);
    base = raw_mul(base, base);
    n >>= 1;
  }
  return canonical(r);
}

Mat2q PSL2::from_ints(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) const {
  const auto& F = *field_;
  return canonical({F.from_int(a), F.from_int(b), F.from_int(c), F.from_int(d)});
}

std::uint64_t PSL2::key(const Mat2q& a) const {
  if (q() >= (1u << 16)) throw PreconditionError("group too large for packed keys");
  return (std::uint64_t{a[0]} << 48) | (std::uint64_t{a[1]} << 32) | (std::uint64_t{a[2]} << 16) | a[3];
}

Mat2q PSL2::random_gl(std::mt19937_64& rng) const {
  while (true) {
    Mat2q m;
    for (auto& x : m) x = static_cast<Elem>(rng() % q());
    if (det(m) != 0) return m;
  }
}

Mat2q PSL2::random_element(std::mt19937_64& rng) const {
  const auto& F = *field_;
  while (true) {
    Mat2q m;
    for (int i = 0; i < 3; ++i) m[i] = static_cast<Elem>(rng() % q());
    if (m[0] == 0) continue;
    // d = (1 + b c) / a
    m[3] = F.div(F.add(1, F.mul(m[1], m[2])), m[0]);
    return canonical(m);
  }
}

std::string PSL2::to_string(const Mat2q& a) const {
  const auto& F = *field_;
  return "[[" + F.to_string(a[0]) + ", " + F.to_string(a[1]) + "], [" + F.to_string(a[2]) + ", " +
         F.to_string(a[3]) + "]]";
}

std::uint64_t psl2_order(std::uint64_t q) {
  if (q % 2 == 0) throw PreconditionError("even q is not supported");
  return q * (q * q - 1) / 2;
}

ClosureResult group_closure(const PSL2& g, const std::vector<Mat2q>& generators, std::uint64_t cap) {
  ClosureResult out;
  std::unordered_set<std::uint64_t> seen;
  std::vector<Mat2q> gens;
  for (const auto& x : generators) gens.push_back(g.canonical(x));
  Mat2q id = g.identity();
  seen.insert(g.key(id));
  out.elements.push_back(id);
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    Mat2q cur = out.elements[head];
    for (const auto& s : gens) {
      Mat2q nx = g.mul(cur, s);
      if (seen.insert(g.key(nx)).second) {
        out.elements.push_back(nx);
        if (out.elements.size() > cap)
          throw PreconditionError("group closure exceeded the enumeration cap of " + std::to_string(cap));
      }
    }
  }
  out.order = out.elements.size();
  return out;
}

std::vector<Mat2q> standard_generators(const PSL2& g) {
  std::vector<Mat2q> gens{g.from_ints(1, 1, 0, 1), g.from_ints(0, -1, 1, 0)};
  if (g.field().degree() > 1) {
    const auto& F = g.field();
    gens.push_back(g.canonical({F.one(), F.generator_x(), F.zero(), F.one()}));
  }
  return gens;
}

SimplicityCertificate simplicity_certificate(const PSL2& g) {
  SimplicityCertificate cert;
  auto all = group_closure(g, standard_generators(g));
  cert.group_order = all.order;
  std::unordered_set<std::uint64_t> classified;
  classified.insert(g.key(g.identity()));
  cert.simple = all.order == psl2_order(g.q());
  for (const auto& x : all.elements) {
    if (classified.count(g.key(x))) continue;
    std::vector<Mat2q> cls;
    std::unordered_set<std::uint64_t> cls_keys;
    for (const auto& y : all.elements) {
      Mat2q c = g.mul(g.mul(y, x), g.inverse(y));
      if (cls_keys.insert(g.key(c)).second) cls.push_back(c);
    }
    for (auto k : cls_keys) classified.insert(k);
    ++cert.classes;
    if (group_closure(g, cls).order != all.order) cert.simple = false;
  }
  return cert;
}

Tr2Value tr2_finite(const PSL2& g, const Mat2q& m) {
  const auto& F = g.field();
  Elem t = g.trace(m);
  Tr2Value v;
  v.value = F.mul(t, t);
  Elem x = v.value;
  for (int i = 0; i < F.degree(); ++i) {
    if (std::find(v.orbit.begin(), v.orbit.end(), x) == v.orbit.end()) v.orbit.push_back(x);
    x = F.frobenius(x);
  }
  std::sort(v.orbit.begin(), v.orbit.end());
  return v;
}

Mat2q apply_automorphism(const PSL2& g, const AutomorphismDescriptor& alpha, const Mat2q& m) {
  Mat2q x = g.frobenius(m, alpha.frobenius_power);
  return g.canonical(g.raw_mul(g.raw_mul(alpha.conjugator, x), g.gl_inverse(alpha.conjugator)));
}

namespace {

// Nullspace of a matrix over F_q with 4 columns.
std::vector<Mat2q> nullspace4(const FiniteField& F, std::vector<std::array<Elem, 4>> rows) {
  std::vector<int> pivot_cols;
  std::size_t r = 0;
  for (int c = 0; c < 4 && r < rows.size(); ++c) {
    std::size_t sel = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i)
      if (rows[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Elem inv = F.inv(rows[r][c]);
    for (auto& x : rows[r]) x = F.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Elem f = rows[i][c];
      for (int j = 0; j < 4; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<Mat2q> basis;
  for (int free = 0; free < 4; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    Mat2q v{0, 0, 0, 0};
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = F.neg(rows[k][free]);
    basis.push_back(v);
  }
  return basis;
}

std::optional<Mat2q> invertible_in_span(const PSL2& g, const std::vector<Mat2q>& basis) {
  const auto& F = g.field();
  if (basis.empty()) return std::nullopt;
  std::size_t n = basis.size();
  std::uint64_t q = F.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n && total < 200000; ++i) total *= q;
  total = std::min<std::uint64_t>(total, 200000);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Mat2q v{0, 0, 0, 0};
    std::uint64_t rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      Elem c = static_cast<Elem>(rest % q);
      rest /= q;
      if (c == 0) continue;
      for (int j = 0; j < 4; ++j) v[j] = F.add(v[j], F.mul(c, basis[i][j]));
    }
    if (g.det(v) != 0) return v;
  }
  return std::nullopt;
}

Mat2q normalize_projective(const FiniteField& F, Mat2q v) {
  for (Elem x : v) {
    if (x == 0) continue;
    Elem inv = F.inv(x);
    for (auto& y : v) y = F.mul(y, inv);
    break;
  }
  return v;
}

}  // namespace

std::optional<AutomorphismDescriptor> match_automorphism(const PSL2& g, const std::vector<Mat2q>& h1,
                                                         const std::vector<Mat2q>& h2) {
  if (h1.size() != h2.size()) return std::nullopt;
  const auto& F = g.field();
  std::size_t n = h1.size();
  for (int e = 0; e < F.degree(); ++e) {
    std::vector<Mat2q> a(n);
    bool traces_ok = true;
    std::vector<int> fixed_sign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = g.frobenius(h1[i], e);
      Elem ta = g.trace(a[i]), tb = g.trace(h2[i]);
      if (tb == 0) {
        if (ta != 0) traces_ok = false;
      } else if (ta == tb) {
        fixed_sign[i] = 1;
      } else if (ta == F.neg(tb)) {
        fixed_sign[i] = -1;
      } else {
        traces_ok = false;
      }
    }
    if (!traces_ok) continue;
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < n; ++i)
      if (fixed_sign[i] == 0) free_idx.push_back(i);
    std::uint64_t combos = std::uint64_t{1} << std::min<std::size_t>(free_idx.size(), 20);
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      std::vector<int> sgn = fixed_sign;
      for (std::size_t k = 0; k < free_idx.size(); ++k) sgn[free_idx[k]] = (mask >> k) & 1 ? -1 : 1;
      std::vector<std::array<Elem, 4>> rows;
      for (std::size_t i = 0; i < n; ++i) {
        const Mat2q& A = a[i];
        Mat2q B = h2[i];
        if (sgn[i] < 0)
          for (auto& x : B) x = F.neg(x);
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) {
            std::array<Elem, 4> row{0, 0, 0, 0};
            for (int k = 0; k < 2; ++k) {
              row[2 * r + k] = F.add(row[2 * r + k], A[2 * k + c]);
              row[2 * k + c] = F.sub(row[2 * k + c], B[2 * r + k]);
            }
            rows.push_back(row);
          }
      }
      auto basis = nullspace4(F, rows);
      auto x = invertible_in_span(g, basis);
      if (!x) continue;
      AutomorphismDescriptor d{e, normalize_projective(F, *x)};
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) ok = apply_automorphism(g, d, h1[i]) == g.canonical(h2[i]);
      if (ok) return d;
    }
  }
  return std::nullopt;
}

EpimorphismFactor factor_product_epimorphism(const std::vector<FactorImages>& factors, const PSL2& target) {
  bool present = false;
  for (const auto& f : factors)
    if (f.group.q() == target.q()) present = true;
  if (!present)
    throw PreconditionError("PSL(2," + std::to_string(target.q()) + ") is not a composition factor of the source");
  std::vector<Mat2q> all_images;
  for (const auto& f : factors) all_images.insert(all_images.end(), f.images.begin(), f.images.end());
  if (group_closure(target, all_images).order != psl2_order(target.q()))
    throw PreconditionError("map is not surjective onto PSL(2," + std::to_string(target.q()) + ")");
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (factors[j].group.q() != target.q()) continue;
    bool others_trivial = true;
    for (std::size_t k = 0; k < factors.size() && others_trivial; ++k) {
      if (k == j) continue;
      for (const auto& im : factors[k].images)
        if (!target.is_identity(im)) others_trivial = false;
    }
    if (!others_trivial) continue;
    auto alpha = match_automorphism(target, factors[j].generators, factors[j].images);
    if (alpha) return {j, *alpha};
  }
  throw PreconditionError("no factor projection matches; the input is not a homomorphism of the stated form");
}

std::int64_t mod_inverse_i64(std::int64_t a, std::int64_t n) {
  __int128 t = 0, nt = 1, r = n, nr = ((a % n) + n) % n;
  while (nr != 0) {
    __int128 q = r / nr, tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw PreconditionError("element is not a unit modulo " + std::to_string(n));
  if (t < 0) t += n;
  return static_cast<std::int64_t>(t);
}

IntMat2 sl2_lift(const IntMat2& m, std::uint64_t p, int r, int s) {
  std::int64_t pr = int_pow(static_cast<std::int64_t>(p), r);
  std::int64_t n = int_pow(static_cast<std::int64_t>(p), r + s);
  auto md = [](__int128 x, std::int64_t mod) {
    __int128 y = x % mod;
    if (y < 0) y += mod;
    return static_cast<std::int64_t>(y);
  };
  IntMat2 a;
  for (int i = 0; i < 4; ++i) a[i] = md(m[i], pr);
  std::int64_t delta = md(static_cast<__int128>(a[0]) * a[3] - static_cast<__int128>(a[1]) * a[2], n);
  if (delta % pr != 1 % pr) throw PreconditionError("matrix does not have determinant 1 at the source precision");
  std::int64_t di = mod_inverse_i64(delta, n);
  return {md(static_cast<__int128>(a[0]) * di, n), md(static_cast<__int128>(a[1]) * di, n), a[2], a[3]};
}

}  // namespace congrig
