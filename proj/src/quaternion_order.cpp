// SPDX-License-Identifier: Apache-2.0
#include "congrig/quaternion_order.hpp"

#include <algorithm>
#include <set>

#include "congrig/errors.hpp"
#include "congrig/linalg.hpp"

namespace congrig {

namespace {

using KVec = std::vector<AlgebraicNumber>;

// Real quadratic fields Q(sqrt D) whose ring of integers is norm-Euclidean.
const std::set<long> kNormEuclidean = {2, 3, 5, 6, 7, 11, 13, 17, 19, 21, 29, 33, 37, 41, 57, 73};

bool is_integral(const AlgebraicNumber& x) {
  return std::all_of(x.coords().begin(), x.coords().end(), [](const Rational& c) { return is_integer(c); });
}

Integer abs_norm(const AlgebraicNumber& x) {
  Rational n = field_norm(x);
  return abs(n.get_num());
}

Integer nearest(const Rational& r) { return floor_of(r + Rational(1, 2)); }

// Euclidean quotient in o_k = Z[theta]: a - q b has norm strictly below N(b).
AlgebraicNumber euclid_quotient(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  const FieldPtr& k = a.field();
  AlgebraicNumber t = a / b;
  if (k->degree() == 1) return AlgebraicNumber(k, Rational(nearest(t.coords()[0])));
  Integer nb = abs_norm(b);
  Integer c0 = nearest(t.coords()[0]), c1 = nearest(t.coords()[1]);
  std::optional<AlgebraicNumber> best;
  Integer best_norm;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) {
      AlgebraicNumber q(k, std::vector<Rational>{Rational(c0 + i), Rational(c1 + j)});
      Integer n = abs_norm(a - q * b);
      if (!best || n < best_norm) {
        best = q;
        best_norm = n;
      }
    }
  if (best_norm >= nb) throw PreconditionError("no Euclidean step found in the ring of integers of the trace field");
  return *best;
}

bool is_zero_vec(const KVec& v) {
  return std::all_of(v.begin(), v.end(), [](const AlgebraicNumber& x) { return x.is_zero(); });
}

// Echelon form over o_k of the o_k-module spanned by integral rows.
std::vector<KVec> hnf(std::vector<KVec> rows, std::size_t cols) {
  std::vector<KVec> out;
  std::size_t start = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    while (true) {
      std::size_t sel = rows.size();
      Integer sel_norm;
      for (std::size_t i = start; i < rows.size(); ++i) {
        if (rows[i][c].is_zero()) continue;
        Integer n = abs_norm(rows[i][c]);
        if (sel == rows.size() || n < sel_norm) {
          sel = i;
          sel_norm = n;
        }
      }
      if (sel == rows.size()) break;
      std::swap(rows[start], rows[sel]);
      bool done = true;
      for (std::size_t i = start + 1; i < rows.size(); ++i) {
        if (rows[i][c].is_zero()) continue;
        AlgebraicNumber q = euclid_quotient(rows[i][c], rows[start][c]);
        for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[start][j];
        if (!rows[i][c].is_zero()) done = false;
      }
      if (done) {
        out.push_back(rows[start]);
        ++start;
        break;
      }
    }
  }
  // tidy entries above pivots
  for (std::size_t r = 0; r < out.size(); ++r) {
    std::size_t pc = 0;
    while (out[r][pc].is_zero()) ++pc;
    for (std::size_t i = 0; i < r; ++i) {
      if (out[i][pc].is_zero()) continue;
      AlgebraicNumber q = euclid_quotient(out[i][pc], out[r][pc]);
      for (std::size_t j = pc; j < cols; ++j) out[i][j] -= q * out[r][j];
    }
  }
  return out;
}

// o_k-coefficients of v over echelon rows; nullopt when v is outside their span.
std::optional<KVec> module_coords(const std::vector<KVec>& rows, KVec v, const FieldPtr& k) {
  KVec c(rows.size(), AlgebraicNumber(k, Rational(0)));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t pc = 0;
    while (rows[r][pc].is_zero()) ++pc;
    AlgebraicNumber x = v[pc] / rows[r][pc];
    if (!is_integral(x)) return std::nullopt;
    c[r] = x;
    for (std::size_t j = pc; j < v.size(); ++j) v[j] -= x * rows[r][j];
  }
  if (!is_zero_vec(v)) return std::nullopt;
  return c;
}

std::vector<Rational> flatten(const Mat2& m) {
  std::vector<Rational> out;
  for (const auto& e : m.entries()) out.insert(out.end(), e.coords().begin(), e.coords().end());
  return out;
}

AlgebraicNumber det_k(std::vector<KVec> m, const FieldPtr& k) {
  std::size_t n = m.size();
  AlgebraicNumber det(k, Rational(1));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = n;
    for (std::size_t i = c; i < n; ++i)
      if (!m[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel == n) return AlgebraicNumber(k, Rational(0));
    if (sel != c) {
      std::swap(m[sel], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      AlgebraicNumber f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::optional<KVec> frame_coords(const Subfield& k, const std::vector<std::vector<Rational>>& columns,
                                 const Mat2& m) {
  auto sol = solve_columns(columns, flatten(m), Rational(0));
  if (!sol) return std::nullopt;
  int d = k.degree();
  KVec out;
  for (int i = 0; i < 4; ++i) {
    std::vector<Rational> c(sol->begin() + i * d, sol->begin() + (i + 1) * d);
    out.emplace_back(k.field(), c);
  }
  return out;
}

Mat2 frame_matrix(const Subfield& k, const std::array<Mat2, 4>& frame, const KVec& v) {
  Mat2 m = k.to_ambient(v[0]) * frame[0];
  for (int i = 1; i < 4; ++i) m = m + k.to_ambient(v[i]) * frame[i];
  return m;
}

}  // namespace

std::optional<std::vector<AlgebraicNumber>> QuaternionOrderData::coords_of(const Mat2& m) const {
  auto v = frame_coords(k, frame_columns, m);
  if (!v) return std::nullopt;
  return module_coords(rows, *v, k.field());
}

bool QuaternionOrderData::is_bad(std::uint64_t p) const {
  return std::binary_search(bad_primes.begin(), bad_primes.end(), p);
}

const std::vector<std::uint64_t>& bad_primes(const QuaternionOrderData& order) { return order.bad_primes; }

QuaternionOrderData order_basis(const FuchsianRep& rep) {
  QuaternionOrderData o;
  o.entry_field = rep.field;
  o.k = trace_field(rep);
  const FieldPtr& kf = o.k.field();
  if (kf->degree() > 2) throw PreconditionError("orders are supported only over Q and real quadratic trace fields");
  if (kf->degree() == 2) {
    Integer d = quadratic_discriminant_root(kf);
    if (!d.fits_slong_p() || !kNormEuclidean.count(d.get_si()))
      throw PreconditionError("trace field Q(sqrt " + to_string(d) + ") is not norm-Euclidean");
  }
  if (!trace_field_condition(rep)) throw PreconditionError("the group does not satisfy the trace field condition");

  // k-linear frame of the algebra k[G] taken from short words
  RationalSpan span(4 * rep.field->degree());
  int found = 0;
  auto try_add = [&](const Mat2& m) {
    if (found == 4) return;
    std::vector<std::vector<Rational>> cols;
    AlgebraicNumber w = o.k.to_ambient(AlgebraicNumber(kf, Rational(1)));
    AlgebraicNumber gen = o.k.generator_in_ambient();
    RationalSpan trial = span;
    bool independent = true;
    for (int j = 0; j < kf->degree(); ++j) {
      cols.push_back(flatten(w * m));
      if (!trial.add(cols.back())) independent = false;
      w = w * gen;
    }
    if (!independent) return;
    span = trial;
    o.frame[found++] = m;
    for (auto& c : cols) o.frame_columns.push_back(std::move(c));
  };
  try_add(Mat2::identity(rep.field));
  for_each_word(rep, 4, [&](const Word&, const Mat2& m) {
    try_add(m);
    return found < 4;
  });
  if (found < 4) throw PreconditionError("the group does not span a quaternion algebra (reducible or elementary)");

  auto coords = [&](const Mat2& m) {
    auto v = frame_coords(o.k, o.frame_columns, m);
    if (!v) throw ConsistencyError("matrix outside the k-span of the group");
    return *v;
  };
  auto normalize = [&](std::vector<KVec> vecs) {
    Integer den = 1;
    for (const auto& v : vecs)
      for (const auto& x : v)
        for (const auto& c : x.coords()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    Rational s(den), inv_s(Integer(1), den);
    for (auto& v : vecs)
      for (auto& x : v) x = s * x;
    auto h = hnf(std::move(vecs), 4);
    for (auto& v : h)
      for (auto& x : v) x = inv_s * x;
    return h;
  };

  std::vector<Mat2> moves;
  for (const auto& g : rep.generators) {
    moves.push_back(g);
    moves.push_back(g.adjugate());
  }
  std::vector<KVec> start{coords(Mat2::identity(rep.field))};
  for (const auto& g : moves) start.push_back(coords(g));
  o.rows = normalize(start);

  bool closed = false;
  for (int round = 1; round <= kOrderMaxRounds && !closed; ++round) {
    o.rounds = round;
    std::vector<KVec> fresh;
    for (const auto& row : o.rows) {
      Mat2 b = frame_matrix(o.k, o.frame, row);
      for (const auto& g : moves) {
        KVec v = coords(b * g);
        if (!module_coords(o.rows, v, kf)) fresh.push_back(std::move(v));
      }
    }
    if (fresh.empty()) {
      closed = true;
      break;
    }
    for (const auto& r : o.rows) fresh.push_back(r);
    o.rows = normalize(std::move(fresh));
  }
  if (!closed)
    throw PreconditionError("the o_k-module generated by the group did not close after " +
                            std::to_string(kOrderMaxRounds) + " rounds (non-integral traces?)");
  if (o.rows.size() != 4) throw ConsistencyError("order has rank " + std::to_string(o.rows.size()));

  for (int i = 0; i < 4; ++i) o.basis[i] = frame_matrix(o.k, o.frame, o.rows[i]);
  o.mult.assign(4, std::vector<KVec>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      auto c = o.coords_of(o.basis[i] * o.basis[j]);
      if (!c) throw ConsistencyError("order basis is not multiplicatively closed");
      o.mult[i][j] = *c;
    }
  auto one = o.coords_of(Mat2::identity(rep.field));
  if (!one) throw ConsistencyError("order does not contain the identity");
  o.one = *one;

  std::vector<KVec> gram(4, KVec(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram[i][j] = o.k.to_sub((o.basis[i] * o.basis[j]).trace());
  o.discriminant = det_k(gram, kf);
  if (o.discriminant.is_zero()) throw ConsistencyError("degenerate reduced trace form on the order");
  if (!is_integral(o.discriminant)) throw ConsistencyError("non-integral order discriminant");
  o.discriminant_norm = abs_norm(o.discriminant);

  std::set<std::uint64_t> s{2, 3};
  for (const auto& f : prime_factors(o.discriminant_norm)) s.insert(f.get_ui());
  for (const auto& f : prime_factors(abs(kf->discriminant()))) s.insert(f.get_ui());
  o.bad_primes.assign(s.begin(), s.end());
  return o;
}

// ---------------------------------------------------------------------------
// Residue splitting

namespace {

using Res = std::array<FiniteField::Elem, 4>;

struct ResidueAlgebra {
  const FiniteField* F;
  std::vector<std::vector<Res>> mult;  // mult[i][j] = coordinates of e_i e_j
  Res one;

  Res mul(const Res& x, const Res& y) const {
    Res out{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      if (!x[i]) continue;
      for (int j = 0; j < 4; ++j) {
        if (!y[j]) continue;
        auto s = F->mul(x[i], y[j]);
        for (int l = 0; l < 4; ++l) out[l] = F->add(out[l], F->mul(s, mult[i][j][l]));
      }
    }
    return out;
  }
  Res add(const Res& x, const Res& y) const {
    Res o;
    for (int l = 0; l < 4; ++l) o[l] = F->add(x[l], y[l]);
    return o;
  }
  Res scale(FiniteField::Elem s, const Res& x) const {
    Res o;
    for (int l = 0; l < 4; ++l) o[l] = F->mul(s, x[l]);
    return o;
  }
  static bool is_zero(const Res& x) { return x == Res{0, 0, 0, 0}; }
  // s with x = s * y, when y != 0 and x is a multiple of y
  std::optional<FiniteField::Elem> ratio(const Res& x, const Res& y) const {
    int l = 0;
    while (l < 4 && !y[l]) ++l;
    if (l == 4) return std::nullopt;
    auto s = F->div(x[l], y[l]);
    if (scale(s, y) != x) return std::nullopt;
    return s;
  }
};

}  // namespace

Mat2q SplitMap::apply(const std::vector<AlgebraicNumber>& coords) const {
  const FiniteField& F = *residue;
  Mat2q out{0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    auto c = residue_reduce(coords[i], prime);
    for (int l = 0; l < 4; ++l) out[l] = F.add(out[l], F.mul(c, images[i][l]));
  }
  return out;
}

SplitMap split_order_mod_p(const QuaternionOrderData& order, const PrimeIdealData& prime) {
  if (!prime.field || !prime.field->same_as(*order.k.field()))
    throw PreconditionError("prime does not belong to the trace field of the order");
  if (order.is_bad(prime.p)) throw PreconditionError("p = " + std::to_string(prime.p) + " lies in S");
  if (!prime.residue_field) throw PreconditionError("residue field too large");
  const FiniteField& F = *prime.residue_field;

  ResidueAlgebra A{&F, std::vector<std::vector<Res>>(4, std::vector<Res>(4)), {}};
  for (int i = 0; i < 4; ++i) {
    A.one[i] = residue_reduce(order.one[i], prime);
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) A.mult[i][j][l] = residue_reduce(order.mult[i][j][l], prime);
  }
  auto unit = [](int i) {
    Res r{0, 0, 0, 0};
    r[i] = 1;
    return r;
  };

  std::mt19937_64 rng(0x5917 ^ prime.p);
  std::optional<Res> e11;
  auto inv2 = F.inv(F.from_int(2));
  for (int attempt = 0; attempt < 4000 && !e11; ++attempt) {
    Res x;
    for (auto& c : x) c = static_cast<FiniteField::Elem>(rng() % F.order());
    // reduced trace is half the trace of left multiplication
    FiniteField::Elem tr = 0;
    for (int i = 0; i < 4; ++i) tr = F.add(tr, A.mul(x, unit(i))[i]);
    auto t = F.mul(tr, inv2);
    Res y = A.add(A.mul(x, x), A.scale(F.neg(t), x));
    auto s = A.ratio(y, A.one);
    if (!s) continue;
    auto n = F.neg(*s);
    auto disc = F.sub(F.mul(t, t), F.mul(F.from_int(4), n));
    if (disc == 0 || !F.is_square(disc)) continue;
    auto root = F.sqrt(disc);
    auto l1 = F.mul(F.add(t, root), inv2), l2 = F.mul(F.sub(t, root), inv2);
    e11 = A.scale(F.inv(F.sub(l1, l2)), A.add(x, A.scale(F.neg(l2), A.one)));
  }
  if (!e11) throw ConsistencyError("no split idempotent found modulo " + prime.to_string());
  Res e22 = A.add(A.one, A.scale(F.neg(1), *e11));

  std::optional<Res> e12, e21;
  for (int i = 0; i < 4 && !e12; ++i) {
    Res y = A.mul(A.mul(*e11, unit(i)), e22);
    if (!ResidueAlgebra::is_zero(y)) e12 = y;
  }
  for (int i = 0; i < 4 && e12 && !e21; ++i) {
    Res z = A.mul(A.mul(e22, unit(i)), *e11);
    if (ResidueAlgebra::is_zero(z)) continue;
    auto c = A.ratio(A.mul(*e12, z), *e11);
    if (!c || *c == 0) continue;
    e21 = A.scale(F.inv(*c), z);
  }
  if (!e12 || !e21) throw ConsistencyError("residue algebra is not split modulo " + prime.to_string());

  SplitMap out{prime, prime.residue_field, {}};
  for (int i = 0; i < 4; ++i) {
    Res b = unit(i);
    auto r11 = A.ratio(A.mul(A.mul(*e11, b), *e11), *e11);
    auto r12 = A.ratio(A.mul(A.mul(*e11, b), e22), *e12);
    auto r21 = A.ratio(A.mul(A.mul(e22, b), *e11), *e21);
    auto r22 = A.ratio(A.mul(A.mul(e22, b), e22), e22);
    if (!r11 || !r12 || !r21 || !r22) throw ConsistencyError("matrix units do not decompose the residue algebra");
    out.images[i] = {*r11, *r12, *r21, *r22};
  }

  // verification: unital, multiplicative and bijective
  PSL2 g(prime.residue_field);
  auto img = [&](const Res& x) {
    Mat2q m{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
      for (int l = 0; l < 4; ++l) m[l] = F.add(m[l], F.mul(x[i], out.images[i][l]));
    return m;
  };
  if (img(A.one) != Mat2q{1, 0, 0, 1}) throw ConsistencyError("residue splitting is not unital");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (g.raw_mul(out.images[i], out.images[j]) != img(A.mult[i][j]))
        throw ConsistencyError("residue splitting is not multiplicative");
  {
    // rank over F_q of the four image matrices
    std::vector<Mat2q> m(out.images.begin(), out.images.end());
    std::size_t rank = 0;
    for (int c = 0; c < 4 && rank < 4; ++c) {
      std::size_t sel = 4;
      for (std::size_t r = rank; r < 4; ++r)
        if (m[r][c]) {
          sel = r;
          break;
        }
      if (sel == 4) continue;
      std::swap(m[rank], m[sel]);
      auto inv = F.inv(m[rank][c]);
      for (std::size_t r = 0; r < 4; ++r) {
        if (r == rank || !m[r][c]) continue;
        auto f = F.mul(m[r][c], inv);
        for (int l = 0; l < 4; ++l) m[r][l] = F.sub(m[r][l], F.mul(f, m[rank][l]));
      }
      ++rank;
    }
    if (rank != 4) throw ConsistencyError("residue splitting is not bijective");
  }
  return out;
}

}  // namespace congrig
