// SPDX-License-Identifier: Apache-2.0
#include "congrig/subfield.hpp"

#include "congrig/errors.hpp"
#include "congrig/linalg.hpp"

namespace congrig {

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

RMatrix kron(const RMatrix& a, const RMatrix& b) {
  std::size_t n = a.size(), m = b.size();
  RMatrix out(n * m, std::vector<Rational>(n * m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < m; ++l) out[i * m + j][k * m + l] = a[i][k] * b[j][l];
    }
  return out;
}

RMatrix identity(std::size_t n) {
  RMatrix m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::vector<Rational> mat_vec(const RMatrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) out[i] += m[i][j] * v[j];
  return out;
}

// Coordinates of `target` in the basis e, Te, T^2 e, ...
std::vector<Rational> krylov_coords(const RMatrix& t, const std::vector<Rational>& target) {
  std::size_t n = t.size();
  std::vector<std::vector<Rational>> cols;
  std::vector<Rational> v(n);
  v[0] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    cols.push_back(v);
    v = mat_vec(t, v);
  }
  auto x = solve_columns(cols, target, Rational(0));
  if (!x) throw ConsistencyError("compositum: generator image not in the Krylov span");
  return *x;
}

bool is_squarefree_q(const QPoly& f) { return poly_gcd(f, f.derivative()).degree() == 0; }

// Narrows `iv` (containing sigma(x)) until it isolates exactly one root of f.
Interval isolate_value(const AlgebraicNumber& x, int embedding, const QPoly& f) {
  Rational w(1, 16);
  while (true) {
    Interval iv = x.enclosure(embedding, w);
    if (count_roots_closed(f, iv) == 1) return iv;
    w /= 256;
  }
}

Integer squarefree_kernel(const Integer& n) {
  Integer rest = abs(n), out = 1;
  for (const auto& p : prime_factors(rest)) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  return n < 0 ? Integer(-out) : out;
}

}  // namespace

AlgebraicNumber map_element(const AlgebraicNumber& a, const AlgebraicNumber& theta_image) {
  AlgebraicNumber acc(theta_image.field(), Rational(0));
  const auto& c = a.coords();
  if (a.field()->degree() == 1) return AlgebraicNumber(theta_image.field(), c[0]);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * theta_image + AlgebraicNumber(theta_image.field(), c[i]);
  return acc;
}

Compositum compositum(const FieldPtr& k1, const FieldPtr& k2, const std::string& name) {
  std::size_t d1 = k1->degree(), d2 = k2->degree();
  RMatrix m1 = multiplication_matrix(AlgebraicNumber::generator(k1));
  RMatrix m2 = multiplication_matrix(AlgebraicNumber::generator(k2));
  RMatrix a = kron(m1, identity(d2)), b = kron(identity(d1), m2);
  for (long step = 1; step < 64; ++step) {
    long c = (step % 2) ? (step + 1) / 2 : -(step / 2);
    RMatrix t = a;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t.size(); ++j) t[i][j] += c * b[i][j];
    QPoly h = matrix_char_poly(t);
    if (!is_squarefree_q(h)) continue;
    Interval i1 = k1->selector(), i2 = k2->selector();
    Interval sel;
    while (true) {
      sel = i1 + Rational(c) * i2;
      if (count_roots_closed(h, sel) == 1) break;
      bisect_root(k1->minpoly(), i1);
      bisect_root(k2->minpoly(), i2);
    }
    FieldPtr l;
    try {
      l = NumberField::create(h, sel, name);
    } catch (const PreconditionError&) {
      throw PreconditionError("compositum: fields are not linearly disjoint");
    }
    std::vector<Rational> e(d1 * d2);
    e[0] = 1;
    AlgebraicNumber first(l, krylov_coords(t, mat_vec(a, e)));
    AlgebraicNumber second(l, krylov_coords(t, mat_vec(b, e)));
    return {l, first, second, c};
  }
  throw ConsistencyError("compositum: no primitive element found");
}

Subfield::Subfield(FieldPtr k, AlgebraicNumber generator_in_l) : k_(std::move(k)), generator_in_l_(std::move(generator_in_l)) {
  AlgebraicNumber pw(generator_in_l_.field(), Rational(1));
  for (int i = 0; i < k_->degree(); ++i) {
    power_columns_.push_back(pw.coords());
    pw = pw * generator_in_l_;
  }
}

std::optional<AlgebraicNumber> Subfield::try_to_sub(const AlgebraicNumber& x) const {
  if (!x.field()->same_as(*ambient())) throw PreconditionError("subfield: element from a different ambient field");
  auto c = solve_columns(power_columns_, x.coords(), Rational(0));
  if (!c) return std::nullopt;
  if (k_->degree() == 1) return AlgebraicNumber(k_, (*c)[0]);
  return AlgebraicNumber(k_, *c);
}

bool Subfield::contains(const AlgebraicNumber& x) const { return try_to_sub(x).has_value(); }

AlgebraicNumber Subfield::to_sub(const AlgebraicNumber& x) const {
  auto r = try_to_sub(x);
  if (!r) throw PreconditionError("element " + x.to_string() + " does not lie in the subfield");
  return *r;
}

AlgebraicNumber Subfield::to_ambient(const AlgebraicNumber& a) const {
  if (k_->degree() == 1) return AlgebraicNumber(ambient(), a.coords()[0]);
  return map_element(a, generator_in_l_);
}

Integer quadratic_discriminant_root(const FieldPtr& k) {
  if (k->degree() != 2) throw PreconditionError("field is not quadratic");
  Rational d = k->minpoly().coeff(1) * k->minpoly().coeff(1) - 4 * k->minpoly().coeff(0);
  return squarefree_kernel(d.get_num() * d.get_den());
}

Subfield generated_subfield(const FieldPtr& l, const std::vector<AlgebraicNumber>& elements, const std::string& name) {
  int dl = l->degree();
  RationalSpan span(dl);
  AlgebraicNumber one(l, Rational(1));
  span.add(one.coords());
  for (const auto& e : elements) span.add(e.coords());
  bool grew = true;
  while (grew) {
    grew = false;
    auto basis = span.original();
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j) {
        AlgebraicNumber p = AlgebraicNumber(l, basis[i]) * AlgebraicNumber(l, basis[j]);
        if (span.add(p.coords())) grew = true;
      }
  }
  int n = static_cast<int>(span.dimension());
  if (n == 1) return Subfield(NumberField::rationals(), AlgebraicNumber(l, Rational(0)));

  std::vector<AlgebraicNumber> basis;
  for (const auto& v : span.original()) basis.emplace_back(l, v);
  std::optional<AlgebraicNumber> gamma;
  for (std::size_t i = 1; i < basis.size() && !gamma; ++i)
    if (min_poly(basis[i]).degree() == n) gamma = basis[i];
  for (long c = 1; c <= 6 && !gamma; ++c) {
    AlgebraicNumber acc(l, Rational(0));
    for (std::size_t i = 1; i < basis.size(); ++i) acc = acc + Rational(c * static_cast<long>(i)) * basis[i];
    if (min_poly(acc).degree() == n) gamma = acc;
    for (std::size_t i = 1; i < basis.size() && !gamma; ++i)
      for (std::size_t j = i + 1; j < basis.size() && !gamma; ++j) {
        AlgebraicNumber cand = basis[i] + Rational(c) * basis[j];
        if (min_poly(cand).degree() == n) gamma = cand;
      }
  }
  if (!gamma) throw ConsistencyError("subfield: no primitive element found");

  QPoly m = min_poly(*gamma);
  AlgebraicNumber theta = *gamma;
  QPoly mk;
  if (n == 2) {
    Rational u = m.coeff(1), v = m.coeff(0);
    Rational disc = u * u - 4 * v;
    Integer dsq = squarefree_kernel(disc.get_num() * disc.get_den());
    Rational s2 = disc / dsq;
    // s2 is a rational square
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), s2.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), s2.get_den().get_mpz_t());
    Rational s(sn, sd);
    s.canonicalize();
    if (s * s != s2) throw ConsistencyError("subfield: quadratic normalization failed");
    AlgebraicNumber r = (1 / s) * (Rational(2) * *gamma + AlgebraicNumber(l, u));
    if (sign(r) < 0) r = -r;
    if (mpz_fdiv_ui(dsq.get_mpz_t(), 4) == 1) {
      theta = Rational(1, 2) * (AlgebraicNumber(l, Rational(1)) + r);
      Integer c0 = (dsq - 1) / 4;
      mk = QPoly(std::vector<Rational>{Rational(-c0), Rational(-1), Rational(1)});
    } else {
      theta = r;
      mk = QPoly(std::vector<Rational>{Rational(-dsq), Rational(0), Rational(1)});
    }
  } else {
    Integer den = 1;
    for (const auto& c : m.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    theta = Rational(den) * *gamma;
    std::vector<Rational> c(n + 1);
    Integer pw = 1;
    for (int i = n; i >= 0; --i) {
      c[i] = m.coeff(i) * pw;
      pw *= den;
    }
    mk = QPoly(std::move(c));
  }
  Interval sel = isolate_value(theta, l->distinguished(), mk);
  FieldPtr k = NumberField::create(mk, sel, name);
  return Subfield(k, theta);
}

}  // namespace congrig
