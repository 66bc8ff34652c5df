// SPDX-License-Identifier: Apache-2.0
#include "congrig/number_field.hpp"

#include <cmath>

#include "congrig/errors.hpp"
#include "congrig/fp_poly.hpp"

namespace congrig {

namespace {

bool irreducible_over_q(const QPoly& f, const Integer& disc) {
  if (f.degree() == 1) return true;
  for (std::uint64_t p = 3; p < 400; p += 2) {
    if (!is_prime(static_cast<std::int64_t>(p))) continue;
    if (disc % static_cast<unsigned long>(p) == 0) continue;
    if (is_irreducible(FpPoly::from_qpoly(f, p))) return true;
  }
  return !find_integer_factor_real_rooted(f).has_value();
}

}  // namespace

QPoly matrix_char_poly(const std::vector<std::vector<Rational>>& a) {
  std::size_t n = a.size();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        next[i][j] = s;
      }
      next[i][i] += c[n - k + 1];
    }
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * next[l][i];
    c[n - k] = -tr / static_cast<long>(k);
    m = std::move(next);
  }
  return QPoly(std::move(c));
}

std::vector<std::vector<Rational>> multiplication_matrix(const AlgebraicNumber& a) {
  int d = a.field()->degree();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  AlgebraicNumber col = a;
  AlgebraicNumber theta = AlgebraicNumber::generator(a.field());
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) m[i][j] = col.coords()[i];
    col = col * theta;
  }
  return m;
}

FieldPtr NumberField::create(const QPoly& minpoly, const Interval& root_selector, std::string name) {
  if (minpoly.degree() < 1) throw PreconditionError("minimal polynomial must have degree >= 1");
  if (!minpoly.is_monic() || !minpoly.has_integer_coeffs())
    throw PreconditionError("minimal polynomial must be monic with integer coefficients: " + minpoly.to_string());
  if (root_selector.lo > root_selector.hi) throw PreconditionError("root selector interval is empty");
  if (poly_gcd(minpoly, minpoly.derivative()).degree() > 0)
    throw PreconditionError("polynomial " + minpoly.to_string() + " is reducible (repeated factor)");

  std::shared_ptr<NumberField> k(new NumberField());
  k->minpoly_ = minpoly;
  k->name_ = std::move(name);
  k->roots_ = isolate_real_roots(minpoly);
  int d = minpoly.degree();
  if (static_cast<int>(k->roots_.size()) != d)
    throw PreconditionError("polynomial " + minpoly.to_string() + " has only " + std::to_string(k->roots_.size()) +
                            " of " + std::to_string(d) + " roots real; fields must be totally real");
  k->build_tables();
  if (!irreducible_over_q(minpoly, k->disc_))
    throw PreconditionError("polynomial " + minpoly.to_string() + " is reducible over Q");

  int found = -1, count = 0;
  for (int i = 0; i < d; ++i) {
    Interval& iv = k->roots_[i];
    while (!iv.inside(root_selector) && iv.overlaps(root_selector)) bisect_root(minpoly, iv);
    if (iv.inside(root_selector)) {
      found = i;
      ++count;
    }
  }
  if (count == 0) throw PreconditionError("root selector contains no root of " + minpoly.to_string());
  if (count > 1) throw PreconditionError("root selector contains several roots of " + minpoly.to_string());
  k->distinguished_ = found;
  Rational w(1);
  w /= Integer(1) << 64;
  for (auto& iv : k->roots_) refine_root(minpoly, iv, w);
  return k;
}

FieldPtr NumberField::rationals() {
  static const FieldPtr q = [] {
    std::shared_ptr<NumberField> k(new NumberField());
    k->minpoly_ = QPoly{0, 1};
    k->roots_ = {Interval{0, 0}};
    k->distinguished_ = 0;
    k->name_ = "Q";
    k->build_tables();
    return k;
  }();
  return q;
}

void NumberField::build_tables() {
  int d = degree();
  reduction_.clear();
  if (d >= 1) {
    std::vector<Rational> row(d);
    for (int i = 0; i < d; ++i) row[i] = -minpoly_.coeff(i);
    reduction_.push_back(row);
    for (int k = 1; k <= d - 2; ++k) {
      std::vector<Rational> next(d);
      const auto& prev = reduction_.back();
      for (int i = 1; i < d; ++i) next[i] = prev[i - 1];
      for (int i = 0; i < d; ++i) next[i] += prev[d - 1] * row[i];
      reduction_.push_back(next);
    }
  }
  // disc(f) = (-1)^(d(d-1)/2) N(f'(theta)) for monic f.
  if (d == 1) {
    disc_ = 1;
  } else {
    auto self = std::shared_ptr<const NumberField>(this, [](const NumberField*) {});
    AlgebraicNumber fp = AlgebraicNumber::from_poly(self, minpoly_.derivative());
    Rational n = field_norm(fp);
    if ((d * (d - 1) / 2) % 2) n = -n;
    disc_ = n.get_num();
  }
}

FieldPtr NumberField::with_distinguished(int index) const {
  if (index < 0 || index >= embedding_count()) throw PreconditionError("embedding index out of range");
  std::shared_ptr<NumberField> k(new NumberField(*this));
  k->distinguished_ = index;
  return k;
}

bool NumberField::same_as(const NumberField& other) const {
  if (this == &other) return true;
  return distinguished_ == other.distinguished_ && minpoly_ == other.minpoly_;
}

// ---------------------------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  int d = field_->degree();
  if (static_cast<int>(coords_.size()) > d) {
    *this = from_poly(field_, QPoly(coords_));
    return;
  }
  coords_.resize(d);
}

AlgebraicNumber::AlgebraicNumber(FieldPtr field, const Rational& value) : field_(std::move(field)) {
  coords_.assign(field_->degree(), Rational(0));
  coords_[0] = value;
}

AlgebraicNumber AlgebraicNumber::generator(FieldPtr field) {
  if (field->degree() == 1) {
    // theta is the root of the linear minpoly
    return AlgebraicNumber(field, -field->minpoly().coeff(0));
  }
  std::vector<Rational> c(field->degree());
  c[1] = 1;
  return AlgebraicNumber(std::move(field), std::move(c));
}

AlgebraicNumber AlgebraicNumber::from_poly(FieldPtr field, const QPoly& p) {
  int d = field->degree();
  std::vector<Rational> c(d);
  const auto& pc = p.coeffs();
  for (int i = 0; i < std::min<int>(d, pc.size()); ++i) c[i] = pc[i];
  const auto& table = field->reduction_table();
  if (d == 1) {
    Rational theta = -field->minpoly().coeff(0);
    Rational acc = 0;
    for (int i = static_cast<int>(pc.size()) - 1; i >= 0; --i) acc = acc * theta + pc[i];
    c[0] = acc;
  } else {
    // Fold high powers from the top using x^(d+k) rows; higher than 2d-2 by repetition.
    std::vector<Rational> work(pc.begin(), pc.end());
    for (int i = static_cast<int>(work.size()) - 1; i >= d; --i) {
      if (work[i] == 0) continue;
      Rational coef = work[i];
      work[i] = 0;
      // x^i = x^(i-d) * x^d
      for (int j = 0; j < d; ++j) work[i - d + j] += coef * table[0][j];
    }
    for (int i = 0; i < d; ++i) c[i] = i < static_cast<int>(work.size()) ? work[i] : Rational(0);
  }
  AlgebraicNumber r;
  r.field_ = std::move(field);
  r.coords_ = std::move(c);
  return r;
}

bool AlgebraicNumber::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool AlgebraicNumber::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rational AlgebraicNumber::rational_value() const {
  if (!is_rational()) throw PreconditionError("element " + to_string() + " is not rational");
  return coords_.empty() ? Rational(0) : coords_[0];
}

void require_same_field(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (!a.field() || !b.field() || !a.field()->same_as(*b.field()))
    throw PreconditionError("field mismatch in algebraic number arithmetic");
}

AlgebraicNumber AlgebraicNumber::operator-() const {
  AlgebraicNumber r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  require_same_field(a, b);
  AlgebraicNumber r = a;
  for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] += b.coords_[i];
  return r;
}

AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  require_same_field(a, b);
  AlgebraicNumber r = a;
  for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] -= b.coords_[i];
  return r;
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  require_same_field(a, b);
  int d = a.field_->degree();
  if (d == 1) return AlgebraicNumber(a.field_, a.coords_[0] * b.coords_[0]);
  std::vector<Rational> prod(2 * d - 1);
  for (int i = 0; i < d; ++i) {
    if (a.coords_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b.coords_[j] == 0) continue;
      prod[i + j] += a.coords_[i] * b.coords_[j];
    }
  }
  const auto& table = a.field_->reduction_table();
  std::vector<Rational> c(prod.begin(), prod.begin() + d);
  for (int k = 0; k <= d - 2; ++k) {
    const Rational& h = prod[d + k];
    if (h == 0) continue;
    for (int i = 0; i < d; ++i) c[i] += h * table[k][i];
  }
  AlgebraicNumber r;
  r.field_ = a.field_;
  r.coords_ = std::move(c);
  return r;
}

AlgebraicNumber operator*(const Rational& s, const AlgebraicNumber& a) {
  AlgebraicNumber r = a;
  for (auto& c : r.coords_) c *= s;
  return r;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero in number field");
  if (field_->degree() == 1) return AlgebraicNumber(field_, 1 / coords_[0]);
  // Extended Euclid: find u with u*a = 1 mod minpoly.
  QPoly r0 = field_->minpoly(), r1 = as_poly();
  QPoly s0, s1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw ConsistencyError("minimal polynomial not irreducible during inversion");
  return from_poly(field_, (1 / r0.coeff(0)) * s0);
}

AlgebraicNumber AlgebraicNumber::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  AlgebraicNumber result(field_, Rational(1)), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  require_same_field(a, b);
  return a * b.inverse();
}

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  require_same_field(a, b);
  return a.coords_ == b.coords_;
}

Interval AlgebraicNumber::enclosure(int embedding, const Rational& width) const {
  QPoly p = as_poly();
  if (is_rational()) return {coords_[0], coords_[0]};
  Interval iv = field_->root_interval(embedding);
  while (true) {
    Interval v = p.eval(iv);
    if (v.width() <= width || iv.is_point()) return v;
    for (int i = 0; i < 8; ++i) bisect_root(field_->minpoly(), iv);
  }
}

double AlgebraicNumber::approx(int embedding) const {
  Rational w(1);
  w /= Integer(1) << 60;
  Interval v = enclosure(embedding, w);
  return Rational((v.lo + v.hi) / 2).get_d();
}

std::string AlgebraicNumber::to_string(const std::string& var) const {
  if (field_->degree() == 1) return coords_[0].get_str();
  return as_poly().to_string(var);
}

QPoly char_poly(const AlgebraicNumber& a) { return matrix_char_poly(multiplication_matrix(a)); }

QPoly min_poly(const AlgebraicNumber& a) { return squarefree_part(char_poly(a)); }

Rational field_trace(const AlgebraicNumber& a) {
  QPoly c = char_poly(a);
  return -c.coeff(c.degree() - 1);
}

Rational field_norm(const AlgebraicNumber& a) {
  QPoly c = char_poly(a);
  Rational n = c.coeff(0);
  return c.degree() % 2 ? -n : n;
}

int sign_at(const AlgebraicNumber& a, int embedding) {
  if (a.is_zero()) return 0;
  if (a.is_rational()) return sgn(a.coords()[0]);
  const auto& field = a.field();
  Interval iv = field->root_interval(embedding);
  QPoly p = a.as_poly();
  while (true) {
    Interval v = p.eval(iv);
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    for (int i = 0; i < 8; ++i) bisect_root(field->minpoly(), iv);
  }
}

int sign(const AlgebraicNumber& a) { return sign_at(a, a.field()->distinguished()); }

namespace {

// Index of the isolating interval of `roots` that contains sigma_i(c).
std::size_t locate_root(const AlgebraicNumber& c, int embedding, const std::vector<Interval>& roots) {
  Rational w(1, 1 << 8);
  while (true) {
    Interval v = c.enclosure(embedding, w);
    std::size_t hits = 0, last = 0;
    for (std::size_t r = 0; r < roots.size(); ++r) {
      if (v.overlaps(roots[r])) {
        ++hits;
        last = r;
      }
    }
    if (hits == 1) return last;
    if (hits == 0) throw ConsistencyError("embedded value lies outside every root of its minimal polynomial");
    w /= Rational(1 << 16);
  }
}

}  // namespace

std::strong_ordering compare_abs(const AlgebraicNumber& a, const AlgebraicNumber& b, int i, int j) {
  require_same_field(a, b);
  AlgebraicNumber c = a * a, e = b * b;
  bool equal = false;
  if (i == j) {
    equal = (c == e);
  } else if (c.is_zero() || e.is_zero()) {
    equal = c.is_zero() && e.is_zero();
  } else {
    QPoly mc = min_poly(c), me = min_poly(e);
    if (mc == me) {
      auto roots = isolate_real_roots(mc);
      equal = locate_root(c, i, roots) == locate_root(e, j, roots);
    }
  }
  if (equal) return std::strong_ordering::equal;
  Rational w(1, 1 << 16);
  while (true) {
    Interval x = c.enclosure(i, w), y = e.enclosure(j, w);
    if (x.hi < y.lo) return std::strong_ordering::less;
    if (y.hi < x.lo) return std::strong_ordering::greater;
    w /= Rational(1 << 16);
  }
}

RealIntegralFlags is_totally_real_integral(const AlgebraicNumber& a) {
  return {a.field()->totally_real(), char_poly(a).has_integer_coeffs()};
}

}  // namespace congrig
