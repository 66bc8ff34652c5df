// SPDX-License-Identifier: Apache-2.0
#include "congrig/qpoly.hpp"

#include <algorithm>
#include <sstream>

#include "congrig/errors.hpp"

namespace congrig {

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly::QPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[i];
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  QPoly r = *this;
  Rational lc = leading();
  for (auto& x : r.c_) x /= lc;
  return r;
}

QPoly QPoly::derivative() const {
  std::vector<Rational> v;
  for (int i = 1; i <= degree(); ++i) v.push_back(c_[i] * i);
  return QPoly(std::move(v));
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
  return acc;
}

Interval QPoly::eval(const Interval& x) const {
  Interval acc{0, 0};
  for (int i = degree(); i >= 0; --i) {
    acc = acc * x;
    acc.lo += c_[i];
    acc.hi += c_[i];
  }
  return acc;
}

bool QPoly::has_integer_coeffs() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return is_integer(r); });
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return QPoly(std::move(v));
}

QPoly operator*(const Rational& s, const QPoly& a) {
  QPoly r = a;
  for (auto& x : r.c_) x *= s;
  r.trim();
  return r;
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1);
    if (!unit || i == 0) os << mag.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {QPoly{}, a};
  std::vector<Rational> q(a.degree() - db + 1);
  const Rational& lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Rational f = r[i] / lb;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeffs()[j];
  }
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly poly_gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

QPoly poly_pow(const QPoly& a, unsigned e) {
  QPoly r = QPoly::constant(1);
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

QPoly squarefree_part(const QPoly& f) {
  if (f.degree() <= 0) return f.monic();
  QPoly g = poly_gcd(f, f.derivative());
  return divmod(f, g).first.monic();
}

std::vector<QPoly> sturm_sequence(const QPoly& f) {
  std::vector<QPoly> seq{f, f.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    QPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

namespace {

int variations(const std::vector<QPoly>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    int s = sgn(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

Rational cauchy_bound(const QPoly& f) {
  Rational m = 0;
  for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rational(abs(f.coeffs()[i] / f.leading())));
  return m + 1;
}

}  // namespace

int count_roots(const std::vector<QPoly>& sturm, const Rational& a, const Rational& b) {
  return variations(sturm, a) - variations(sturm, b);
}

int count_roots_closed(const QPoly& f, const Interval& iv) {
  auto seq = sturm_sequence(f);
  int n = count_roots(seq, iv.lo, iv.hi);
  if (f.eval(iv.lo) == 0) ++n;
  return n;
}

std::vector<Interval> isolate_real_roots(const QPoly& f) {
  std::vector<Interval> out;
  if (f.degree() < 1) return out;
  auto seq = sturm_sequence(f);
  Rational bound = cauchy_bound(f);
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    int n = count_roots(seq, a, b);
    if (n == 0) continue;
    if (n > 1) {
      Rational m = (a + b) / 2;
      stack.push_back({m, b});
      stack.push_back({a, m});
      continue;
    }
    if (f.eval(b) == 0) {
      out.push_back({b, b});
      continue;
    }
    bool exact = false;
    while (f.eval(a) == 0) {
      Rational m = (a + b) / 2;
      if (f.eval(m) == 0) {
        out.push_back({m, m});
        exact = true;
        break;
      }
      if (count_roots(seq, m, b) == 1)
        a = m;
      else
        b = m;
    }
    if (!exact) out.push_back({a, b});
  }
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  return out;
}

void bisect_root(const QPoly& f, Interval& iv) {
  if (iv.is_point()) return;
  Rational m = (iv.lo + iv.hi) / 2;
  int sm = sgn(f.eval(m));
  if (sm == 0) {
    iv = {m, m};
    return;
  }
  if (sgn(f.eval(iv.lo)) * sm < 0)
    iv.hi = m;
  else
    iv.lo = m;
}

void refine_root(const QPoly& f, Interval& iv, const Rational& width) {
  while (!iv.is_point() && iv.width() > width) bisect_root(f, iv);
}

namespace {

struct SubsetState {
  std::vector<int> idx;
};

// Coefficient intervals of prod (x - r_i) over the chosen roots.
std::vector<Interval> subset_product(const std::vector<Interval>& roots, const std::vector<int>& idx) {
  std::vector<Interval> poly{{1, 1}};
  for (int i : idx) {
    std::vector<Interval> next(poly.size() + 1, Interval{0, 0});
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] = next[j + 1] + poly[j];
      next[j] = next[j] - poly[j] * roots[i];
    }
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

std::optional<QPoly> find_integer_factor_real_rooted(const QPoly& f) {
  if (!f.is_monic() || !f.has_integer_coeffs())
    throw PreconditionError("factor search expects a monic integer polynomial");
  int d = f.degree();
  auto roots = isolate_real_roots(f);
  if (static_cast<int>(roots.size()) != d)
    throw PreconditionError("factor search expects all roots real and simple");
  if (d < 2) return std::nullopt;

  std::vector<SubsetState> pending;
  for (int k = 1; k <= d / 2; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      pending.push_back({idx});
      int i = k - 1;
      while (i >= 0 && idx[i] == d - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  Rational width(1, 1 << 20);
  while (!pending.empty()) {
    for (auto& r : roots) refine_root(f, r, width);
    std::vector<SubsetState> still;
    for (auto& s : pending) {
      auto coeffs = subset_product(roots, s.idx);
      bool impossible = false, ambiguous = false;
      std::vector<Rational> cand;
      for (const auto& iv : coeffs) {
        Integer lo = ceil_of(iv.lo), hi = floor_of(iv.hi);
        if (lo > hi) {
          impossible = true;
          break;
        }
        if (lo != hi) ambiguous = true;
        cand.emplace_back(lo);
      }
      if (impossible) continue;
      if (ambiguous) {
        still.push_back(s);
        continue;
      }
      QPoly g(cand);
      if (divmod(f, g).second.is_zero()) return g;
    }
    pending = std::move(still);
    width /= Rational(1 << 20);
  }
  return std::nullopt;
}

}  // namespace congrig
