// SPDX-License-Identifier: Apache-2.0
#include "congrig/rational.hpp"

#include <algorithm>
#include <cctype>

#include "congrig/errors.hpp"

namespace congrig {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw PreconditionError("empty rational literal");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw PreconditionError("malformed rational literal '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  Rational r;
  r.get_num() = Integer(num);
  r.get_den() = Integer(den);
  if (r.get_den() == 0) throw PreconditionError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

int sign_of(const Rational& r) { return sgn(r); }

std::int64_t rational_mod(const Rational& r, std::int64_t m) {
  Integer mm(static_cast<long>(m));
  Integer den = r.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mm.get_mpz_t()) == 0)
    throw PreconditionError("denominator of " + to_string(r) + " is not invertible mod " +
                            std::to_string(m));
  Integer v = (r.get_num() * inv) % mm;
  if (v < 0) v += mm;
  return v.get_si();
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator*(const Rational& s, const Interval& a) {
  if (s >= 0) return {s * a.lo, s * a.hi};
  return {s * a.hi, s * a.lo};
}

namespace {

Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](Integer v) { return (v * v + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Integer diff = x - y;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(Integer n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<Integer> prime_factors(Integer n) {
  n = abs(n);
  std::vector<Integer> out;
  if (n == 0) return out;
  for (unsigned long p = 2; p < 10000 && p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  std::vector<Integer> rest;
  factor_into(n, rest);
  for (auto& r : rest) out.push_back(r);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t int_pow(std::int64_t base, unsigned exp) {
  std::int64_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace congrig
