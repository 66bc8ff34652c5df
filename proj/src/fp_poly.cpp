// SPDX-License-Identifier: Apache-2.0
#include "congrig/fp_poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <tuple>

#include "congrig/errors.hpp"

namespace congrig {

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& x : c_) x %= p_;
  trim();
}

FpPoly FpPoly::from_qpoly(const QPoly& f, std::uint64_t p) {
  std::vector<std::uint64_t> v;
  for (const auto& c : f.coeffs()) v.push_back(static_cast<std::uint64_t>(rational_mod(c, p)));
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * a % m);
    a = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * a % m);
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw PreconditionError("element not invertible modulo " + std::to_string(p));
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  std::uint64_t inv = mod_inverse(c_.back(), p_);
  std::vector<std::uint64_t> v(c_);
  for (auto& x : v) x = x * inv % p_;
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::derivative() const {
  std::vector<std::uint64_t> v;
  for (int i = 1; i <= degree(); ++i) v.push_back(c_[i] * (i % p_) % p_);
  return FpPoly(p_, std::move(v));
}

std::uint64_t FpPoly::eval(std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (int i = degree(); i >= 0; --i) acc = (acc * x + c_[i]) % p_;
  return acc;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = (v[i] + b.c_[i]) % a.p_;
  return FpPoly(a.p_, std::move(v));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = (v[i] + a.p_ - b.c_[i]) % a.p_;
  return FpPoly(a.p_, std::move(v));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
  std::vector<std::uint64_t> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = (v[i + j] + a.c_[i] * b.c_[j]) % a.p_;
  }
  return FpPoly(a.p_, std::move(v));
}

bool operator<(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  return false;
}

std::string FpPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (c_[i] != 1 || i == 0) os << c_[i];
    if (i > 0) {
      if (c_[i] != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::uint64_t p = a.prime();
  std::vector<std::uint64_t> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {FpPoly(p, {}), a};
  std::vector<std::uint64_t> q(a.degree() - db + 1, 0);
  std::uint64_t inv = mod_inverse(b.coeffs().back(), p);
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    std::uint64_t f = r[i] * inv % p;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] = (r[i - db + j] + p - f * b.coeffs()[j] % p) % p;
  }
  return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

FpPoly poly_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly powmod(const FpPoly& base, const Integer& exp, const FpPoly& modulus) {
  FpPoly result(base.prime(), {1});
  FpPoly b = divmod(base, modulus).second;
  std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = divmod(result * result, modulus).second;
    if (mpz_tstbit(exp.get_mpz_t(), i)) result = divmod(result * b, modulus).second;
  }
  return result;
}

bool is_squarefree(const FpPoly& f) {
  if (f.degree() < 1) return true;
  FpPoly d = f.derivative();
  if (d.is_zero()) return false;
  return poly_gcd(f, d).degree() == 0;
}

bool is_irreducible(const FpPoly& f) {
  int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  std::uint64_t p = f.prime();
  FpPoly g = f.monic();
  FpPoly x = FpPoly::x(p);
  // Rabin: x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for primes r | n.
  Integer pz(static_cast<unsigned long>(p));
  FpPoly h = x;
  std::vector<FpPoly> powers(n + 1, x);
  for (int i = 1; i <= n; ++i) {
    h = powmod(h, pz, g);
    powers[i] = h;
  }
  if (!(powers[n] == divmod(x, g).second)) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r) continue;
    bool prime = true;
    for (int d = 2; d * d <= r; ++d)
      if (r % d == 0) prime = false;
    if (!prime) continue;
    if (poly_gcd(g, powers[n / r] - x).degree() != 0) return false;
  }
  return true;
}

namespace {

void equal_degree_split(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  std::uint64_t p = f.prime();
  Integer pd = 1;
  for (int i = 0; i < d; ++i) pd *= static_cast<unsigned long>(p);
  Integer e = (pd - 1) / 2;
  while (true) {
    std::vector<std::uint64_t> v(f.degree());
    for (auto& c : v) c = rng() % p;
    FpPoly a(p, v);
    if (a.degree() < 1) continue;
    FpPoly g = poly_gcd(f, a);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(divmod(f, g).first, d, rng, out);
      return;
    }
    FpPoly b = powmod(a, e, f) - FpPoly(p, {1});
    g = poly_gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(divmod(f, g).first, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FpPoly> factor_squarefree(const FpPoly& f_in) {
  FpPoly f = f_in.monic();
  if (!is_squarefree(f)) throw PreconditionError("polynomial is not squarefree mod " + std::to_string(f.prime()));
  std::uint64_t p = f.prime();
  Integer pz(static_cast<unsigned long>(p));
  std::vector<FpPoly> out;
  std::mt19937_64 rng(0x5eed5eedULL);
  FpPoly x = FpPoly::x(p);
  FpPoly h = x;
  for (int d = 1; f.degree() >= 2 * d; ++d) {
    h = powmod(h, pz, f);
    FpPoly g = poly_gcd(f, h - x);
    if (g.degree() > 0) {
      equal_degree_split(g, d, rng, out);
      f = divmod(f, g).first.monic();
      h = divmod(h, f).second;
    }
  }
  if (f.degree() > 0) out.push_back(f.monic());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace congrig
