// SPDX-License-Identifier: Apache-2.0
#include "congrig/finite_field.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "congrig/errors.hpp"

namespace congrig {

namespace {

std::vector<std::uint64_t> digits(std::uint64_t n, std::uint64_t p, int f) {
  std::vector<std::uint64_t> d(f);
  for (int i = 0; i < f; ++i) {
    d[i] = n % p;
    n /= p;
  }
  return d;
}

}  // namespace

std::shared_ptr<const FiniteField> FiniteField::get(std::uint64_t p, int f) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, f);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const FiniteField> ff(new FiniteField(p, f));
  cache.emplace(key, ff);
  return ff;
}

FiniteField::FiniteField(std::uint64_t p, int f) : p_(p), f_(f), q_(1), modulus_(p, {0, 1}) {
  if (p == 2) throw PreconditionError("characteristic 2 is not supported");
  if (!is_prime(static_cast<std::int64_t>(p))) throw PreconditionError(std::to_string(p) + " is not prime");
  if (f < 1) throw PreconditionError("extension degree must be positive");
  for (int i = 0; i < f; ++i) {
    q_ *= p;
    if (q_ > kMaxOrder) throw PreconditionError("finite field of order " + std::to_string(p) + "^" + std::to_string(f) +
                                                " exceeds the table limit");
  }
  if (f > 1) {
    for (std::uint64_t n = 0; n < q_; ++n) {
      auto c = digits(n, p, f);
      c.push_back(1);
      FpPoly g(p, c);
      if (is_irreducible(g)) {
        modulus_ = g;
        break;
      }
    }
  }
  // primitive element by trial
  std::uint64_t n = q_ - 1;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t r = 2, m = n; r <= m; ++r) {
    if (m % r) continue;
    primes.push_back(r);
    while (m % r == 0) m /= r;
  }
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  Elem g = 0;
  for (Elem cand = 1; cand < q_; ++cand) {
    bool ok = true;
    for (auto r : primes)
      if (slow_pow(cand, n / r) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      g = cand;
      break;
    }
  }
  exp_.resize(2 * n);
  log_.assign(q_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = exp_[i + n] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = slow_mul(x, g);
  }
}

FiniteField::Elem FiniteField::slow_mul(Elem a, Elem b) const {
  FpPoly pa(p_, digits(a, p_, f_)), pb(p_, digits(b, p_, f_));
  FpPoly r = divmod(pa * pb, modulus_).second;
  return from_coeffs(r.coeffs());
}

FiniteField::Elem FiniteField::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::from_coeffs(const std::vector<std::uint64_t>& c) const {
  if (static_cast<int>(c.size()) > f_) throw PreconditionError("too many coefficients for finite field element");
  std::uint64_t e = 0;
  for (std::size_t i = c.size(); i-- > 0;) e = e * p_ + c[i] % p_;
  return static_cast<Elem>(e);
}

std::vector<std::uint64_t> FiniteField::coeffs(Elem a) const { return digits(a, p_, f_); }

FiniteField::Elem FiniteField::generator_x() const {
  if (f_ == 1) return from_int(0);
  return static_cast<Elem>(p_);
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (f_ == 1) return static_cast<Elem>((a + b) % p_);
  std::uint64_t out = 0, pw = 1;
  for (int i = 0; i < f_; ++i) {
    out += ((a % p_ + b % p_) % p_) * pw;
    a /= p_;
    b /= p_;
    pw *= p_;
  }
  return static_cast<Elem>(out);
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  std::uint64_t out = 0, pw = 1;
  for (int i = 0; i < f_; ++i) {
    out += ((p_ - a % p_) % p_) * pw;
    a /= p_;
    pw *= p_;
  }
  return static_cast<Elem>(out);
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw PreconditionError("division by zero in F_" + std::to_string(q_));
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<unsigned __int128>(log_[a]) * e) % (q_ - 1)];
}

FiniteField::Elem FiniteField::frobenius(Elem a, int times) const {
  for (int i = 0; i < times; ++i) a = pow(a, p_);
  return a;
}

bool FiniteField::is_square(Elem a) const { return a == 0 || log_[a] % 2 == 0; }

FiniteField::Elem FiniteField::sqrt(Elem a) const {
  if (!is_square(a)) throw PreconditionError("element is not a square");
  if (a == 0) return 0;
  Elem r = exp_[log_[a] / 2];
  Elem s = neg(r);
  return std::min(r, s);
}

FiniteField::Elem FiniteField::eval(const FpPoly& g, Elem x) const {
  Elem acc = 0;
  for (int i = g.degree(); i >= 0; --i) acc = add(mul(acc, x), from_int(static_cast<std::int64_t>(g.coeffs()[i])));
  return acc;
}

std::vector<FiniteField::Elem> FiniteField::roots(const FpPoly& g) const {
  std::vector<Elem> out;
  for (std::uint64_t x = 0; x < q_; ++x)
    if (eval(g, static_cast<Elem>(x)) == 0) out.push_back(static_cast<Elem>(x));
  return out;
}

std::string FiniteField::to_string(Elem a) const {
  if (f_ == 1) return std::to_string(a);
  auto c = coeffs(a);
  return FpPoly(p_, c).to_string("z");
}

}  // namespace congrig
