// SPDX-License-Identifier: Apache-2.0
#include "congrig/galois_ring.hpp"

#include "congrig/errors.hpp"

namespace congrig {

GaloisRing::GaloisRing(std::uint64_t p, int m, int f) : p_(p), m_(m), f_(f), pm_(1) {
  if (m < 1) throw PreconditionError("Galois ring precision must be positive");
  residue_ = FiniteField::get(p, f);
  for (int i = 0; i < m; ++i) {
    if (pm_ > (std::int64_t{1} << 40) / static_cast<std::int64_t>(p))
      throw PreconditionError("Galois ring modulus too large");
    pm_ *= static_cast<std::int64_t>(p);
  }
  const auto& g = residue_->modulus();
  for (int i = 0; i < f; ++i) modulus_.push_back(static_cast<std::int64_t>(g.coeff(i)));
}

std::int64_t GaloisRing::md(__int128 x) const {
  __int128 r = x % pm_;
  if (r < 0) r += pm_;
  return static_cast<std::int64_t>(r);
}

std::uint64_t GaloisRing::size() const {
  std::uint64_t n = 1;
  for (int i = 0; i < f_; ++i) n *= static_cast<std::uint64_t>(pm_);
  return n;
}

GaloisRing::Elem GaloisRing::one() const { return from_int(1); }

GaloisRing::Elem GaloisRing::from_int(std::int64_t n) const {
  Elem e = zero();
  e[0] = md(n);
  return e;
}

GaloisRing::Elem GaloisRing::element(std::uint64_t index) const {
  Elem e(f_);
  for (int i = 0; i < f_; ++i) {
    e[i] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(pm_));
    index /= static_cast<std::uint64_t>(pm_);
  }
  return e;
}

std::uint64_t GaloisRing::index_of(const Elem& a) const {
  std::uint64_t idx = 0;
  for (int i = f_ - 1; i >= 0; --i) idx = idx * static_cast<std::uint64_t>(pm_) + static_cast<std::uint64_t>(a[i]);
  return idx;
}

GaloisRing::Elem GaloisRing::add(const Elem& a, const Elem& b) const {
  Elem r(f_);
  for (int i = 0; i < f_; ++i) r[i] = md(static_cast<__int128>(a[i]) + b[i]);
  return r;
}

GaloisRing::Elem GaloisRing::sub(const Elem& a, const Elem& b) const {
  Elem r(f_);
  for (int i = 0; i < f_; ++i) r[i] = md(static_cast<__int128>(a[i]) - b[i]);
  return r;
}

GaloisRing::Elem GaloisRing::neg(const Elem& a) const { return sub(zero(), a); }

GaloisRing::Elem GaloisRing::scale(const Elem& a, std::int64_t s) const {
  Elem r(f_);
  for (int i = 0; i < f_; ++i) r[i] = md(static_cast<__int128>(a[i]) * s);
  return r;
}

GaloisRing::Elem GaloisRing::mul(const Elem& a, const Elem& b) const {
  if (f_ == 1) return {md(static_cast<__int128>(a[0]) * b[0])};
  std::vector<__int128> prod(2 * f_ - 1, 0);
  for (int i = 0; i < f_; ++i)
    for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + static_cast<__int128>(a[i]) * b[j]) % pm_;
  // x^f = -sum modulus_i x^i
  for (int k = 2 * f_ - 2; k >= f_; --k) {
    __int128 c = prod[k] % pm_;
    if (c == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < f_; ++i) prod[k - f_ + i] = (prod[k - f_ + i] - c * modulus_[i]) % pm_;
  }
  Elem r(f_);
  for (int i = 0; i < f_; ++i) r[i] = md(prod[i]);
  return r;
}

bool GaloisRing::is_unit(const Elem& a) const { return residue(a) != 0; }

GaloisRing::Elem GaloisRing::inverse(const Elem& a) const {
  if (!is_unit(a)) throw PreconditionError("element of the Galois ring is not a unit");
  const auto& F = *residue_;
  auto c = F.coeffs(F.inv(residue(a)));
  Elem x(f_);
  for (int i = 0; i < f_; ++i) x[i] = static_cast<std::int64_t>(c[i]);
  // Newton iteration doubles the precision each step.
  Elem two = from_int(2);
  for (int prec = 1; prec < m_; prec *= 2) x = mul(x, sub(two, mul(a, x)));
  return x;
}

GaloisRing::Elem GaloisRing::frobenius(const Elem& a) const {
  if (f_ == 1) return a;
  if (f_ != 2) throw PreconditionError("Galois ring Frobenius is implemented for f <= 2 only");
  // xi -> -c1 - xi, the other root of x^2 + c1 x + c0
  return {md(static_cast<__int128>(a[0]) - static_cast<__int128>(a[1]) * modulus_[1]), md(-static_cast<__int128>(a[1]))};
}

int GaloisRing::valuation(const Elem& a) const {
  int v = m_;
  for (auto c : a) {
    if (c == 0) continue;
    int k = 0;
    while (c % static_cast<std::int64_t>(p_) == 0) {
      c /= static_cast<std::int64_t>(p_);
      ++k;
    }
    v = std::min(v, k);
  }
  return v;
}

FiniteField::Elem GaloisRing::residue(const Elem& a) const {
  std::vector<std::uint64_t> c(f_);
  for (int i = 0; i < f_; ++i) c[i] = static_cast<std::uint64_t>(a[i] % static_cast<std::int64_t>(p_));
  return residue_->from_coeffs(c);
}

GaloisRing::Elem GaloisRing::truncate(const Elem& a, int new_precision) const {
  std::int64_t n = 1;
  for (int i = 0; i < new_precision; ++i) n *= static_cast<std::int64_t>(p_);
  Elem r(f_);
  for (int i = 0; i < f_; ++i) r[i] = a[i] % n;
  return r;
}

}  // namespace congrig
