// SPDX-License-Identifier: Apache-2.0
#include "congrig/prime_ideal.hpp"

#include "congrig/errors.hpp"

namespace congrig {

std::uint64_t PrimeIdealData::norm() const {
  std::uint64_t q = 1;
  for (int i = 0; i < residue_degree; ++i) q *= p;
  return q;
}

std::string PrimeIdealData::to_string() const {
  if (field->degree() == 1) return "(" + std::to_string(p) + ")";
  return "(" + std::to_string(p) + ", " + local_factor.to_string("t") + ")";
}

bool is_good_prime(const FieldPtr& field, std::uint64_t p) {
  if (p < 3 || !is_prime(static_cast<std::int64_t>(p))) return false;
  return field->discriminant() % static_cast<unsigned long>(p) != 0;
}

std::vector<PrimeIdealData> factor_prime(const FieldPtr& field, std::uint64_t p) {
  if (p == 2) throw PreconditionError("p = 2 is not supported");
  if (!is_prime(static_cast<std::int64_t>(p))) throw PreconditionError(std::to_string(p) + " is not prime");
  if (!is_good_prime(field, p))
    throw PreconditionError(std::to_string(p) + " divides the discriminant of " + field->minpoly().to_string());
  FpPoly f = FpPoly::from_qpoly(field->minpoly(), p);
  std::vector<PrimeIdealData> out;
  for (const auto& g : factor_squarefree(f)) {
    PrimeIdealData d;
    d.field = field;
    d.p = p;
    d.local_factor = g;
    d.residue_degree = g.degree();
    std::uint64_t q = d.norm();
    if (q <= FiniteField::kMaxOrder) {
      d.residue_field = FiniteField::get(p, d.residue_degree);
      auto roots = d.residue_field->roots(g);
      if (roots.empty()) throw ConsistencyError("local factor has no root in its residue field");
      d.theta_image = roots.front();
    }
    out.push_back(std::move(d));
  }
  return out;
}

FiniteField::Elem residue_reduce(const Rational& a, const PrimeIdealData& prime) {
  if (!prime.residue_field) throw PreconditionError("residue field of " + prime.to_string() + " is too large");
  if (a.get_den() % static_cast<unsigned long>(prime.p) == 0)
    throw PreconditionError("denominator of " + a.get_str() + " is divisible by " + std::to_string(prime.p));
  return prime.residue_field->from_int(rational_mod(a, static_cast<std::int64_t>(prime.p)));
}

FiniteField::Elem residue_reduce(const AlgebraicNumber& a, const PrimeIdealData& prime) {
  if (!a.field()->same_as(*prime.field) && a.field()->minpoly() != prime.field->minpoly())
    throw PreconditionError("element and prime ideal live in different fields");
  if (!prime.residue_field) throw PreconditionError("residue field of " + prime.to_string() + " is too large");
  const auto& ff = *prime.residue_field;
  FiniteField::Elem acc = 0;
  const auto& c = a.coords();
  if (prime.field->degree() == 1) return residue_reduce(c[0], prime);
  for (std::size_t i = c.size(); i-- > 0;) acc = ff.add(ff.mul(acc, prime.theta_image), residue_reduce(c[i], prime));
  return acc;
}

}  // namespace congrig
