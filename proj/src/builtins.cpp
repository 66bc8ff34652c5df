// SPDX-License-Identifier: Apache-2.0
#include "congrig/builtins.hpp"

#include <algorithm>
#include <mutex>

#include "congrig/errors.hpp"

namespace congrig {

namespace {

struct TakeuchiField {
  FieldPtr field;
  AlgebraicNumber r2, r3, r5;
};

const TakeuchiField& takeuchi_data() {
  static std::once_flag once;
  static TakeuchiField data;
  std::call_once(once, [] {
    auto q2 = NumberField::create(QPoly{-2, 0, 1}, {1, 2}, "Q(sqrt2)");
    auto q3 = NumberField::create(QPoly{-3, 0, 1}, {1, 2}, "Q(sqrt3)");
    auto q5 = NumberField::create(QPoly{-5, 0, 1}, {2, 3}, "Q(sqrt5)");
    auto c23 = compositum(q2, q3);
    auto c = compositum(c23.field, q5, "Q(sqrt2,sqrt3,sqrt5)");
    data.field = c.field;
    data.r2 = map_element(c23.first, c.first);
    data.r3 = map_element(c23.second, c.first);
    data.r5 = c.second;
  });
  return data;
}

Word commutator_squared() { return {{0, 1}, {1, 1}, {0, -1}, {1, -1}, {0, 1}, {1, 1}, {0, -1}, {1, -1}}; }

FuchsianRep takeuchi_a() {
  const auto& t = takeuchi_data();
  AlgebraicNumber one(t.field, Rational(1)), zero(t.field, Rational(0));
  Rational half(1, 2);
  Mat2 alpha{half * (one + t.r5), zero, zero, half * (t.r5 - one)};
  Mat2 beta{t.r3, t.r2, t.r2, t.r3};
  return load_group(t.field, {alpha, beta}, {"a", "b"}, {commutator_squared()}, "takeuchi-A");
}

FuchsianRep takeuchi_b() {
  const auto& t = takeuchi_data();
  AlgebraicNumber one(t.field, Rational(1)), zero(t.field, Rational(0));
  Rational half(1, 2);
  AlgebraicNumber r6 = t.r2 * t.r3;
  Mat2 alpha{t.r2 + one, zero, zero, t.r2 - one};
  Mat2 beta{half * r6, half * t.r2, half * t.r2, half * r6};
  return load_group(t.field, {alpha, beta}, {"a", "b"}, {commutator_squared()}, "takeuchi-B");
}

FuchsianRep modular() {
  auto q = NumberField::rationals();
  Mat2 t = Mat2::from_rationals(q, 1, 1, 0, 1);
  Mat2 s = Mat2::from_rationals(q, 0, -1, 1, 0);
  return load_group(q, {t, s}, {"T", "S"}, {{{1, 2}}, {{1, 1}, {0, 1}, {1, 1}, {0, 1}, {1, 1}, {0, 1}}}, "modular");
}

FuchsianRep conj_sqrt2_demo() {
  auto k = NumberField::create(QPoly{-2, 0, 1}, {1, 2}, "Q(sqrt2)");
  AlgebraicNumber r2 = AlgebraicNumber::generator(k), one(k, Rational(1)), zero(k, Rational(0));
  Mat2 a{one + r2, zero, zero, r2 - one};
  Mat2 b{r2, one, -one, zero};
  return load_group(k, {a, b}, {"A", "B"}, {{{1, 4}}}, "conj-sqrt2-demo");
}

FuchsianRep renamed_squares(const FuchsianRep& rep, const std::string& label) {
  FuchsianRep s = squares_subgroup(rep).rep;
  s.label = label;
  return s;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"modular",     "takeuchi-A",  "takeuchi-B",
                                              "takeuchi-A2", "takeuchi-B2", "conj-sqrt2-demo"};
  return names;
}

bool is_builtin(const std::string& name) {
  const auto& n = builtin_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

FieldPtr takeuchi_field() { return takeuchi_data().field; }

FuchsianRep builtin_group(const std::string& name) {
  if (name == "modular") return modular();
  if (name == "takeuchi-A") return takeuchi_a();
  if (name == "takeuchi-B") return takeuchi_b();
  if (name == "takeuchi-A2") return renamed_squares(takeuchi_a(), "takeuchi-A2");
  if (name == "takeuchi-B2") return renamed_squares(takeuchi_b(), "takeuchi-B2");
  if (name == "conj-sqrt2-demo") return conj_sqrt2_demo();
  throw PreconditionError("unknown built-in group \"" + name + "\"");
}

}  // namespace congrig
