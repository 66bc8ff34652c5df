// SPDX-License-Identifier: Apache-2.0
// Acceptance runner: prints one PASS/FAIL line per criterion. With an argument
// N only criterion N runs. The exit status is nonzero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "congrig/builtins.hpp"
#include "congrig/errors.hpp"
#include "congrig/local_structure.hpp"
#include "congrig/quaternion_order.hpp"
#include "congrig/reduction.hpp"
#include "congrig/rigidity.hpp"

using namespace congrig;

namespace {

// Collects failed sub-checks so a criterion can explain itself.
class Ledger {
 public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (!ok && failures_.size() < 6) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << (total_ - failed_) << "/" << total_ << " checks";
    for (const auto& f : failures_) s << "; " << f;
    if (failed_ > failures_.size()) s << "; ...";
    return s.str();
  }

 private:
  std::size_t total_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

std::string str(std::uint64_t x) { return std::to_string(x); }

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = lo; p <= hi; ++p)
    if (is_prime(static_cast<std::int64_t>(p))) out.push_back(p);
  return out;
}

void ac1(Ledger& L) {
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> expected{
      {5, 60}, {7, 168}, {9, 360}, {11, 660}, {13, 1092}};
  for (auto [q, order] : expected) {
    auto [p, f] = split_prime_power(q);
    PSL2 g = PSL2::over(p, f);
    L.check(psl2_order(q) == order, "formula at q=" + str(q));
    L.check(group_closure(g, standard_generators(g)).order == order, "enumeration at q=" + str(q));
  }
  for (std::uint64_t q : {5, 7, 9}) {
    auto [p, f] = split_prime_power(q);
    L.check(simplicity_certificate(PSL2::over(p, f)).simple, "simplicity at q=" + str(q));
  }
}

void ac2(Ledger& L) {
  for (std::uint64_t q : {3, 5, 7}) {
    auto r = local_ramified(q, 1);
    L.check(r.level1_cyclic && r.level1_order == q + 1, "ramified level 1 at q=" + str(q));
  }
  const std::vector<std::pair<std::uint64_t, int>> ramified{{3, 5}, {5, 4}, {7, 3}};
  for (auto [q, m] : ramified) {
    auto r = local_ramified(q, m);
    for (const auto& st : r.steps)
      L.check(st.order == q, "ramified step " + std::to_string(st.level) + "->" + std::to_string(st.level + 1) +
                                 " at q=" + str(q) + " has order " + str(st.order) + ", not " + str(q));
  }
  for (std::uint64_t q : {3, 5}) {
    auto r = local_unramified(q, 3);
    for (const auto& st : r.steps)
      L.check(st.kernel_order == q * q * q && st.all_trace_zero && st.exponent_p && st.additive &&
                  st.lift_surjective,
              "unramified step kernel at q=" + str(q));
  }
  for (auto [q, r] : std::vector<std::pair<std::uint64_t, int>>{{3, 2}, {5, 2}}) {
    auto rep = local_unramified(q, r);
    L.check(rep.enumerated_order && Integer(static_cast<unsigned long>(*rep.enumerated_order)) == rep.order,
            "unramified enumeration at q=" + str(q));
  }
  auto acc = composition_account(5, 2, false);
  Integer prod = 1;
  for (const auto& x : acc.group_factors) prod *= x;
  L.check(prod == 15000 && acc.group_order == 15000, "composition product");
}

void ac3(Ledger& L) {
  auto r = crt_quotient_check(NumberField::rationals(), {{3, 1}, {5, 1}});
  L.check(r.sl_order == 2880 && r.product_order == 2880, "SL(2, Z/15) order");
  L.check(r.bijective, "componentwise map bijective");
  L.check(r.psl_kernel_order == 2 && r.kernel_rank == 1 && r.kernel_elementary_abelian, "PSL kernel (Z/2)^1");
}

void ac4(Ledger& L) {
  for (const char* name : {"modular", "takeuchi-A2", "takeuchi-B2"}) {
    auto rep = builtin_group(name);
    auto order = order_basis(rep);
    for (auto p : primes_between(5, 31)) {
      if (order.is_bad(p)) continue;
      auto h = reduction_hom(rep, order, factor_prime(order.k.field(), p).at(0));
      L.check(h.surjective.value_or(false) && h.image_order == psl2_order(p),
              std::string(name) + " at p=" + str(p));
    }
  }
}

void ac5(Ledger& L) {
  std::mt19937_64 rng(0xac5);
  for (const auto& name : builtin_names()) {
    auto rep = tfc_model(builtin_group(name));
    auto order = order_basis(rep);
    for (auto p : primes_between(3, 31)) {
      if (order.is_bad(p)) continue;
      for (const auto& prime : factor_prime(order.k.field(), p)) {
        auto h = reduction_hom(rep, order, prime);
        const PSL2& g = h.group;
        Mat2q c = g.random_gl(rng);
        int e = static_cast<int>(rng() % g.field().degree());
        std::vector<Mat2q> twisted;
        for (const auto& m : h.images)
          twisted.push_back(g.canonical(g.raw_mul(g.raw_mul(c, g.frobenius(m, e)), g.gl_inverse(c))));
        std::string what = name + " at " + prime.to_string();
        try {
          auto id = identify_quotient(rep, order, g, twisted);
          L.check(id.prime.to_string() == prime.to_string(), what);
        } catch (const Error& ex) {
          L.check(false, what + ": " + ex.what());
        }
      }
    }
  }
}

void ac6(Ledger& L) {
  auto a = builtin_group("takeuchi-A"), b = builtin_group("takeuchi-B");
  for (const auto* rep : {&a, &b}) {
    L.check(!rep->relators.empty(), rep->label + " has its relator");
    for (const auto& r : rep->relators)
      L.check(word_matrix(*rep, r).is_projective_identity(), rep->label + " relator holds");
    L.check(is_arithmetic(*rep, true).arithmetic, rep->label + " arithmetic");
    L.check(invariant_trace_field(*rep).degree() == 1, rep->label + " invariant trace field Q");
  }
  auto r = rigidity(a, b, {0, 1}, 2, 31);
  L.check(r.contradicted && r.witness_row.has_value(), "rigidity finds a contradiction");
  if (r.witness_row) {
    const auto& row = r.rows[*r.witness_row];
    L.check(word_to_string(row.word_a, a.labels) == "a^2", "witness word a^2");
    L.check(row.chi_a == QPoly{-9, 1} && row.chi_b == QPoly{-36, 1}, "char polys x-9 and x-36");
    L.check(!r.good_primes.empty() && row.disagreeing_primes == r.good_primes, "disagreement at every good prime");
    for (auto p : r.good_primes) L.check(p >= 5, "good primes are at least 5");
  }
}

Mat2 random_conjugator(const FieldPtr& l, std::mt19937_64& rng) {
  while (true) {
    auto pick = [&] { return Rational(static_cast<long>(rng() % 7) - 3); };
    Mat2 c = Mat2::from_rationals(l, pick(), pick(), pick(), pick());
    if (!c.det().is_zero()) return c;
  }
}

FuchsianRep conjugated(const FuchsianRep& rep, const Mat2& c) {
  Mat2 ci = c.det().inverse() * c.adjugate();
  std::vector<Mat2> gens;
  for (const auto& g : rep.generators) gens.push_back(c * g * ci);
  return load_group(rep.field, gens, rep.labels, rep.relators);
}

void ac7(Ledger& L) {
  std::mt19937_64 rng(0xac7);
  auto demo = builtin_group("conj-sqrt2-demo"), b = builtin_group("takeuchi-B"), a = builtin_group("takeuchi-A");
  for (int i = 0; i < 100; ++i) {
    const auto& rep = (i % 4 == 0) ? b : demo;
    Mat2 c = random_conjugator(rep.field, rng);
    auto res = conjugator(rep, conjugated(rep, c));
    bool ok = false;
    if (res) {
      // equal up to a scalar: res * c^adj is scalar
      Mat2 m = res->matrix * c.adjugate();
      ok = m.b.is_zero() && m.c.is_zero() && m.a == m.d && !m.a.is_zero();
    }
    L.check(ok, "recovery case " + std::to_string(i));
  }
  L.check(!conjugator(a, b).has_value(), "trace mismatch returns none");
  auto k = demo.field;
  AlgebraicNumber r2 = AlgebraicNumber::generator(k), one(k, Rational(1)), zero(k, Rational(0));
  auto reducible = load_group(k, {Mat2{one + r2, one, zero, r2 - one}, Mat2{one, one, zero, one}}, {"x", "y"});
  bool rejected = false;
  try {
    conjugator(reducible, reducible);
  } catch (const PreconditionError&) {
    rejected = true;
  }
  L.check(rejected, "reducible input rejected");
  for (const auto* rep : {&a, &demo}) {
    for (int i = 0; i < 500; ++i) {
      Mat2 x = word_matrix(*rep, random_word(rep->rank(), 1 + rng() % 5, rng));
      Mat2 y = word_matrix(*rep, random_word(rep->rank(), 1 + rng() % 5, rng));
      L.check((x * y).trace() + (x * y.adjugate()).trace() == x.trace() * y.trace(), "trace recursion");
    }
  }
}

void ac8(Ledger& L) {
  for (const auto& name : builtin_names()) {
    auto rep = tfc_model(builtin_group(name));
    auto order = order_basis(rep);
    auto spectrum = congruence_spectrum(rep, order, 31);
    auto rec = reconstruct_field_data(spectrum);
    L.check(rec.consistent && rec.degree == order.k.degree(), name + " reconstructed degree");
    for (const auto& e : spectrum.entries) {
      if (!e.good) continue;
      std::vector<int> oracle;
      for (const auto& pr : factor_prime(order.k.field(), e.p)) oracle.push_back(pr.residue_degree);
      std::sort(oracle.begin(), oracle.end());
      L.check(oracle == e.residue_degrees, name + " census at p=" + str(e.p));
    }
  }
  SpectrumReport synthetic, oracle;
  auto k = NumberField::create(QPoly{-1, -1, 1}, Interval{1, 2});
  for (auto p : primes_between(7, 100)) {
    SpectrumEntry e{p, true, "", {}, {}};
    e.residue_degrees = (p % 5 == 1 || p % 5 == 4) ? std::vector<int>{1, 1} : std::vector<int>{2};
    synthetic.entries.push_back(e);
    SpectrumEntry o{p, true, "", {}, {}};
    for (const auto& pr : factor_prime(k, p)) o.residue_degrees.push_back(pr.residue_degree);
    oracle.entries.push_back(o);
  }
  auto rec = reconstruct_field_data(synthetic, oracle);
  L.check(rec.degree == 2 && rec.consistent, "synthetic degree 2");
  L.check(rec.same_splitting.value_or(false), "synthetic census matches Q(sqrt 5)");
}

void ac9(Ledger& L) {
  auto demo = builtin_group("conj-sqrt2-demo");
  auto r = modular_embedding_obstruction(demo, words_up_to(demo, 3));
  L.check(r.violation && r.witness.has_value(), "demo violation found");
  if (r.witness) {
    Mat2 m = word_matrix(demo, *r.witness);
    L.check(classify_matrix(m) == ElementType::hyperbolic, "witness is hyperbolic");
    AlgebraicNumber t = r.trace_field.to_sub(m.trace());
    int id = r.trace_field.field()->distinguished();
    L.check(compare_abs(t, t, r.witness_embedding, id) == std::strong_ordering::equal, "|sigma(tr)| = |tr|");
  }
  for (const char* name : {"modular", "takeuchi-A2", "takeuchi-B2"}) {
    auto rep = builtin_group(name);
    auto ok = modular_embedding_obstruction(rep, words_up_to(rep, 3));
    L.check(!ok.violation && ok.trace_field.degree() == 1, std::string(name) + " passes vacuously");
  }
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Ledger&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "finite group suite", ac1},
      {2, "local structure", ac2},
      {3, "chinese remainder decomposition", ac3},
      {4, "surjective reductions", ac4},
      {5, "quotient identification round trip", ac5},
      {6, "Takeuchi pair demonstration", ac6},
      {7, "conjugator suite", ac7},
      {8, "splitting reconstruction", ac8},
      {9, "modular embedding obstruction", ac9},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all_ok = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    Ledger L;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(L);
    } catch (const std::exception& e) {
      L.check(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all_ok = all_ok && L.ok();
    std::cout << "AC" << c.id << " " << (L.ok() ? "PASS" : "FAIL") << "  " << c.title << "  (" << L.summary()
              << ", " << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
  }
  return all_ok ? 0 : 1;
}
