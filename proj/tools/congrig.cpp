// SPDX-License-Identifier: Apache-2.0
// congrig: command-line front end for the congruence-subgroup toolkit.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "congrig/builtins.hpp"
#include "congrig/errors.hpp"
#include "congrig/group_document.hpp"
#include "congrig/local_structure.hpp"
#include "congrig/quaternion_order.hpp"
#include "congrig/reduction.hpp"
#include "congrig/rigidity.hpp"

using namespace congrig;
using nlohmann::json;

namespace {

bool g_json = false;

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_source(const std::string& path) {
  if (path == "-") return read_all(std::cin);
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot open '" + path + "'");
  return read_all(f);
}

FuchsianRep load_argument(const std::string& arg) {
  if (is_builtin(arg)) return builtin_group(arg);
  return parse_group_document(read_source(arg)).rep;
}

std::string group_name(const FuchsianRep& rep) { return rep.label.empty() ? "(unnamed)" : rep.label; }

std::string describe_field(const FieldPtr& k) {
  if (k->is_rationals()) return "Q";
  return "Q[x]/(" + k->minpoly().to_string("x") + ")";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

template <class T>
std::string join_numbers(const std::vector<T>& xs, const std::string& sep = ", ") {
  std::vector<std::string> parts;
  for (const auto& x : xs) parts.push_back(std::to_string(x));
  return join(parts, sep);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string yes_no(bool b) { return b ? "true" : "false"; }

json mat_json(const Mat2q& m) { return json::array({m[0], m[1], m[2], m[3]}); }

// ---------------------------------------------------------------- analysis

int cmd_info(const std::string& arg) {
  auto rep = load_argument(arg);
  json j;
  j["group"] = rep.label;
  j["field"] = describe_field(rep.field);
  j["degree"] = rep.field->degree();
  json gens = json::array();
  for (std::size_t i = 0; i < rep.rank(); ++i)
    gens.push_back({{"label", rep.labels[i]},
                    {"matrix", rep.generators[i].to_string()},
                    {"type", to_string(classify_matrix(rep.generators[i]))}});
  j["generators"] = gens;
  json rels = json::array();
  for (const auto& r : rep.relators) rels.push_back(word_to_string(r, rep.labels));
  j["relators"] = rels;
  j["relators_verified"] = true;
  if (g_json) {
    emit(j);
    return 0;
  }
  std::cout << "group: " << group_name(rep) << "\n"
            << "field: " << describe_field(rep.field) << " (degree " << rep.field->degree() << ")\n"
            << "generators: " << rep.rank() << "\n";
  for (std::size_t i = 0; i < rep.rank(); ++i)
    std::cout << "  " << rep.labels[i] << " = " << rep.generators[i].to_string() << "  "
              << to_string(classify_matrix(rep.generators[i])) << "\n";
  if (!rep.relators.empty()) {
    std::vector<std::string> rs;
    for (const auto& r : rep.relators) rs.push_back(word_to_string(r, rep.labels));
    std::cout << "relators (verified): " << join(rs, "; ") << "\n";
  }
  return 0;
}

int cmd_trace_field(const std::string& arg) {
  auto rep = load_argument(arg);
  Subfield k = trace_field(rep);
  Subfield kk = invariant_trace_field(rep);
  bool tfc = k.degree() == kk.degree();
  if (g_json) {
    emit({{"group", rep.label},
          {"trace_field", describe_field(k.field())},
          {"trace_field_degree", k.degree()},
          {"invariant_trace_field", describe_field(kk.field())},
          {"invariant_trace_field_degree", kk.degree()},
          {"trace_field_condition", tfc}});
    return 0;
  }
  std::cout << "trace field: " << describe_field(k.field()) << " (degree " << k.degree() << ")\n"
            << "invariant trace field: " << describe_field(kk.field()) << " (degree " << kk.degree() << ")\n"
            << "trace field condition: " << yes_no(tfc) << "\n";
  return 0;
}

int cmd_semi_arithmetic(const std::string& arg) {
  auto rep = load_argument(arg);
  auto r = is_semi_arithmetic(rep);
  if (g_json) {
    json j{{"group", rep.label},
           {"semi_arithmetic", r.semi_arithmetic},
           {"integral_traces", r.integral_traces},
           {"totally_real", r.totally_real},
           {"invariant_trace_field", describe_field(r.invariant_trace_field.field())}};
    if (r.non_integral_witness) j["non_integral_witness"] = word_to_string(*r.non_integral_witness, rep.labels);
    emit(j);
  } else {
    std::cout << "semi-arithmetic: " << yes_no(r.semi_arithmetic) << "\n"
              << "integral traces: " << yes_no(r.integral_traces) << "\n"
              << "invariant trace field: " << describe_field(r.invariant_trace_field.field())
              << (r.totally_real ? " (totally real)" : "") << "\n";
    if (r.non_integral_witness)
      std::cout << "non-integral trace at: " << word_to_string(*r.non_integral_witness, rep.labels) << "\n";
  }
  return r.semi_arithmetic ? 0 : 1;
}

int cmd_arithmetic(const std::string& arg) {
  auto rep = load_argument(arg);
  auto r = is_arithmetic(rep, true);
  const auto& s = r.symbol;
  const auto& labels = r.analyzed_squares ? squares_subgroup(rep).rep.labels : rep.labels;
  std::vector<int> ramified;
  for (std::size_t i = 0; i < s.ramified_at.size(); ++i)
    if (s.ramified_at[i]) ramified.push_back(static_cast<int>(i));
  if (g_json) {
    emit({{"group", rep.label},
          {"arithmetic", r.arithmetic},
          {"semi_arithmetic", r.semi_arithmetic},
          {"trace_field_condition", r.tfc},
          {"analyzed_squares", r.analyzed_squares},
          {"quaternion_field", describe_field(s.field.field())},
          {"symbol_a", s.a.to_string("x")},
          {"symbol_b", s.b.to_string("x")},
          {"symbol_words", json::array({word_to_string(s.x, labels), word_to_string(s.y, labels)})},
          {"ramified_embeddings", ramified},
          {"identity_embedding", s.identity_embedding},
          {"split_real_places", s.r_split}});
  } else {
    std::cout << "arithmetic: " << yes_no(r.arithmetic) << "\n";
    if (r.analyzed_squares) std::cout << "analyzed through the squares subgroup (trace field condition fails)\n";
    std::cout << "semi-arithmetic: " << yes_no(r.semi_arithmetic) << "\n"
              << "quaternion algebra over " << describe_field(s.field.field()) << ": (" << s.a.to_string("x")
              << ", " << s.b.to_string("x") << ") from x = " << word_to_string(s.x, labels)
              << ", y = " << word_to_string(s.y, labels) << "\n"
              << "split real places: " << s.r_split << " of " << s.ramified_at.size() << "\n";
  }
  return r.arithmetic ? 0 : 1;
}

int cmd_mod_embed(const std::string& arg, std::size_t max_length) {
  auto rep = load_argument(arg);
  auto r = modular_embedding_obstruction(rep, words_up_to(rep, max_length));
  if (g_json) {
    json j{{"group", rep.label},
           {"violation", r.violation},
           {"trace_field", describe_field(r.trace_field.field())},
           {"trace_field_condition", r.tfc},
           {"words_checked", r.words_checked},
           {"hyperbolic_checked", r.hyperbolic_checked}};
    if (r.witness) {
      j["witness"] = word_to_string(*r.witness, rep.labels);
      j["witness_embedding"] = r.witness_embedding;
    }
    emit(j);
  } else {
    std::cout << "trace field: " << describe_field(r.trace_field.field()) << "\n"
              << "hyperbolic words checked: " << r.hyperbolic_checked << " of " << r.words_checked << "\n";
    if (r.violation)
      std::cout << "violation: |sigma(tr w)| >= |tr w| for w = " << word_to_string(*r.witness, rep.labels)
                << " at embedding " << r.witness_embedding << "\n";
    else
      std::cout << "no violation found\n";
  }
  return r.violation ? 1 : 0;
}

// ---------------------------------------------------------------- congruence

struct Prepared {
  FuchsianRep original;
  FuchsianRep rep;
  bool squared = false;
  QuaternionOrderData order;
};

Prepared prepare(const std::string& arg) {
  Prepared p;
  p.original = load_argument(arg);
  p.rep = tfc_model(p.original, &p.squared);
  p.order = order_basis(p.rep);
  return p;
}

void require_good(const Prepared& g, std::uint64_t p) {
  if (!is_prime(static_cast<std::int64_t>(p))) throw PreconditionError(std::to_string(p) + " is not prime");
  if (g.order.is_bad(p))
    throw PreconditionError(std::to_string(p) + " ∈ S(Γ) = {" + join_numbers(g.order.bad_primes) +
                            "}: a good prime is required");
}

void print_preamble(const Prepared& g) {
  std::cout << "group: " << group_name(g.original);
  if (g.squared) std::cout << " (analyzed through " << g.rep.label << ", rank " << g.rep.rank() << ")";
  std::cout << "\norder over " << describe_field(g.order.k.field()) << ", S = {" << join_numbers(g.order.bad_primes)
            << "}\n";
}

int cmd_reduce(const std::string& arg, std::uint64_t p, std::optional<std::uint64_t> twist) {
  auto g = prepare(arg);
  require_good(g, p);
  json homs = json::array();
  if (!g_json) print_preamble(g);
  for (const auto& prime : factor_prime(g.order.k.field(), p)) {
    auto h = reduction_hom(g.rep, g.order, prime);
    std::vector<Mat2q> images = h.images;
    if (twist) {
      std::mt19937_64 rng(*twist);
      Mat2q c = h.group.random_gl(rng);
      int e = static_cast<int>(rng() % h.group.field().degree());
      for (auto& m : images)
        m = h.group.canonical(h.group.raw_mul(h.group.raw_mul(c, h.group.frobenius(m, e)), h.group.gl_inverse(c)));
    }
    if (g_json) {
      json im = json::array();
      for (const auto& m : images) im.push_back(mat_json(m));
      json hj{{"ideal", prime.to_string()}, {"p", p}, {"f", prime.residue_degree}, {"images", im}};
      if (h.surjective) {
        hj["surjective"] = *h.surjective;
        hj["image_order"] = h.image_order;
      }
      homs.push_back(hj);
      continue;
    }
    std::cout << "prime " << prime.to_string() << ": PSL(2, " << h.group.q() << ")\n";
    for (std::size_t i = 0; i < images.size(); ++i)
      std::cout << "  " << g.rep.labels[i] << " -> " << h.group.to_string(images[i]) << "\n";
    if (h.surjective)
      std::cout << "  " << (*h.surjective ? "surjective" : "not surjective") << ", order " << h.image_order << "\n";
    else
      std::cout << "  surjectivity not decided (group order above " << kClosureCap << ")\n";
  }
  if (g_json)
    emit({{"group", g.original.label},
          {"analyzed", g.rep.label},
          {"squared", g.squared},
          {"labels", g.rep.labels},
          {"bad_primes", g.order.bad_primes},
          {"twisted", twist.has_value()},
          {"homs", homs}});
  return 0;
}

int cmd_spectrum(const std::string& arg, std::uint64_t p_max) {
  auto g = prepare(arg);
  auto s = congruence_spectrum(g.rep, g.order, p_max);
  auto rec = reconstruct_field_data(s);
  if (g_json) {
    json rows = json::array();
    for (const auto& e : s.entries) {
      json r{{"p", e.p}, {"good", e.good}};
      if (!e.good) r["note"] = e.note;
      r["residue_degrees"] = e.residue_degrees;
      json sj = json::array();
      for (const auto& x : e.surjective) sj.push_back(x ? json(*x) : json(nullptr));
      r["surjective"] = sj;
      rows.push_back(r);
    }
    emit({{"group", g.original.label},
          {"analyzed", g.rep.label},
          {"field_degree", s.field_degree},
          {"p_max", p_max},
          {"entries", rows},
          {"reconstructed_degree", rec.degree},
          {"consistent", rec.consistent},
          {"inconsistent_primes", rec.inconsistent_primes}});
    return 0;
  }
  print_preamble(g);
  for (const auto& e : s.entries) {
    std::cout << "p = " << e.p << ": ";
    if (!e.good) {
      std::cout << "skipped (" << e.note << ")\n";
      continue;
    }
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < e.residue_degrees.size(); ++i) {
      int f = e.residue_degrees[i];
      std::string q = f == 1 ? std::to_string(e.p) : std::to_string(e.p) + "^" + std::to_string(f);
      std::string verdict = !e.surjective[i] ? "undecided" : (*e.surjective[i] ? "surjective" : "not surjective");
      parts.push_back("PSL(2," + q + ") " + verdict);
    }
    std::cout << "f = [" << join_numbers(e.residue_degrees) << "]  " << join(parts, ", ") << "\n";
  }
  std::cout << "reconstructed degree: " << rec.degree << (rec.consistent ? " (consistent at every good prime)" : "")
            << "\n";
  if (!rec.consistent) std::cout << "inconsistent at: " << join_numbers(rec.inconsistent_primes) << "\n";
  return rec.consistent ? 0 : 3;
}

int cmd_identify(const std::string& arg, const std::string& hom_path, std::size_t index) {
  auto g = prepare(arg);
  json doc;
  try {
    doc = json::parse(read_source(hom_path));
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("malformed homomorphism file: ") + e.what());
  }
  json hom = doc;
  if (doc.contains("homs")) {
    if (index >= doc.at("homs").size()) throw PreconditionError("homomorphism index out of range");
    hom = doc.at("homs").at(index);
  }
  if (!hom.contains("p") || !hom.contains("f") || !hom.contains("images"))
    throw PreconditionError("homomorphism needs keys p, f and images");
  auto p = hom.at("p").get<std::uint64_t>();
  int f = hom.at("f").get<int>();
  if (p == 2) throw PreconditionError("q must be odd");
  require_good(g, p);
  PSL2 target = PSL2::over(p, f);
  std::vector<Mat2q> images;
  for (const auto& m : hom.at("images")) {
    if (!m.is_array() || m.size() != 4) throw PreconditionError("each image is a list of four field elements");
    Mat2q x;
    for (int i = 0; i < 4; ++i) {
      auto v = m[i].get<std::uint64_t>();
      if (v >= target.q()) throw PreconditionError("field element out of range");
      x[i] = static_cast<FiniteField::Elem>(v);
    }
    images.push_back(x);
  }
  auto r = identify_quotient(g.rep, g.order, target, images);
  if (g_json) {
    emit({{"group", g.original.label},
          {"ideal", r.prime.to_string()},
          {"p", r.prime.p},
          {"f", r.prime.residue_degree},
          {"candidates_checked", r.candidates_checked},
          {"frobenius_power", r.automorphism.frobenius_power},
          {"conjugator", mat_json(r.automorphism.conjugator)},
          {"conditional", "assumes the kernel is a congruence subgroup"}});
    return 0;
  }
  print_preamble(g);
  std::cout << "identified prime: " << r.prime.to_string() << " (unique among " << r.candidates_checked
            << " candidates)\n"
            << "automorphism: Frobenius^" << r.automorphism.frobenius_power << " then conjugation by "
            << target.to_string(r.automorphism.conjugator) << "\n"
            << "(valid under the assumption that the kernel is a congruence subgroup)\n";
  return 0;
}

std::vector<std::size_t> parse_map(const std::string& text, const FuchsianRep& a, const FuchsianRep& b) {
  std::vector<std::size_t> map(a.rank());
  if (text.empty()) {
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
    return map;
  }
  auto index_of = [](const std::vector<std::string>& labels, const std::string& l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw PreconditionError("unknown generator label '" + l + "'");
    return static_cast<std::size_t>(it - labels.begin());
  };
  std::vector<bool> seen(a.rank(), false);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find_first_of("=:");
    if (eq == std::string::npos) throw PreconditionError("map entries look like a=b");
    std::size_t i = index_of(a.labels, item.substr(0, eq));
    map[i] = index_of(b.labels, item.substr(eq + 1));
    seen[i] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw PreconditionError("the map must mention every generator of the first group");
  return map;
}

int cmd_rigidity(const std::string& arg_a, const std::string& arg_b, const std::string& map_text,
                 std::size_t max_length, std::uint64_t p_max) {
  auto a = load_argument(arg_a), b = load_argument(arg_b);
  auto map = parse_map(map_text, a, b);
  auto r = rigidity(a, b, map, max_length, p_max);
  if (g_json) {
    json rows = json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"word", word_to_string(row.word_a, a.labels)},
                      {"word_b", word_to_string(row.word_b, b.labels)},
                      {"tr2_a", row.tr2_a.to_string()},
                      {"tr2_b", row.tr2_b.to_string()},
                      {"chi_a", row.chi_a.to_string()},
                      {"chi_b", row.chi_b.to_string()},
                      {"exact_agreement", row.exact_agreement},
                      {"disagreeing_primes", row.disagreeing_primes}});
    json j{{"group_a", a.label},
           {"group_b", b.label},
           {"max_length", max_length},
           {"p_max", p_max},
           {"good_primes", r.good_primes},
           {"rows", rows},
           {"contradicted", r.contradicted}};
    if (r.witness_row) {
      j["witness_word"] = word_to_string(r.rows[*r.witness_row].word_a, a.labels);
      j["witness_prime"] = *r.witness_prime;
    }
    if (r.conjugator) j["conjugator"] = r.conjugator->matrix.to_string();
    emit(j);
    return 0;
  }
  std::cout << "good primes: " << join_numbers(r.good_primes) << "\n";
  for (const auto& row : r.rows) {
    std::cout << word_to_string(row.word_a, a.labels) << ": chi_A = " << row.chi_a.to_string()
              << ", chi_B = " << row.chi_b.to_string() << "  ";
    if (row.disagreeing_primes.empty())
      std::cout << "agree" << (row.exact_agreement ? "" : " modulo every good prime") << "\n";
    else if (row.disagreeing_primes == r.good_primes)
      std::cout << "disagree at every good prime\n";
    else
      std::cout << "disagree at p = " << join_numbers(row.disagreeing_primes) << "\n";
  }
  if (r.contradicted) {
    const auto& w = r.rows[*r.witness_row];
    std::cout << "congruence preservation: contradicted; witness " << word_to_string(w.word_a, a.labels)
              << " (" << w.chi_a.to_string() << " vs " << w.chi_b.to_string() << ") at p = " << *r.witness_prime
              << "\n";
  } else {
    std::cout << "congruence preservation: possible (no disagreement found)\n";
    if (r.conjugator) std::cout << "conjugator: " << r.conjugator->matrix.to_string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- local

int cmd_local_unram(std::uint64_t q, int r) {
  auto rep = local_unramified(q, r);
  auto acc = composition_account(q, r, false);
  auto factors = [](const std::vector<Integer>& xs) {
    std::vector<std::string> s;
    for (const auto& x : xs) s.push_back(to_string(x));
    return s;
  };
  if (g_json) {
    json steps = json::array();
    for (const auto& s : rep.steps)
      steps.push_back({{"level", s.level},
                       {"kernel_order", s.kernel_order},
                       {"trace_zero", s.all_trace_zero},
                       {"exponent_p", s.exponent_p},
                       {"additive", s.additive},
                       {"lift_surjective", s.lift_surjective},
                       {"lifts_checked", s.lifts_checked},
                       {"lift_sampled", s.lift_sampled}});
    json j{{"q", q},
           {"r", r},
           {"order", to_string(rep.order)},
           {"steps", steps},
           {"enumeration_cap", rep.enumeration_cap},
           {"composition_factors", factors(acc.group_factors)}};
    if (rep.enumerated_order) j["enumerated_order"] = *rep.enumerated_order;
    emit(j);
    return 0;
  }
  std::cout << "SL(2, o/p^" << r << "), residue field F_" << q << ": order " << to_string(rep.order) << "\n";
  if (rep.enumerated_order)
    std::cout << "enumeration: " << *rep.enumerated_order << " elements (cap " << rep.enumeration_cap << ")\n";
  else
    std::cout << "enumeration skipped (above cap " << rep.enumeration_cap << ")\n";
  std::string group = "(Z/" + std::to_string(rep.p) + ")^" + std::to_string(3 * rep.f);
  if (!rep.steps.empty()) std::cout << "steps: " << group << "\n";
  for (const auto& s : rep.steps) {
    bool ok = s.all_trace_zero && s.exponent_p && s.additive && s.lift_surjective;
    std::cout << "  level " << s.level << " -> " << s.level + 1 << ": kernel order " << s.kernel_order << ", "
              << (ok ? group : "structure check failed") << (s.lift_sampled ? " (lifts sampled)" : "") << "\n";
  }
  std::cout << "composition factors: {" << join(factors(acc.group_factors), ", ") << "}";
  if (!acc.caveat.empty()) std::cout << "\nnote: " << acc.caveat;
  std::cout << "\n";
  return 0;
}

int cmd_local_ram(std::uint64_t q, int m) {
  auto rep = local_ramified(q, m);
  if (g_json) {
    json steps = json::array();
    for (const auto& s : rep.steps)
      steps.push_back({{"level", s.level}, {"order", s.order}, {"exponent_p", s.exponent_p}, {"abelian", s.abelian}});
    emit({{"q", q},
          {"m", m},
          {"order", rep.order},
          {"expected_order", rep.expected_order},
          {"level1_order", rep.level1_order},
          {"level1_cyclic", rep.level1_cyclic},
          {"steps", steps},
          {"enumeration_cap", rep.enumeration_cap}});
    return 0;
  }
  std::cout << "level 1: " << (rep.level1_cyclic ? "cyclic" : "not cyclic") << ", order " << rep.level1_order
            << "\n"
            << "norm-one units modulo M^" << m << ": order " << rep.order << "\n";
  for (const auto& s : rep.steps)
    std::cout << "  level " << s.level << " -> " << s.level + 1 << ": order " << s.order
              << (s.exponent_p ? ", exponent " + std::to_string(rep.p) : "") << (s.abelian ? ", abelian" : "")
              << "\n";
  if (m % 2 == 0) {
    auto acc = composition_account(q, m / 2, true);
    std::vector<std::string> fs;
    for (const auto& x : acc.group_factors) fs.push_back(to_string(x));
    std::cout << "composition factors: {" << join(fs, ", ") << "}\n";
  }
  return 0;
}

int cmd_crt(const std::string& field, const std::string& ideals) {
  if (field != "Q") throw PreconditionError("only --field Q is supported");
  std::vector<std::pair<std::uint64_t, int>> list;
  std::stringstream ss(ideals);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto caret = item.find('^');
    try {
      std::uint64_t p = std::stoull(item.substr(0, caret));
      int e = caret == std::string::npos ? 1 : std::stoi(item.substr(caret + 1));
      list.emplace_back(p, e);
    } catch (const std::exception&) {
      throw PreconditionError("ideals look like 3,5 or 3^2,5");
    }
  }
  auto r = crt_quotient_check(NumberField::rationals(), list);
  if (g_json) {
    emit({{"modulus", r.modulus},
          {"moduli", r.moduli},
          {"sl_order", r.sl_order},
          {"product_order", r.product_order},
          {"bijective", r.bijective},
          {"psl_kernel_order", r.psl_kernel_order},
          {"kernel_rank", r.kernel_rank},
          {"kernel_elementary_abelian", r.kernel_elementary_abelian}});
    return 0;
  }
  std::cout << "SL: " << (r.bijective ? "bijective" : "not bijective") << " (" << r.sl_order << ")"
            << "; PSL kernel: (Z/2)^" << r.kernel_rank << "\n";
  return r.bijective ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congruence quotients, trace fields and arithmeticity of Fuchsian groups"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "Machine-readable output");
  app.fallthrough();

  std::string group, group_b, hom_path, map_text, field = "Q", ideals;
  std::uint64_t prime = 0, p_max = 31, q = 0;
  std::optional<std::uint64_t> twist;
  std::size_t max_length = 3, hom_index = 0;
  int r = 1;

  auto add_group = [&](CLI::App* sub) {
    sub->add_option("group", group, "Built-in name, JSON file, or - for stdin")->required();
  };
  auto* info = app.add_subcommand("info", "Generators, field and relators");
  add_group(info);
  auto* tf = app.add_subcommand("trace-field", "Trace field and invariant trace field");
  add_group(tf);
  auto* semi = app.add_subcommand("semi-arithmetic", "Integral traces and totally real invariant trace field");
  add_group(semi);
  auto* arith = app.add_subcommand("arithmetic", "Takeuchi arithmeticity test");
  add_group(arith);
  auto* embed = app.add_subcommand("mod-embed-check", "Galois-conjugate trace inequality on hyperbolic words");
  add_group(embed);
  embed->add_option("--maxlen", max_length, "Word length bound")->capture_default_str();
  auto* reduce = app.add_subcommand("reduce", "Reduction onto PSL(2, q) at the primes above p");
  add_group(reduce);
  reduce->add_option("-p,--prime", prime, "Rational prime")->required();
  reduce->add_option("--twist", twist, "Twist the images by a random automorphism with this seed");
  auto* spectrum = app.add_subcommand("spectrum", "Congruence quotients at all primes up to a bound");
  add_group(spectrum);
  spectrum->add_option("--pmax", p_max, "Largest prime")->capture_default_str();
  auto* identify = app.add_subcommand("identify", "Prime ideal behind a PSL(2, q) quotient");
  add_group(identify);
  identify->add_option("--hom", hom_path, "JSON homomorphism (as written by reduce --json)")->required();
  identify->add_option("--index", hom_index, "Entry of a multi-prime reduce document")->capture_default_str();
  auto* rig = app.add_subcommand("rigidity", "Compare tr^2 characteristic polynomials across a correspondence");
  rig->add_option("groupA", group, "First group")->required();
  rig->add_option("groupB", group_b, "Second group")->required();
  rig->add_option("--map", map_text, "Generator correspondence a=x,b=y (default: by position)");
  rig->add_option("--maxlen", max_length, "Word length bound")->capture_default_str();
  rig->add_option("--pmax", p_max, "Largest prime")->capture_default_str();
  auto* local = app.add_subcommand("local", "Local quotient structure");
  local->require_subcommand(1);
  auto* unram = local->add_subcommand("unram", "SL(2) over an unramified ring o/p^r");
  unram->add_option("-q", q, "Residue field size")->required();
  unram->add_option("-r", r, "Level")->capture_default_str();
  auto* ram = local->add_subcommand("ram", "Norm-one units of the ramified quaternion order modulo M^r");
  ram->add_option("-q", q, "Residue field size")->required();
  ram->add_option("-r", r, "Level")->capture_default_str();
  auto* crt = app.add_subcommand("crt", "Chinese remainder decomposition of SL(2) and PSL(2)");
  crt->add_option("--field", field, "Base field")->capture_default_str();
  crt->add_option("--ideals", ideals, "Prime powers, e.g. 3,5 or 3^2,7")->required();
  auto* exp = app.add_subcommand("export", "Write a group document");
  add_group(exp);
  auto* list = app.add_subcommand("list", "Built-in group names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*info) return cmd_info(group);
    if (*tf) return cmd_trace_field(group);
    if (*semi) return cmd_semi_arithmetic(group);
    if (*arith) return cmd_arithmetic(group);
    if (*embed) return cmd_mod_embed(group, max_length);
    if (*reduce) return cmd_reduce(group, prime, twist);
    if (*spectrum) return cmd_spectrum(group, p_max);
    if (*identify) return cmd_identify(group, hom_path, hom_index);
    if (*rig) return cmd_rigidity(group, group_b, map_text, max_length, p_max);
    if (*unram) return cmd_local_unram(q, r);
    if (*ram) return cmd_local_ram(q, r);
    if (*crt) return cmd_crt(field, ideals);
    if (*exp) {
      auto rep = load_argument(group);
      std::cout << serialize_group_document(is_builtin(group) ? document_from_rep(rep)
                                                               : parse_group_document(read_source(group)));
      return 0;
    }
    if (*list) {
      for (const auto& n : builtin_names()) std::cout << n << "\n";
      return 0;
    }
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NegativeResult& e) {
    std::cerr << "negative: " << e.what() << "\n";
    return 1;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
