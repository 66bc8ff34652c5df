// SPDX-License-Identifier: Apache-2.0
#include "congrig/group_document.hpp"

#include <json.hpp>

#include "congrig/errors.hpp"

namespace congrig {

using nlohmann::json;

namespace {

Rational rational_from(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw PreconditionError(where + ": expected an integer or a rational string");
}

json rational_to(const Rational& r) { return to_string(r); }

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw PreconditionError(where + ": missing key '" + key + "'");
  return obj.at(key);
}

std::vector<Rational> rational_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw PreconditionError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_from(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

GroupDocument document_from_rep(const FuchsianRep& rep) { return {rep, rep.field->selector()}; }

GroupDocument parse_group_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("malformed group document: ") + e.what());
  }
  const json& field = member(doc, "field", "document");
  auto minpoly = rational_list(member(field, "minpoly", "field"), "field.minpoly");
  auto sel = rational_list(member(field, "selector", "field"), "field.selector");
  if (sel.size() != 2 || sel[0] > sel[1]) throw PreconditionError("field.selector must be [lo, hi] with lo <= hi");
  Interval selector{sel[0], sel[1]};
  FieldPtr k = NumberField::create(QPoly(minpoly), selector);
  int d = k->degree();

  const json& gens = member(doc, "generators", "document");
  if (!gens.is_array() || gens.empty()) throw PreconditionError("generators must be a non-empty array");
  std::vector<Mat2> mats;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::string where = "generators[" + std::to_string(g) + "]";
    const json& m = gens[g];
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() ||
        m[1].size() != 2)
      throw PreconditionError(where + ": expected a 2x2 array");
    std::vector<AlgebraicNumber> entries;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        std::string w = where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
        auto coeffs = rational_list(m[r][c], w);
        if (static_cast<int>(coeffs.size()) > d) throw PreconditionError(w + ": more coefficients than the degree");
        coeffs.resize(d, Rational(0));
        entries.emplace_back(k, coeffs);
      }
    mats.push_back({entries[0], entries[1], entries[2], entries[3]});
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    for (const auto& l : doc.at("labels")) {
      if (!l.is_string()) throw PreconditionError("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < mats.size(); ++i) labels.push_back("g" + std::to_string(i + 1));
  }
  std::vector<Word> relators;
  if (doc.contains("relators"))
    for (const auto& r : doc.at("relators")) {
      if (!r.is_string()) throw PreconditionError("relators must be word strings");
      relators.push_back(parse_word(r.get<std::string>(), labels));
    }
  std::string label;
  if (doc.contains("label")) {
    if (!doc.at("label").is_string()) throw PreconditionError("label must be a string");
    label = doc.at("label").get<std::string>();
  }
  return {load_group(k, std::move(mats), std::move(labels), std::move(relators), std::move(label)), selector};
}

std::string serialize_group_document(const GroupDocument& doc) {
  const FuchsianRep& rep = doc.rep;
  json field;
  json minpoly = json::array();
  for (const auto& c : rep.field->minpoly().coeffs()) minpoly.push_back(rational_to(c));
  field["minpoly"] = minpoly;
  field["selector"] = json::array({rational_to(doc.selector.lo), rational_to(doc.selector.hi)});
  json gens = json::array();
  for (const auto& g : rep.generators) {
    auto entry = [](const AlgebraicNumber& x) {
      json v = json::array();
      for (const auto& c : x.coords()) v.push_back(rational_to(c));
      return v;
    };
    gens.push_back(json::array({json::array({entry(g.a), entry(g.b)}), json::array({entry(g.c), entry(g.d)})}));
  }
  json relators = json::array();
  for (const auto& r : rep.relators) relators.push_back(word_to_string(r, rep.labels));
  json out;
  out["field"] = field;
  out["generators"] = gens;
  out["labels"] = rep.labels;
  out["relators"] = relators;
  out["label"] = rep.label;
  return out.dump(2) + "\n";
}

}  // namespace congrig
