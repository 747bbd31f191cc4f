#include "renhopf/theory.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace renhopf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    fail(std::string("bad type for key '") + key + "'");
  }
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing key '") + key + "'");
  return *it;
}

std::string require_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) fail(std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

void check_identifier(const std::string& s, const char* what) {
  if (s.empty()) fail(std::string("empty ") + what + " name");
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      fail(std::string("invalid ") + what + " name '" + s + "'");
}

CPhiExpr normalize(CPhiExpr e) {
  std::sort(e.begin(), e.end(), [](auto& a, auto& b) { return a.green < b.green; });
  CPhiExpr out;
  for (auto& f : e) {
    if (!out.empty() && out.back().green == f.green)
      out.back().exponent += f.exponent;
    else
      out.push_back(f);
  }
  std::erase_if(out, [](auto& f) { return sgn(f.exponent) == 0; });
  return out;
}

}  // namespace

const FieldSpec& TheorySpec::field(const std::string& n) const {
  for (auto& f : fields)
    if (f.name == n) return f;
  throw std::out_of_range("unknown field '" + n + "'");
}

bool TheorySpec::has_field(const std::string& n) const { return field_index(n) >= 0; }

int TheorySpec::field_index(const std::string& n) const {
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i].name == n) return static_cast<int>(i);
  return -1;
}

int TheorySpec::vertex_index(const std::string& n) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].name == n) return static_cast<int>(i);
  return -1;
}

int TheorySpec::edge_index(const std::string& n) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].name == n) return static_cast<int>(i);
  return -1;
}

std::optional<ResidueRef> TheorySpec::residue_by_name(const std::string& n) const {
  if (int v = vertex_index(n); v >= 0) return ResidueRef{ResidueRef::Kind::Vertex, v};
  if (int e = edge_index(n); e >= 0) return ResidueRef{ResidueRef::Kind::Edge, e};
  return std::nullopt;
}

std::string TheorySpec::residue_name(ResidueRef r) const {
  return r.is_vertex() ? vertices.at(r.index).name : edges.at(r.index).name;
}

std::vector<std::string> TheorySpec::residue_legs(ResidueRef r) const {
  if (r.is_vertex()) return vertices.at(r.index).legs;
  const auto& e = edges.at(r.index);
  std::vector<std::string> legs{e.field, e.conjugate_field};
  std::sort(legs.begin(), legs.end());
  return legs;
}

std::vector<ResidueRef> TheorySpec::all_residues() const {
  std::vector<ResidueRef> out;
  for (int i = 0; i < k(); ++i) out.push_back({ResidueRef::Kind::Vertex, i});
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) out.push_back({ResidueRef::Kind::Edge, i});
  return out;
}

int TheorySpec::edge_between(const std::string& a, const std::string& b) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if ((e.field == a && e.conjugate_field == b) || (e.field == b && e.conjugate_field == a))
      return static_cast<int>(i);
  }
  return -1;
}

int TheorySpec::valence2_vertex(const std::vector<std::string>& legs) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].valence() == 2 && vertices[i].legs == legs) return static_cast<int>(i);
  return -1;
}

int TheorySpec::edge_with_legs(const std::vector<std::string>& legs) const {
  if (legs.size() != 2) return -1;
  return edge_between(legs[0], legs[1]);
}

std::vector<int> TheorySpec::valence2_vertices() const {
  std::vector<int> out;
  for (int i = 0; i < k(); ++i)
    if (vertices[i].valence() == 2) out.push_back(i);
  return out;
}

int TheorySpec::leg_count(ResidueRef r, const std::string& f) const {
  auto legs = residue_legs(r);
  return static_cast<int>(std::count(legs.begin(), legs.end(), f));
}

CPhiExpr cphi_multiply(const CPhiExpr& a, const CPhiExpr& b) {
  CPhiExpr all = a;
  all.insert(all.end(), b.begin(), b.end());
  return normalize(std::move(all));
}

CPhiExpr cphi_power(const CPhiExpr& a, const Rational& alpha) {
  CPhiExpr out = a;
  for (auto& f : out) f.exponent *= alpha;
  return normalize(std::move(out));
}

std::string cphi_str(const CPhiExpr& e) {
  if (e.empty()) return "1";
  std::string out;
  for (auto& f : e) {
    if (!out.empty()) out += " * ";
    out += "G^" + f.green;
    if (f.exponent != 1) out += "^(" + f.exponent.get_str() + ")";
  }
  return out;
}

TheorySpec parse_theory(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("theory document must be a JSON object");

  TheorySpec spec;
  spec.name = require_string(doc, "name");
  spec.loop_cutoff = get_or<int>(doc, "loop_cutoff", 0);
  if (spec.loop_cutoff <= 0) fail("loop_cutoff must be a positive integer");
  spec.allow_tadpoles = get_or<bool>(doc, "allow_tadpoles", true);
  spec.valence2_cutoff = get_or<int>(doc, "valence2_cutoff", spec.loop_cutoff);
  if (spec.valence2_cutoff < 0) fail("valence2_cutoff must be non-negative");
  spec.massless = get_or<bool>(doc, "massless", true);

  std::set<std::string> field_names;
  for (const json& jf : require(doc, "fields")) {
    FieldSpec f;
    f.name = require_string(jf, "name");
    check_identifier(f.name, "field");
    if (!field_names.insert(f.name).second) fail("duplicate field '" + f.name + "'");
    f.ghost_degree = get_or<int>(jf, "ghost_degree", 0);
    f.form_degree = get_or<int>(jf, "form_degree", 0);
    if (f.form_degree < 0) fail("negative form_degree for '" + f.name + "'");
    f.is_source = get_or<bool>(jf, "is_source", false);
    if (jf.contains("partner")) f.partner = require_string(jf, "partner");
    std::string stats = get_or<std::string>(jf, "statistics", "bosonic");
    if (stats == "bosonic")
      f.statistics = Statistics::Bosonic;
    else if (stats == "fermionic")
      f.statistics = Statistics::Fermionic;
    else
      fail("statistics of '" + f.name + "' must be bosonic or fermionic");
    f.propagates = get_or<bool>(jf, "propagates", !f.is_source);
    spec.fields.push_back(f);
  }

  std::set<std::string> residue_names;
  for (const json& jv : require(doc, "vertices")) {
    VertexType v;
    v.name = require_string(jv, "name");
    check_identifier(v.name, "vertex");
    if (!residue_names.insert(v.name).second) fail("duplicate vertex/edge name '" + v.name + "'");
    for (const json& leg : require(jv, "legs")) {
      if (!leg.is_string()) fail("legs of '" + v.name + "' must be field names");
      v.legs.push_back(leg.get<std::string>());
    }
    std::sort(v.legs.begin(), v.legs.end());
    v.coupling = get_or<std::string>(jv, "coupling", "lambda_" + v.name);
    spec.vertices.push_back(v);
  }

  for (const json& je : require(doc, "edges")) {
    EdgeType e;
    e.name = require_string(je, "name");
    check_identifier(e.name, "edge");
    if (!residue_names.insert(e.name).second) fail("duplicate vertex/edge name '" + e.name + "'");
    e.field = require_string(je, "field");
    e.conjugate_field = get_or<std::string>(je, "conjugate_field", e.field);
    e.oriented = get_or<bool>(je, "oriented", e.field != e.conjugate_field);
    spec.edges.push_back(e);
  }

  const json& jc = require(doc, "cphi");
  if (!jc.is_object()) fail("cphi must map field names to factor lists");
  for (auto it = jc.begin(); it != jc.end(); ++it) {
    CPhiExpr expr;
    for (const json& fac : it.value()) {
      if (!fac.is_array() || fac.size() != 3 || !fac[0].is_string() || !fac[1].is_number_integer() ||
          !fac[2].is_number_integer())
        fail("cphi factor for '" + it.key() + "' must be [green, numerator, denominator]");
      long den = fac[2].get<long>();
      if (den == 0) fail("zero exponent denominator in cphi for '" + it.key() + "'");
      expr.push_back({fac[0].get<std::string>(), make_rational(fac[1].get<long>(), den)});
    }
    spec.cphi[it.key()] = normalize(std::move(expr));
  }

  if (doc.contains("linear_terms")) {
    for (const json& term : doc["linear_terms"]) {
      std::vector<std::string> fs;
      for (const json& f : term) fs.push_back(f.get<std::string>());
      spec.linear_terms.push_back(fs);
    }
  }

  // Field invariants.
  for (auto& f : spec.fields) {
    if (f.is_source) {
      if (!f.partner) fail("source '" + f.name + "' has no partner");
      if (!spec.has_field(*f.partner)) fail("source '" + f.name + "' names unknown partner '" + *f.partner + "'");
      const FieldSpec& p = spec.field(*f.partner);
      if (p.is_source) fail("source '" + f.name + "' is paired with another source");
      if (f.ghost_degree != -p.ghost_degree - 1)
        fail("ghost-degree mismatch for source '" + f.name + "': expected " +
             std::to_string(-p.ghost_degree - 1));
      if (f.propagates) fail("source '" + f.name + "' cannot propagate");
    }
  }
  for (auto& f : spec.fields) {
    if (f.is_source) continue;
    int n = 0;
    for (auto& g : spec.fields)
      if (g.is_source && g.partner == f.name) ++n;
    if (n != 1) fail("field '" + f.name + "' must have exactly one source partner");
  }

  // Edge invariants.
  for (auto& e : spec.edges) {
    for (const auto& fname : {e.field, e.conjugate_field}) {
      if (!spec.has_field(fname)) fail("edge '" + e.name + "' references unknown field '" + fname + "'");
      const FieldSpec& f = spec.field(fname);
      if (f.is_source || !f.propagates) fail("edge '" + e.name + "' uses non-propagating field '" + fname + "'");
    }
    if (e.oriented != (e.field != e.conjugate_field))
      fail("edge '" + e.name + "' must be oriented exactly when its two fields differ");
  }

  // Vertex invariants.
  std::set<std::string> sources_used;
  for (auto& v : spec.vertices) {
    if (v.valence() < 2) fail("vertex '" + v.name + "' has valence < 2");
    bool has_source = false;
    for (auto& l : v.legs) {
      if (!spec.has_field(l)) fail("vertex '" + v.name + "' references unknown field '" + l + "'");
      if (spec.field(l).is_source) {
        has_source = true;
        if (!sources_used.insert(l).second) fail("more than one vertex for source '" + l + "'");
      }
    }
    if (!has_source) {
      for (auto& l : v.legs) {
        const FieldSpec& f = spec.field(l);
        if (f.statistics != Statistics::Fermionic) continue;
        int e = -1;
        for (std::size_t i = 0; i < spec.edges.size(); ++i)
          if (spec.edges[i].field == l || spec.edges[i].conjugate_field == l) e = static_cast<int>(i);
        if (e < 0) continue;
        const auto& et = spec.edges[e];
        const std::string& conj = et.field == l ? et.conjugate_field : et.field;
        if (std::find(v.legs.begin(), v.legs.end(), conj) == v.legs.end())
          fail("vertex '" + v.name + "' has fermion '" + l + "' without its conjugate");
      }
    }
    if (v.valence() == 2 && spec.edge_with_legs(v.legs) < 0)
      fail("valence-2 vertex '" + v.name + "' must pair a field with its conjugate");
  }

  for (auto& [fname, expr] : spec.cphi) {
    if (!spec.has_field(fname)) fail("cphi given for unknown field '" + fname + "'");
    for (auto& fac : expr)
      if (!spec.residue_by_name(fac.green)) fail("cphi for '" + fname + "' uses unknown Green's function '" + fac.green + "'");
  }
  for (auto& f : spec.fields)
    if (!spec.cphi.count(f.name)) fail("missing cphi entry for field '" + f.name + "'");
  for (auto& term : spec.linear_terms)
    for (auto& f : term)
      if (!spec.has_field(f)) fail("linear_terms references unknown field '" + f + "'");

  return spec;
}

TheorySpec load_theory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open theory file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_theory(ss.str());
}

std::string resolve_theory_path(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::exists(name_or_path)) return name_or_path;
  for (const std::string& cand : {name_or_path, name_or_path + ".json"}) {
    fs::path p = fs::path(RENHOPF_DATA_DIR) / cand;
    if (fs::exists(p)) return p.string();
  }
  return name_or_path;
}

std::string serialize_theory(const TheorySpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["loop_cutoff"] = spec.loop_cutoff;
  doc["allow_tadpoles"] = spec.allow_tadpoles;
  doc["valence2_cutoff"] = spec.valence2_cutoff;
  doc["massless"] = spec.massless;
  doc["fields"] = json::array();
  for (auto& f : spec.fields) {
    json jf{{"name", f.name},
            {"ghost_degree", f.ghost_degree},
            {"form_degree", f.form_degree},
            {"is_source", f.is_source},
            {"statistics", f.statistics == Statistics::Fermionic ? "fermionic" : "bosonic"},
            {"propagates", f.propagates}};
    if (f.partner) jf["partner"] = *f.partner;
    doc["fields"].push_back(jf);
  }
  doc["vertices"] = json::array();
  for (auto& v : spec.vertices) doc["vertices"].push_back({{"name", v.name}, {"legs", v.legs}, {"coupling", v.coupling}});
  doc["edges"] = json::array();
  for (auto& e : spec.edges)
    doc["edges"].push_back(
        {{"name", e.name}, {"field", e.field}, {"conjugate_field", e.conjugate_field}, {"oriented", e.oriented}});
  doc["cphi"] = json::object();
  for (auto& [fname, expr] : spec.cphi) {
    json arr = json::array();
    for (auto& fac : expr)
      arr.push_back({fac.green, fac.exponent.get_num().get_si(), fac.exponent.get_den().get_si()});
    doc["cphi"][fname] = arr;
  }
  doc["linear_terms"] = spec.linear_terms;
  return doc.dump(2);
}

bool operator==(const TheorySpec& a, const TheorySpec& b) {
  return a.name == b.name && a.fields == b.fields && a.vertices == b.vertices && a.edges == b.edges &&
         a.cphi == b.cphi && a.loop_cutoff == b.loop_cutoff && a.linear_terms == b.linear_terms &&
         a.allow_tadpoles == b.allow_tadpoles && a.valence2_cutoff == b.valence2_cutoff &&
         a.massless == b.massless;
}

std::vector<CPhiViolation> validate_cphi(const TheorySpec& spec) {
  std::vector<CPhiViolation> out;
  auto c = [&](const std::string& f) -> CPhiExpr {
    auto it = spec.cphi.find(f);
    return it == spec.cphi.end() ? CPhiExpr{} : it->second;
  };
  for (auto& term : spec.linear_terms) {
    CPhiExpr prod;
    for (auto& f : term) prod = cphi_multiply(prod, c(f));
    if (!prod.empty()) {
      std::string names;
      for (auto& f : term) names += (names.empty() ? "" : " ") + f;
      out.push_back({1, "product of C^phi over linear term [" + names + "] is " + cphi_str(prod) + ", expected 1"});
    }
  }
  for (auto& e : spec.edges) {
    CPhiExpr prod = cphi_multiply(c(e.field), c(e.conjugate_field));
    CPhiExpr want{{e.name, Rational(1)}};
    if (prod != want)
      out.push_back({2, "C^" + e.field + " C^" + e.conjugate_field + " = " + cphi_str(prod) + ", expected G^" + e.name});
  }
  for (auto& f : spec.fields) {
    if (!f.is_source) continue;
    CPhiExpr prod = cphi_multiply(c(f.name), c(*f.partner));
    if (!prod.empty())
      out.push_back({3, "C^" + f.name + " C^" + *f.partner + " = " + cphi_str(prod) + ", expected 1"});
  }
  return out;
}

}  // namespace renhopf
