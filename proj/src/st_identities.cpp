#include "renhopf/bv.hpp"
#include "renhopf/green.hpp"

namespace renhopf {

namespace {

struct Identity {
  std::string label;
  AlgebraElement difference;
};

using Exponents = std::map<ResidueRef, Rational>;

bool has_residues(const TheorySpec& spec, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (!spec.residue_by_name(n)) return false;
  return true;
}

}  // namespace

CheckResult check_st_identities(GreenAlgebra& ga) {
  CheckResult res;
  res.name = "st";
  const TheorySpec& spec = ga.spec();
  QuotientNF nf(ga);
  if (!nf.decidable()) {
    res.undecidable("J'", nf.undecidable_reason());
    return res;
  }

  std::vector<Identity> ids;
  std::vector<int> interacting;
  for (int v = 0; v < spec.k(); ++v)
    if (spec.vertices[v].valence() > 2) interacting.push_back(v);
  if (interacting.empty()) {
    res.record("no vertex of valence > 2", true);
    return res;
  }
  const int v0 = first_cubic_vertex(spec);
  const std::string g = spec.vertices[v0].name;
  for (int v : interacting) {
    if (v == v0) continue;
    int n = spec.vertices[v].valence() - 2;
    std::string rhs = "Y_" + g + (n == 1 ? "" : "^" + std::to_string(n));
    ids.push_back({"Y_" + spec.vertices[v].name + " = " + rhs, ga.y(v) - ga.y(v0, n)});
  }

  if (has_residues(spec, {"A3", "A4", "wbarAw", "AwKA", "glu", "gho"})) {
    auto r = [&](const char* n) { return *spec.residue_by_name(n); };
    auto gm = [&](const Exponents& e) { return ga.green_monomial(e); };
    ids.push_back({"G^A4/(G^glu)^2 = (G^A3/(G^glu)^{3/2})^2",
                   gm({{r("A4"), 1}, {r("glu"), -2}}) - gm({{r("A3"), 2}, {r("glu"), -3}})});
    ids.push_back({"G^A3/(G^glu)^{3/2} = G^wbarAw/((G^glu)^{1/2} G^gho)",
                   gm({{r("A3"), 1}, {r("glu"), make_rational(-3, 2)}}) -
                       gm({{r("wbarAw"), 1}, {r("glu"), make_rational(-1, 2)}, {r("gho"), -1}})});
    ids.push_back({"G^wbarAw = G^AwKA", gm({{r("wbarAw"), 1}}) - gm({{r("AwKA"), 1}})});
  }

  for (const auto& id : ids) {
    AlgebraElement x = ga.complete(id.difference);
    for (int l = 0; l <= ga.lmax(); ++l) {
      AlgebraElement part = project_loop(ga.table(), x, l);
      AlgebraElement rem = nf.normal_form(part);
      res.record(id.label + " [L=" + std::to_string(l) + "]", rem.is_zero(),
                 rem.is_zero() ? (part.is_zero() ? "identical" : "in J'") : std::to_string(rem.terms().size()) + " terms remain");
    }
  }

  // Controls: identities that must not hold at one loop.
  if (has_residues(spec, {"A3", "wbarAw"}) && ga.lmax() >= 1) {
    auto r = [&](const char* n) { return *spec.residue_by_name(n); };
    AlgebraElement bare = ga.complete(ga.green_monomial({{r("A3"), 1}}) - ga.green_monomial({{r("wbarAw"), 1}}));
    res.record("control: G^A3 = G^wbarAw without propagator factors fails",
               !nf.normal_form(project_loop(ga.table(), bare, 1)).is_zero());
  }
  for (int v : interacting) {
    if (v == v0 || spec.vertices[v].valence() == 3) continue;
    AlgebraElement wrong = ga.complete(ga.y(v) - ga.y(v0));
    if (ga.lmax() >= 1)
      res.record("control: Y_" + spec.vertices[v].name + " = Y_" + g + " fails",
                 !nf.normal_form(project_loop(ga.table(), wrong, 1)).is_zero());
  }
  return res;
}

}  // namespace renhopf
