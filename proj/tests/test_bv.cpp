#include "renhopf/bv.hpp"

#include <doctest.h>

#include <fstream>
#include <iterator>
#include <sstream>

using namespace renhopf;

namespace {

TheorySpec ym() { return load_theory(resolve_theory_path("yang_mills")); }

std::string ym_action_text() {
  std::ifstream in(resolve_action_path(resolve_theory_path("yang_mills")));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

LieExpr atom(const SymbolTable& t, const char* name) { return LieExpr::atom(t.parse_atom(name)); }

LieExpr word(const SymbolTable& t, std::initializer_list<const char*> names, const Poly& c = 1) {
  Word w;
  for (const char* n : names) w.push_back(t.parse_atom(n));
  LieExpr x;
  x.add(w, c);
  return x;
}

}  // namespace

TEST_CASE("symbol degrees follow the theory file") {
  TheorySpec spec = ym();
  SymbolTable t(spec);
  CHECK(t.total(t.parse_atom("A")) == 1);
  CHECK(t.total(t.parse_atom("dA")) == 2);
  CHECK(t.total(t.parse_atom("w")) == 1);
  CHECK(t.total(t.parse_atom("dwbar")) == 0);
  CHECK(t.partner(t.index("K_A")) == t.index("A"));
  CHECK_THROWS(t.parse_atom("nope"));
}

TEST_CASE("bracket and d on two-atom inputs by hand") {
  SymbolTable t(ym());
  // Two odd atoms: [A, w] = Aw + wA.
  CHECK(bracket(t, atom(t, "A"), atom(t, "w")) == word(t, {"A", "w"}) + word(t, {"w", "A"}));
  // Even and odd: [h, w] = hw - wh.
  CHECK(bracket(t, atom(t, "h"), atom(t, "w")) == word(t, {"h", "w"}) - word(t, {"w", "h"}));
  // d(A w) = dA w - A dw.
  CHECK(exterior_d(t, word(t, {"A", "w"})) == word(t, {"dA", "w"}) - word(t, {"A", "dw"}));
  CHECK(exterior_d(t, atom(t, "dA")).is_zero());
  // [w, w] = 2 ww.
  CHECK(bracket(t, atom(t, "w"), atom(t, "w")) == word(t, {"w", "w"}, 2));
  // Leibniz: d[A, w] = [dA, w] - [A, dw].
  LieExpr lhs = exterior_d(t, bracket(t, atom(t, "A"), atom(t, "w")));
  LieExpr rhs = bracket(t, atom(t, "dA"), atom(t, "w")) - bracket(t, atom(t, "A"), atom(t, "dw"));
  CHECK(lhs == rhs);
}

TEST_CASE("trace of a commutator vanishes") {
  SymbolTable t(ym());
  Functional f = pairing(t, bracket(t, atom(t, "h"), atom(t, "wbar")), atom(t, "w"));
  Functional g = pairing(t, atom(t, "h"), bracket(t, atom(t, "wbar"), atom(t, "w")));
  // tr([h, wbar] w) = tr(h [wbar, w]) by cyclicity.
  CHECK(f == g);
  // tr(dA [dA, h]) = tr(dA dA h) - tr(dA h dA) = 0, but the cubic YM term survives.
  CHECK(pairing(t, atom(t, "dA"), bracket(t, atom(t, "dA"), atom(t, "h"))).is_zero());
  CHECK(!pairing(t, atom(t, "dA"), bracket(t, atom(t, "A"), atom(t, "A"))).is_zero());
}

TEST_CASE("action parser") {
  TheorySpec spec = ym();
  SymbolTable t(spec);
  ActionSpec s = parse_action(t, "-1/2*g int tr( dA * [A, A] )\n# comment\n1 int tr( < dw, K_A > )\n");
  CHECK(s.terms.size() == 2);
  CHECK(s.terms[0].coefficient == Poly::var("g") * Rational(-1, 2));
  CHECK_THROWS(parse_action(t, "1 int tr( dA * B )"));
  CHECK_THROWS(parse_action(t, "1 int tr( dA dA )"));
  CHECK(parse_factor(t, "d[A, w]") == exterior_d(t, bracket(t, atom(t, "A"), atom(t, "w"))));
}

TEST_CASE("YM BRST rules read off the action match the paper") {
  TheorySpec spec = ym();
  SymbolTable t(spec);
  ActionSpec s = parse_action(t, ym_action_text());
  BrstRules rules = brst_from_action(t, s);
  Poly lK = Poly::var("lAwKA"), lw = Poly::var("lwwKw");
  // s A = -dw - lAwKA [A, w], s w = -1/2 lwwKw [w, w], s wbar = -h, s h = 0.
  CHECK(rules.at(t.index("A")) == -atom(t, "dw") - lK * bracket(t, atom(t, "A"), atom(t, "w")));
  CHECK(rules.at(t.index("w")) == (lw * Rational(-1, 2)) * bracket(t, atom(t, "w"), atom(t, "w")));
  CHECK(rules.at(t.index("wbar")) == -atom(t, "h"));
  CHECK(rules.at(t.index("h")).is_zero());
}

TEST_CASE("antibracket without complementary pairs is zero") {
  SymbolTable t(ym());
  Functional f = pairing(t, atom(t, "dA"), atom(t, "dA"));
  Functional g = pairing(t, atom(t, "dwbar"), atom(t, "dw"));
  CHECK(antibracket(t, f, g).is_zero());
  CHECK(antibracket(t, f, f).is_zero());
}

TEST_CASE("antibracket of a source term with a field term") {
  SymbolTable t(ym());
  // F = int tr(<h, K_wbar>), G = int tr(dwbar * dw).
  Functional f = pairing(t, atom(t, "h"), atom(t, "K_wbar"));
  Functional g = pairing(t, atom(t, "dwbar"), atom(t, "dw"));
  Functional fg = antibracket(t, f, g);
  CHECK(!fg.is_zero());
  // G has no sources, so only -Var_L(G; wbar -> F <-d/dK_wbar) survives, and
  // F <-d/dK_wbar = h since both factors are even.
  CHECK(fg == Poly(-1) * variation(t, g, t.index("wbar"), atom(t, "h"), true));
}

TEST_CASE("free action has no master constraints") {
  SymbolTable t(ym());
  ActionSpec s = parse_action(t, "-1 int tr( dA * dA )\n1 int tr( dwbar * dw )\n-1 int tr( < dw, K_A > )\n");
  CHECK(master_constraints(t, s).empty());
}

TEST_CASE("YM master constraints and the simple-theory ideal") {
  TheorySpec spec = ym();
  SymbolTable t(spec);
  ActionSpec s = parse_action(t, ym_action_text());
  auto c = master_constraints(t, s);
  Poly l3 = Poly::var("lA3"), l4 = Poly::var("lA4"), lK = Poly::var("lAwKA"), lw = Poly::var("lwwKw"),
       lg = Poly::var("lwbarAw");
  std::vector<Poly> expected = {l3 - lK, l3 * lK - l4, lK - lg, lK - lw, lg - lw};
  std::sort(expected.begin(), expected.end());
  std::sort(c.begin(), c.end());
  CHECK(c.size() == expected.size());
  for (std::size_t i = 0; i < std::min(c.size(), expected.size()); ++i)
    CHECK((c[i] == expected[i] || c[i] == -expected[i]));
  SimpleTheoryReport r = simple_theory_check(spec, master_constraints(t, s));
  CHECK(r.simple);
  CHECK(r.fundamental == "lA3");
  CHECK(r.substitution.at(var_id("lA4")) == l3 * l3);
}

TEST_CASE("a wrong quartic coefficient breaks the simple-theory ideal") {
  TheorySpec spec = ym();
  SymbolTable t(spec);
  std::string text = ym_action_text();
  text.replace(text.find("-1/4*lA4"), 8, "-1/2*lA4");
  ActionSpec s = parse_action(t, text);
  auto c = master_constraints(t, s);
  ActionSpec good = parse_action(t, ym_action_text());
  CHECK(c != master_constraints(t, good));
  CHECK(!simple_theory_check(spec, c).simple);
}

TEST_CASE("simple-theory check edge cases") {
  TheorySpec spec = ym();
  CHECK(!simple_theory_check(spec, {}).simple);
  TheorySpec phi3 = load_theory(resolve_theory_path("phi3"));
  CHECK(simple_theory_check(phi3, {}).simple);
}

TEST_CASE("Groebner basis of a small ideal") {
  Poly x = Poly::var("gx"), y = Poly::var("gy");
  std::vector<VarId> order = {var_id("gx"), var_id("gy")};
  // <x^2 - y, x y - 1> with x > y: reduced basis {x - y^2, y^3 - 1}.
  auto basis = groebner_basis({x * x - y, x * y - 1}, order);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == x - y * y);
  CHECK(basis[1] == y.pow(3) - 1);
  CHECK(groebner_reduce(x.pow(3) - 1, basis, order).is_zero());
  CHECK(same_ideal({x - y}, {y - x, (x - y) * x}, order));
  CHECK(!same_ideal({x - y}, {x + y}, order));
}

TEST_CASE("s^2 on the gauge field and the BV suites") {
  TheorySpec spec = ym();
  SymbolTable t(spec);
  ActionSpec s = parse_action(t, ym_action_text());
  auto dec = decompose_s2_gauge(t, brst_from_action(t, s), "A", "w");
  Poly lK = Poly::var("lAwKA"), lw = Poly::var("lwwKw");
  CHECK(dec.exact);
  // Paper: (lK - lw)[dw, w] + 1/2 (lK^2 - lK lw)[A, [w, w]]
  CHECK(dec.first * (lK * lK - lK * lw) * Rational(1, 2) == dec.second * (lK - lw));
  CHECK(check_master(spec, s).passed());
  CHECK(check_bv_identities(spec, s, 2, 10).passed());
  CHECK(check_toy_bv(2, 10).passed());
}
