#include "renhopf/renorm.hpp"

#include <doctest.h>

using namespace renhopf;

namespace {

struct Phi3 {
  GraphTable table{load_theory(resolve_theory_path("phi3"))};
  HopfAlgebra hopf{table};
  int id(const std::string& text) { return table.intern(parse_graph(table.spec(), text)); }
};

const char* kBubble = "vertices: [phi3@0, phi3@1]; edges: [prop: 0.0 - 1.0, prop: 0.1 - 1.1]; ext: [0.2:phi, 1.2:phi]; bullet: 0";
const char* kTriangle =
    "vertices: [phi3@0, phi3@1, phi3@2]; edges: [prop: 0.0 - 1.0, prop: 0.1 - 2.0, prop: 1.1 - 2.1]; "
    "ext: [0.2:phi, 1.2:phi, 2.2:phi]; bullet: 0";
const char* kNested =
    "vertices: [phi3@0, phi3@1, phi3@2, phi3@3]; edges: [prop: 0.0 - 1.0, prop: 0.1 - 2.0, "
    "prop: 1.1 - 3.0, prop: 2.1 - 3.1, prop: 2.2 - 3.2]; ext: [0.2:phi, 1.2:phi]; bullet: 0";
const char* kDressed =
    "vertices: [phi3@0, phi3@1, phi3@2, phi3@3]; edges: [prop: 0.0 - 1.0, prop: 0.1 - 2.0, "
    "prop: 0.2 - 3.0, prop: 1.1 - 2.1, prop: 1.2 - 3.1]; ext: [2.2:phi, 3.2:phi]; bullet: 0";

}  // namespace

TEST_CASE("minimal subtraction keeps the pole part") {
  Poly a = Poly::var("a");
  LaurentSeries x = LaurentSeries::monomial(a, -2) + LaurentSeries::monomial(3, -1) + LaurentSeries(a * a);
  CHECK(minimal_subtraction(x) == LaurentSeries::monomial(a, -2) + LaurentSeries::monomial(3, -1));
}

TEST_CASE("two-loop Birkhoff recursion unrolled by hand") {
  Phi3 p;
  int b = p.id(kBubble), t = p.id(kTriangle), g = p.id(kNested), d = p.id(kDressed);
  ToyRules rules;
  rules.seed = 3;
  LaurentCharacter gamma = toy_rules(p.hopf, 2, rules);
  Birkhoff bk(p.hopf, gamma);
  auto T = [](const LaurentSeries& x) { return x.pole_part(); };

  // Primitive graphs: gamma_- = -T gamma, gamma_+ = (1 - T) gamma.
  LaurentSeries mb = -T(gamma.at(b)), mt = -T(gamma.at(t));
  CHECK(bk.minus(b) == mb);
  CHECK(bk.plus(b).agrees(gamma.at(b).regular_part()));
  CHECK(bk.minus(t) == mt);

  // Delta'(nested) = b (x) b.
  LaurentSeries bar_g = gamma.at(g) + mb * gamma.at(b);
  CHECK(bk.minus(g) == -T(bar_g));
  CHECK(bk.plus(g).agrees(bar_g - T(bar_g)));
  // Delta'(dressed) = 2 t (x) b.
  LaurentSeries bar_d = gamma.at(d) + mt * gamma.at(b) * Rational(2);
  CHECK(bk.minus(d) == -T(bar_d));
  CHECK(bk.plus(d).agrees(bar_d - T(bar_d)));

  // gamma_- is a pure pole and gamma_+ regular.
  for (int id : {b, t, g, d}) {
    CHECK(bk.plus(id).valuation() >= 0);
    for (const auto& [k, c] : bk.minus(id).coefficients()) CHECK(k < 0);
  }
}

TEST_CASE("counterterm of the toy rules does not depend on the scale") {
  Phi3 p;
  ToyRules rules;
  auto rows = birkhoff_table(p.hopf, 2, rules);
  REQUIRE(!rows.empty());
  for (const auto& row : rows) {
    CHECK(row.mu_independent);
    CHECK(!row.minus.depends_on(var_id(rules.scale)));
  }
  // The product-form control does depend on it.
  LaurentCharacter naive = product_rules(p.table, 2, rules);
  Birkhoff bn(p.hopf, naive);
  bool dependent = false;
  for (int id : generators_up_to(p.table, 2)) dependent |= bn.minus(id).depends_on(var_id(rules.scale));
  CHECK(dependent);
}

TEST_CASE("Birkhoff suite on phi3 and QED") {
  Phi3 p;
  CHECK(check_birkhoff(p.hopf, 2, ToyRules{}).passed());
  GraphTable qt(load_theory(resolve_theory_path("qed")));
  HopfAlgebra qh(qt);
  CHECK(check_birkhoff(qh, 2, ToyRules{}).passed());
}

TEST_CASE("renormalization group on YM") {
  GraphTable table(load_theory(resolve_theory_path("yang_mills")));
  HopfAlgebra hopf(table);
  GreenAlgebra ga(hopf, 2);
  CheckResult r = check_rg(ga, ToyRules{});
  CHECK(r.passed());
}

TEST_CASE("local counterterm follows the 't Hooft recursion") {
  Phi3 p;
  int b = p.id(kBubble);
  LaurentCharacter z = local_counterterm(p.hopf, {b}, {{b, Rational(3)}});
  // L(b) = 1: Z_1 = beta, Z_2 = (beta * Z_1)(b) = 0 for a primitive graph.
  CHECK(z.at(b) == LaurentSeries::monomial(3, -1));
}
