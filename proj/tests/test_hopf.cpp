#include "renhopf/hopf.hpp"

#include <doctest.h>

using namespace renhopf;

namespace {

struct Phi3 {
  GraphTable table{load_theory(resolve_theory_path("phi3"))};
  HopfAlgebra hopf{table};
  int id(const std::string& text) { return table.intern(parse_graph(table.spec(), text)); }

  int bubble() { return id("vertices: [phi3@0, phi3@1]; edges: [prop: 0.0 - 1.0, prop: 0.1 - 1.1]; ext: [0.2:phi, 1.2:phi]; bullet: 0"); }
  int triangle() {
    return id("vertices: [phi3@0, phi3@1, phi3@2]; edges: [prop: 0.0 - 1.0, prop: 0.1 - 2.0, prop: 1.1 - 2.1]; "
              "ext: [0.2:phi, 1.2:phi, 2.2:phi]; bullet: 0");
  }
  // Bubble with a self-energy insertion on one line.
  int nested() {
    return id("vertices: [phi3@0, phi3@1, phi3@2, phi3@3]; edges: [prop: 0.0 - 1.0, prop: 0.1 - 2.0, "
              "prop: 1.1 - 3.0, prop: 2.1 - 3.1, prop: 2.2 - 3.2]; ext: [0.2:phi, 1.2:phi]; bullet: 0");
  }
  // Bubble with both vertices dressed by one rung: contains two triangles.
  int dressed() {
    return id("vertices: [phi3@0, phi3@1, phi3@2, phi3@3]; edges: [prop: 0.0 - 1.0, prop: 0.1 - 2.0, "
              "prop: 0.2 - 3.0, prop: 1.1 - 2.1, prop: 1.2 - 3.1]; ext: [2.2:phi, 3.2:phi]; bullet: 0");
  }
};

Tensor primitive_part(int id) {
  Tensor t;
  t.add({id}, {}, 1);
  t.add({}, {id}, 1);
  return t;
}

}  // namespace

TEST_CASE("one-loop graphs are primitive") {
  Phi3 p;
  for (int id : {p.bubble(), p.triangle()}) {
    CHECK(p.hopf.coproduct(id) == primitive_part(id));
    CHECK(p.hopf.antipode(id) == -AlgebraElement::generator(id));
  }
}

TEST_CASE("coproduct of the nested bubble by hand") {
  Phi3 p;
  int b = p.bubble(), g = p.nested();
  Tensor expected = primitive_part(g);
  expected.add({b}, {b}, 1);
  CHECK(p.hopf.coproduct(g) == expected);
  // S(G) = -G - S(b) b = -G + b^2
  CHECK(p.hopf.antipode(g) == -AlgebraElement::generator(g) + AlgebraElement::monomial({b, b}));
}

TEST_CASE("coproduct of the vertex-dressed bubble by hand") {
  Phi3 p;
  int b = p.bubble(), t = p.triangle(), g = p.dressed();
  Tensor expected = primitive_part(g);
  expected.add({t}, {b}, 2);
  CHECK(p.hopf.coproduct(g) == expected);
  CHECK(p.hopf.antipode(g) == -AlgebraElement::generator(g) + AlgebraElement::monomial({b, t}, 2));
}

TEST_CASE("coproduct is multiplicative and the antipode inverts the identity") {
  Phi3 p;
  int b = p.bubble(), g = p.nested();
  Monomial m = mono_mul({b}, {g});
  CHECK(p.hopf.coproduct(m) == p.hopf.coproduct(b) * p.hopf.coproduct(g));
  // m o (S (x) id) o Delta = eta o epsilon on a non-unit monomial.
  Tensor d = p.hopf.coproduct(m);
  AlgebraElement conv;
  for (const auto& [k, c] : d.terms())
    conv += p.hopf.antipode(k.first) * AlgebraElement::monomial(k.second) * c;
  CHECK(conv.is_zero());
}

TEST_CASE("coassociativity on every phi3 generator to three loops") {
  Phi3 p;
  auto spec = p.table.spec();
  for (ResidueRef r : spec.all_residues())
    for (int l = 1; l <= 3; ++l)
      for (int id : p.table.generators(r, l)) {
        const Tensor d = p.hopf.coproduct(id);
        CHECK(p.hopf.coproduct_left(d) == p.hopf.coproduct_right(d));
      }
}

TEST_CASE("tensor product helper") {
  Tensor t = Tensor::product(AlgebraElement::generator(1) + AlgebraElement::one(), AlgebraElement::generator(2));
  CHECK(t.terms().size() == 2);
  CHECK(t.terms().at({{1}, {2}}) == 1);
  CHECK(t.terms().at({{}, {2}}) == 1);
}
