#include "renhopf/laurent.hpp"
#include "renhopf/poly.hpp"
#include "renhopf/theory.hpp"

#include <doctest.h>

#include <fstream>
#include <iterator>

using namespace renhopf;

TEST_CASE("polynomial arithmetic matches hand expansion") {
  Poly x = Poly::var("x"), y = Poly::var("y");
  Poly p = (x + y).pow(3);
  CHECK(p.coefficient(var_id("x"), 2) == Poly(3) * y);
  CHECK(p.substitute(var_id("y"), Poly(1)) == x.pow(3) + x.pow(2) * Rational(3) + x * Rational(3) + Poly(1));
  CHECK((x * y - y * x).is_zero());
  CHECK(p.derivative(var_id("x")) == (x + y).pow(2) * Rational(3));
}

TEST_CASE("primitive part strips content and common monomials") {
  Poly x = Poly::var("x"), y = Poly::var("y");
  Poly p = (x * y * Rational(-6) + x.pow(2) * Rational(4)) * Rational(1, 2);
  Poly q = p.primitive_part();
  CHECK(q.total_degree() == 1);
  CHECK((q * q).total_degree() == 2);
  CHECK(q.constant_term() == 0);
  // -3xy + 2x^2 = x (2x - 3y); the primitive part is 2x - 3y up to sign.
  CHECK((q == x * Rational(2) - y * Rational(3) || q == y * Rational(3) - x * Rational(2)));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("5") == 5);
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("Laurent series product tracks precision") {
  Poly a = Poly::var("a");
  // (1/z + a) * (z + O(z^2)): z^0 and z^1 known only through the precision of the truncated factor.
  LaurentSeries u = LaurentSeries::monomial(1, -1) + LaurentSeries(a);
  LaurentSeries v = LaurentSeries::monomial(1, 1, 2);
  LaurentSeries w = u * v;
  CHECK(w.coefficient(0) == Poly(1));
  CHECK(w.precision() == 1);
  CHECK_THROWS(w.coefficient(1));
  CHECK(u.pole_part() == LaurentSeries::monomial(1, -1));
  CHECK(u.regular_part() == LaurentSeries(a));
}

TEST_CASE("exp(a z) coefficients are a^k / k!") {
  Poly a = Poly::var("a");
  LaurentSeries e = LaurentSeries::exp_linear(a, 5);
  Rational fact = 1;
  for (int k = 0; k < 5; ++k) {
    if (k) fact *= k;
    CHECK(e.coefficient(k) == a.pow(k) * Rational(1 / fact));
  }
}

TEST_CASE("bundled theories load and round-trip") {
  for (const char* name : {"phi3", "qed", "yang_mills"}) {
    TheorySpec spec = load_theory(resolve_theory_path(name));
    CHECK(parse_theory(serialize_theory(spec)) == spec);
    CHECK(validate_cphi(spec).empty());
  }
}

TEST_CASE("theory parser reports the offending key") {
  std::ifstream in(resolve_theory_path("phi3"));
  std::string bad((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  bad.replace(bad.find(R"(["phi", "phi", "phi"])"), 21, R"(["phi", "phi", "chi"])");
  try {
    parse_theory(bad);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CAPTURE(std::string(e.what()));
    CHECK(std::string(e.what()).find("chi") != std::string::npos);
  }
  CHECK_THROWS(parse_theory("{"));
}

TEST_CASE("C^phi powers multiply exponents") {
  TheorySpec spec = load_theory(resolve_theory_path("yang_mills"));
  CPhiExpr w = spec.cphi.at("w");
  CPhiExpr sq = cphi_multiply(w, w);
  CHECK(sq == cphi_power(w, 2));
  CHECK(cphi_multiply(w, cphi_power(w, -1)).empty());
}
