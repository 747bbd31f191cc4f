#include "oracles.hpp"
#include "renhopf/coaction.hpp"
#include "renhopf/diffeo.hpp"

#include <doctest.h>

#include <random>

using namespace renhopf;

namespace {

oracle::Dense dense(const FormalDiffeo& f) {
  oracle::Dense d(f.order() + 2);
  for (const auto& [n, c] : f.component(0).coefficients()) d[n[0]] = c;
  return d;
}

}  // namespace

TEST_CASE("Faa di Bruno coproduct of a_1 and a_2 by hand") {
  auto a = [](int n) { return Poly::var(fdb_variable("a", 0, {n})); };
  auto b = [](int n) { return Poly::var(fdb_variable("b", 0, {n})); };
  // g(f(x)) with f = x + a1 x^2 + a2 x^3, g = x + b1 x^2 + b2 x^3.
  CHECK(fdb_coproduct(1, 0, {1}) == a(1) + b(1));
  CHECK(fdb_coproduct(1, 0, {2}) == a(2) + b(2) + a(1) * b(1) * Rational(2));
  CHECK(fdb_coproduct(1, 0, {0}) == Poly(1));
}

TEST_CASE("composition agrees with dense Horner composition") {
  std::mt19937_64 rng(7);
  const int order = 6;
  for (int s = 0; s < 10; ++s) {
    FormalDiffeo f = random_diffeo(rng, 1, order), g = random_diffeo(rng, 1, order);
    oracle::Dense want = oracle::compose(dense(g), dense(f), order + 1);
    CHECK(dense(compose(g, f)) == want);
  }
}

TEST_CASE("Lagrange inversion against Newton iteration") {
  std::mt19937_64 rng(11);
  const int order = 8;
  for (int s = 0; s < 20; ++s) {
    FormalDiffeo f = random_diffeo(rng, 1, order);
    CHECK(dense(invert(f)) == oracle::newton_inverse(dense(f), order + 1));
  }
}

TEST_CASE("inverse of x + x^2 is the Catalan series") {
  const int order = 7;
  FormalDiffeo f = FormalDiffeo::from_coefficients(1, order, {{{{1}, Rational(1)}}});
  FormalDiffeo g = invert(f);
  // g(x) = sum (-1)^n C_n x^{n+1}
  long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
  for (int n = 0; n <= order; ++n) CHECK(g.a(0, {n}) == Rational((n % 2 ? -1 : 1) * catalan[n]));
}

TEST_CASE("multivariate inversion composes to the identity") {
  std::mt19937_64 rng(3);
  for (int s = 0; s < 5; ++s) {
    FormalDiffeo f = random_diffeo(rng, 2, 4);
    CHECK(compose(f, invert(f)) == FormalDiffeo::identity(2, 4));
  }
}

TEST_CASE("Faa di Bruno suite and semidirect structure") {
  CHECK(check_fdb(5, 10, 6).passed());
  CHECK(check_semidirect(5, 5, 3).passed());
}

TEST_CASE("semidirect product acts on fields after couplings") {
  // k = 1, one edge: g = (u, f) with u = 1 + x, f = x + x^2.
  const int order = 3;
  SemidirectElement g = SemidirectElement::identity(1, 1, order);
  g.wave[0].add({1}, Rational(1));
  g.diffeo = FormalDiffeo::from_coefficients(1, order, {{{{1}, Rational(1)}}});
  SemidirectElement sq = semidirect_mul(g, g);
  // wave = u * (u o f) = (1 + x)(1 + x + x^2) = 1 + 2x + 2x^2 + x^3
  CHECK(sq.wave[0].coefficient({1}) == 2);
  CHECK(sq.wave[0].coefficient({2}) == 2);
  CHECK(sq.wave[0].coefficient({3}) == 1);
  // f o f = x + 2x^2 + 2x^3 + x^4
  CHECK(sq.diffeo.a(0, {1}) == 2);
  CHECK(sq.diffeo.a(0, {2}) == 2);
}
