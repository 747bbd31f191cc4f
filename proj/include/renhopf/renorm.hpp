#pragma once

#include "renhopf/diffeo.hpp"
#include "renhopf/green.hpp"
#include "renhopf/laurent.hpp"
#include "renhopf/report.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace renhopf {

/// Every generator with 1 <= loop <= lmax, by loop, then residue, then canonical order.
std::vector<int> generators_up_to(GraphTable& table, int lmax);

/// Laurent-valued character, given by its values on generators.
class LaurentCharacter {
 public:
  void set(int id, LaurentSeries v) { values_[id] = std::move(v); }
  bool has(int id) const { return values_.count(id) > 0; }
  const LaurentSeries& at(int id) const;
  const std::map<int, LaurentSeries>& values() const { return values_; }

  LaurentSeries operator()(const Monomial& m) const;
  LaurentSeries operator()(const AlgebraElement& x) const;

 private:
  std::map<int, LaurentSeries> values_;
};

struct ToyRules {
  std::uint64_t seed = 1;
  int zmax = 0;            // <= 0 means 2 lmax + 2
  std::string scale = "t"; // mu = e^t
};

int default_zmax(int lmax);

/// Local counterterm with prescribed residue: Z = 1 + sum_k Z_k z^{-k},
/// L(G) Z_1(G) = beta(G) and L(G) Z_{k+1}(G) = (beta * Z_k)(G).
LaurentCharacter local_counterterm(HopfAlgebra& hopf, const std::vector<int>& ids,
                                   const std::map<int, Rational>& beta);

/// U_mu = theta_{tz}(Z^{-1} * rho) with Z local (seeded residue) and rho a
/// seeded polynomial in z. Its counterterm is Z for every mu.
LaurentCharacter toy_rules(HopfAlgebra& hopf, int lmax, const ToyRules& rules);

/// U(G)(z) = e^{t z L} prod_{i <= L} (c_i/z + b_i) with independent seeded
/// factors. Not local: the counterterm depends on mu.
LaurentCharacter product_rules(GraphTable& table, int lmax, const ToyRules& rules);

/// theta_{tz}: multiplies the value on G by e^{t z L(G)}.
LaurentCharacter grading_flow(const GraphTable& table, const LaurentCharacter& gamma, const Poly& t, int precision);

/// Toy rules vanishing on the Slavnov-Taylor ideal: both the residue and the
/// regular part are adjusted on pivot generators, loop by loop.
LaurentCharacter st_compatible_rules(GreenAlgebra& ga, const ToyRules& rules);

using Projection = std::function<LaurentSeries(const LaurentSeries&)>;
LaurentSeries minimal_subtraction(const LaurentSeries& x);

/// gamma_-(G) = -T[gamma(G) + sum' gamma_-(g) gamma(G/g)], gamma_+ = gamma_- * gamma.
class Birkhoff {
 public:
  Birkhoff(HopfAlgebra& hopf, const LaurentCharacter& gamma, Projection T = minimal_subtraction);

  const LaurentSeries& minus(int id);
  const LaurentSeries& plus(int id);
  LaurentSeries minus(const Monomial& m);
  LaurentSeries plus(const Monomial& m);
  /// gamma_-^{-1} = gamma_- o S.
  LaurentSeries minus_inverse(const Monomial& m);

  /// The recursion applied directly to a monomial, with the same recursion for
  /// the left factors. Equals the multiplicative extension iff T is Rota-Baxter.
  LaurentSeries minus_recursive(const Monomial& m);

  LaurentCharacter minus_character(const std::vector<int>& ids);
  LaurentCharacter plus_character(const std::vector<int>& ids);

 private:
  void compute(int id);
  HopfAlgebra& hopf_;
  const LaurentCharacter& gamma_;
  Projection T_;
  std::unordered_map<int, std::pair<LaurentSeries, LaurentSeries>> memo_;
  std::unordered_map<int, LaurentSeries> inverse_;
  std::map<Monomial, LaurentSeries> rec_;
};

/// Scalar character with values polynomial in formal parameters.
using PolyCharacter = std::map<int, Poly>;

Poly evaluate(const PolyCharacter& chi, const Monomial& m);
Poly evaluate(const PolyCharacter& chi, const AlgebraElement& x);
/// (chi1 (x) chi2) Delta on generators.
PolyCharacter convolve(HopfAlgebra& hopf, const PolyCharacter& chi1, const PolyCharacter& chi2,
                       const std::vector<int>& ids);

/// F_t = lim_{z->0} gamma_-(z) theta_{tz}(gamma_-(z)^{-1}). Throws if a pole survives.
PolyCharacter rg_element(HopfAlgebra& hopf, Birkhoff& bk, const std::vector<int>& ids, const std::string& t,
                         int precision);
/// beta = d/dt F_t at t = 0, as rationals on generators.
std::map<int, Rational> beta_function(const PolyCharacter& ft, const std::string& t);
/// beta(lambda_v) = sum_n lambda_v lambda^n beta(p_n(Y_v)), a polynomial in the couplings.
Poly beta_coupling(GreenAlgebra& ga, const std::map<int, Rational>& beta, int v);

struct BirkhoffRow {
  int id;
  LaurentSeries gamma, minus, plus;
  bool mu_independent;
};
std::vector<BirkhoffRow> birkhoff_table(HopfAlgebra& hopf, int lmax, const ToyRules& rules);

CheckResult check_birkhoff(HopfAlgebra& hopf, int lmax, const ToyRules& rules, int pairs = 50);
CheckResult check_rg(GreenAlgebra& ga, const ToyRules& rules);

}  // namespace renhopf
