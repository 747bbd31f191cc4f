#pragma once

#include "renhopf/hopf.hpp"
#include "renhopf/linalg.hpp"
#include "renhopf/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace renhopf {

/// (loop number, valence-2 weight) of a homogeneous piece.
using Slice = std::pair<int, int>;

/// Green's functions and their powers in H, truncated at loop order lmax.
/// Only slices with weight <= valence2_cutoff are complete; helpers named
/// `complete` drop everything else.
class GreenAlgebra {
 public:
  GreenAlgebra(HopfAlgebra& hopf, int lmax);

  HopfAlgebra& hopf() { return hopf_; }
  GraphTable& table() { return hopf_.table(); }
  const TheorySpec& spec() const { return hopf_.table().spec(); }
  int lmax() const { return lmax_; }

  Slice slice(const Monomial& m) const;
  bool in_range(const Monomial& m) const;
  AlgebraElement complete(const AlgebraElement& x) const;
  Tensor complete(const Tensor& x) const;

  /// Truncated product.
  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
  /// (1 + A)^alpha by the binomial series; x must have constant term 1.
  AlgebraElement power(const AlgebraElement& x, const Rational& alpha) const;

  /// G^e = 1 - sum, G^v = 1 + sum, weighted by green_weight.
  const AlgebraElement& green(ResidueRef r);
  AlgebraElement green_power(ResidueRef r, const Rational& alpha);
  /// Product of Green's-function powers, keyed by residue.
  AlgebraElement green_monomial(const std::map<ResidueRef, Rational>& exps);
  AlgebraElement cphi(const std::string& field, const Rational& alpha = 1);
  /// Exponents of Y_v^alpha as a Green's-function monomial.
  std::map<ResidueRef, Rational> y_exponents(int v, const Rational& alpha = 1) const;
  AlgebraElement y(int v, const Rational& alpha = 1);
  /// prod_v Y_v^{n_v}.
  AlgebraElement y_monomial(const std::vector<int>& n);

  /// Multidegrees present in x, with the projections p_n(x).
  std::map<std::vector<int>, AlgebraElement> by_multidegree(const AlgebraElement& x) const;

 private:
  HopfAlgebra& hopf_;
  int lmax_;
  std::map<ResidueRef, AlgebraElement> green_;
  std::map<std::pair<ResidueRef, std::string>, AlgebraElement> green_pow_;
  std::map<std::vector<int>, AlgebraElement> ymono_;
};

/// Checks Delta(x) = sum_n x Y^n (x) p_n(x) in every complete slice.
CheckResult check_cop_form(GreenAlgebra& ga, const AlgebraElement& x, const std::string& label);
/// The same for G^r, every r in R.
CheckResult check_cop_green(GreenAlgebra& ga);
/// The same for Y_v^alpha, every v in R_V.
CheckResult check_cop_y(GreenAlgebra& ga, const std::vector<Rational>& alphas);

struct IdealGenerator {
  std::string label;
  AlgebraElement element;
  std::optional<Slice> slice;  // nullopt when not homogeneous in (L, w)
};

/// Generators of J' up to loop lmax: q_l(Y_{v'}^{N(v)-2} - Y_v^{N(v')-2})
/// for valence > 2 pairs, and p_n(Y_v), n != 0, for valence-2 v when massless.
std::vector<IdealGenerator> st_ideal_generators(GreenAlgebra& ga);
/// Homogeneous generators p_n(Y_v), p_n(G^e), n != 0, of H_R up to lmax.
std::vector<IdealGenerator> hr_generators(GreenAlgebra& ga);

/// Normal forms modulo J' inside H_R, slice by slice.
class QuotientNF {
 public:
  explicit QuotientNF(GreenAlgebra& ga);
  bool decidable() const { return undecidable_.empty(); }
  const std::string& undecidable_reason() const { return undecidable_; }
  std::size_t generator_count() const { return gens_.size(); }
  const std::vector<IdealGenerator>& generators() const { return gens_; }
  std::size_t dimension(Slice s) const;

  AlgebraElement normal_form(const AlgebraElement& x) const;
  /// (NF (x) NF): zero iff t lies in J' (x) H_R + H_R (x) J'.
  Tensor normal_form(const Tensor& t) const;

 private:
  GreenAlgebra& ga_;
  std::vector<IdealGenerator> gens_;
  std::map<Slice, RowSpace> spans_;
  std::string undecidable_;
};

/// Delta(g) in J' (x) H_R + H_R (x) J' for every generator of J'.
CheckResult check_hopf_ideal(GreenAlgebra& ga);
/// Delta(X) = sum_l X^{2l+1} (x) q_l(X) modulo J', X = Y_{v0}^{1/(N(v0)-2)}
/// for the first vertex type of valence > 2.
CheckResult check_quotient_x(GreenAlgebra& ga);
/// Lemma 1 and grading compatibility of the coproduct on all generators.
CheckResult check_grading(GreenAlgebra& ga, int lmax);
/// Coassociativity, counit and antipode axioms on all generators.
CheckResult check_hopf_axioms(HopfAlgebra& hopf, int lmax);

int first_cubic_vertex(const TheorySpec& spec);

}  // namespace renhopf
