#pragma once

#include "renhopf/diffeo.hpp"
#include "renhopf/green.hpp"

#include <cstdint>
#include <functional>
#include <map>

namespace renhopf {

/// Scalar character on graph generators, extended multiplicatively.
using Character = std::function<Rational(int id)>;

Rational evaluate(const Character& chi, const AlgebraElement& x);
/// (chi1 * chi2)(G) = sum chi1(G') chi2(G''), memoized.
Character convolve(HopfAlgebra& hopf, Character chi1, Character chi2);
/// Deterministic small-rational character keyed by canonical strings.
Character seeded_character(const GraphTable& table, std::uint64_t seed);

/// F_i(x) = x_i sum_m chi(p_m(Y_{v_i})) x^m, keeping only multidegrees in
/// the complete range of `ga`.
FormalDiffeo character_to_diffeo(GreenAlgebra& ga, const Character& chi, int order);
/// Drops monomials of F_i whose multidegree lies outside the complete range.
FormalDiffeo restrict_complete(const GreenAlgebra& ga, const FormalDiffeo& f);

/// Element of A_R (x) H: coupling/field monomial -> H coefficient.
using CoactionValue = std::map<PowerProduct, AlgebraElement>;

/// rho(lambda_v) = sum_n lambda_v lambda^n (x) p_n(Y_v).
CoactionValue coaction_coupling(GreenAlgebra& ga, int v);
/// rho(phi) = sum_n phi lambda^n (x) p_n(C^phi).
CoactionValue coaction_field(GreenAlgebra& ga, const std::string& field);
/// rho extended as an algebra map to a monomial in couplings and fields.
CoactionValue coaction_monomial(GreenAlgebra& ga, const PowerProduct& m);
std::string coaction_str(const GraphTable& t, const CoactionValue& v);

/// (rho (x) 1) rho = (1 (x) Delta) rho on every coupling and field, and the
/// Green's function G^v read off from rho(lambda_v prod phi).
CheckResult check_comodule(GreenAlgebra& ga);
/// Comodule axiom for g -> sum g^{2l+1} (x) q_l(X), phi -> sum g^{2l} phi (x) q_l(C^phi) modulo J'.
CheckResult check_simple_coaction(GreenAlgebra& ga);
/// F^{chi1 * chi2} = F^{chi2} o F^{chi1} for seeded characters.
/// order <= 0 picks the smallest order holding every complete multidegree.
CheckResult check_character_diffeo(GreenAlgebra& ga, std::uint64_t seed, int order = 0);

/// Pairing, inversion and generating-series checks for the Faa di Bruno Hopf algebra.
CheckResult check_fdb(std::uint64_t seed, int samples = 50, int order = 8);
/// Normality of the wave subgroup and the homomorphism to Diff on random elements.
CheckResult check_semidirect(std::uint64_t seed, int samples = 20, int order = 4, int k = 2, int edges = 2);

}  // namespace renhopf
