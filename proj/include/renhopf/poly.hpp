#pragma once

#include "renhopf/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace renhopf {

/// Interned variable handle. Names are global to the process.
using VarId = std::uint32_t;

VarId var_id(const std::string& name);
const std::string& var_name(VarId id);

/// Power product of variables; entries sorted by VarId, exponents > 0.
class PowerProduct {
 public:
  PowerProduct() = default;
  static PowerProduct of(VarId v, int exp = 1);

  const std::vector<std::pair<VarId, int>>& factors() const { return factors_; }
  int degree(VarId v) const;
  int total_degree() const;
  bool is_one() const { return factors_.empty(); }

  PowerProduct operator*(const PowerProduct& other) const;
  /// Removes `v` entirely.
  PowerProduct without(VarId v) const;
  /// Divides if `other` divides this; returns false otherwise.
  bool divide(const PowerProduct& other, PowerProduct& out) const;
  PowerProduct gcd(const PowerProduct& other) const;

  friend auto operator<=>(const PowerProduct&, const PowerProduct&) = default;
  friend bool operator==(const PowerProduct&, const PowerProduct&) = default;

  /// Renders with variables in name order, e.g. "g^2*xi".
  std::string str() const;

 private:
  std::vector<std::pair<VarId, int>> factors_;
};

/// Multivariate polynomial with rational coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly var(const std::string& name);
  static Poly var(VarId v);
  static Poly term(const Rational& c, const PowerProduct& m);

  const std::map<PowerProduct, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int degree(VarId v) const;
  int total_degree() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  Poly operator-() const;
  Poly pow(unsigned n) const;

  friend bool operator==(const Poly&, const Poly&) = default;
  friend auto operator<=>(const Poly& a, const Poly& b) { return a.terms_ <=> b.terms_; }

  /// Coefficient of v^k viewed as a polynomial in the remaining variables.
  Poly coefficient(VarId v, int k) const;
  /// Substitutes a polynomial for a variable.
  Poly substitute(VarId v, const Poly& value) const;
  Poly substitute(const std::map<VarId, Poly>& values) const;
  /// Partial derivative.
  Poly derivative(VarId v) const;
  std::vector<VarId> variables() const;

  /// Removes the largest power product dividing every term and the rational
  /// content, then fixes the sign so the leading term is positive.
  Poly primitive_part() const;

  std::string str() const;

 private:
  void add_term(const PowerProduct& m, const Rational& c);
  std::map<PowerProduct, Rational> terms_;
};

}  // namespace renhopf
