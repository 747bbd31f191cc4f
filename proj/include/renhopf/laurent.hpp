#pragma once

#include "renhopf/poly.hpp"

#include <map>
#include <string>

namespace renhopf {

/// Truncated Laurent series in z with polynomial coefficients.
///
/// Coefficients of z^k are known exactly for k < precision(). Finite Laurent
/// polynomials carry precision kExact. Products track precision from the
/// valuations of the factors, so no coefficient is ever reported that the
/// truncation could have changed.
class LaurentSeries {
 public:
  static constexpr int kExact = 1 << 28;

  LaurentSeries() = default;
  LaurentSeries(const Poly& c, int precision = kExact);  // NOLINT(google-explicit-constructor)
  static LaurentSeries monomial(const Poly& c, int power, int precision = kExact);
  /// exp(a z) with coefficients through z^(precision-1).
  static LaurentSeries exp_linear(const Poly& a, int precision);

  const std::map<int, Poly>& coefficients() const { return coeffs_; }
  int precision() const { return prec_; }
  bool exact() const { return prec_ >= kExact; }
  /// Throws if k is beyond the precision.
  Poly coefficient(int k) const;
  /// Lowest power with a nonzero coefficient; precision() for zero series.
  int valuation() const;
  bool is_zero() const { return coeffs_.empty(); }

  /// Negative powers only (minimal subtraction).
  LaurentSeries pole_part() const;
  /// Non-negative powers.
  LaurentSeries regular_part() const;
  LaurentSeries truncated(int precision) const;

  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(LaurentSeries a, const Rational& c);
  LaurentSeries operator-() const { return *this * Rational(-1); }

  /// Structural equality, including precision.
  friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;
  /// Equality of all coefficients below the common precision.
  bool agrees(const LaurentSeries& o) const;

  LaurentSeries substitute(const std::map<VarId, Poly>& values) const;
  bool depends_on(VarId v) const;

  /// One "z^k: coeff" line per nonzero coefficient, then "O(z^p)" if truncated.
  std::string str() const;

 private:
  void clip();
  std::map<int, Poly> coeffs_;
  int prec_ = kExact;
};

}  // namespace renhopf
