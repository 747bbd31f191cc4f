#pragma once

#include "renhopf/poly.hpp"
#include "renhopf/rational.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace renhopf {

inline bool ring_is_zero(const Rational& c) { return c == 0; }
inline bool ring_is_zero(const Poly& c) { return c.is_zero(); }
inline std::string ring_str(const Rational& c) { return to_string(c); }
inline std::string ring_str(const Poly& c) { return c.str(); }
inline Rational ring_inverse(const Rational& c) {
  if (c == 0) throw std::domain_error("division by zero");
  return 1 / c;
}
inline Poly ring_inverse(const Poly& c) {
  if (!c.is_constant() || c.is_zero()) throw std::domain_error("inverse of a non-constant polynomial");
  return Poly(Rational(1 / c.constant_term()));
}

using MultiIndex = std::vector<int>;

/// Truncated power series in k variables over the ring R; monomials of
/// total degree > order are dropped.
template <class R>
class Series {
 public:
  Series() = default;
  Series(int k, int order) : k_(k), order_(order) {}
  static Series constant(int k, int order, const R& c) {
    Series s(k, order);
    s.add(MultiIndex(k, 0), c);
    return s;
  }
  static Series variable(int k, int order, int i) {
    Series s(k, order);
    MultiIndex n(k, 0);
    n[i] = 1;
    s.add(n, R(1));
    return s;
  }

  int k() const { return k_; }
  int order() const { return order_; }
  const std::map<MultiIndex, R>& coefficients() const { return coef_; }
  R coefficient(const MultiIndex& n) const {
    auto it = coef_.find(n);
    return it == coef_.end() ? R(0) : it->second;
  }
  R constant_term() const { return coefficient(MultiIndex(k_, 0)); }

  void add(const MultiIndex& n, const R& c) {
    if (degree(n) > order_ || ring_is_zero(c)) return;
    auto [it, inserted] = coef_.emplace(n, c);
    if (!inserted) {
      it->second += c;
      if (ring_is_zero(it->second)) coef_.erase(it);
    }
  }

  Series& operator+=(const Series& o) {
    for (const auto& [n, c] : o.coef_) add(n, c);
    return *this;
  }
  Series& operator-=(const Series& o) {
    for (const auto& [n, c] : o.coef_) add(n, -c);
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b) {
    Series out(a.k_, std::min(a.order_, b.order_));
    for (const auto& [na, ca] : a.coef_)
      for (const auto& [nb, cb] : b.coef_) {
        MultiIndex n(a.k_);
        for (int i = 0; i < a.k_; ++i) n[i] = na[i] + nb[i];
        out.add(n, ca * cb);
      }
    return out;
  }
  friend Series operator*(Series a, const R& c) {
    Series out(a.k_, a.order_);
    for (const auto& [n, v] : a.coef_) out.add(n, v * c);
    return out;
  }
  friend bool operator==(const Series& a, const Series& b) { return a.k_ == b.k_ && a.coef_ == b.coef_; }

  Series pow(unsigned e) const {
    Series out = constant(k_, order_, R(1)), base = *this;
    while (e) {
      if (e & 1) out = out * base;
      base = base * base;
      e >>= 1;
    }
    return out;
  }

  /// Multiplicative inverse; the constant term must be invertible in R.
  Series inverse() const {
    R c0 = constant_term();
    R inv0 = ring_inverse(c0);
    Series u = *this * inv0;                      // 1 + a
    Series a = u - constant(k_, order_, R(1));  // no constant term
    Series out = constant(k_, order_, R(1)), term = out;
    for (int d = 1; d <= order_; ++d) {
      term = term * a * R(-1);
      out += term;
    }
    return out * inv0;
  }

  /// (1 + a)^alpha by the binomial series; the constant term must be 1.
  Series power(const Rational& alpha) const {
    if (!(constant_term() == R(1))) throw std::domain_error("rational power needs constant term 1");
    Series a = *this - constant(k_, order_, R(1));
    Series out = constant(k_, order_, R(1)), term = out;
    Rational b = 1;
    for (int d = 1; d <= order_; ++d) {
      b *= alpha - (d - 1);
      b /= d;
      term = term * a;
      out += term * R(b);
    }
    return out;
  }

  /// Substitutes series g[0..k-1] for the variables; the g's must have no constant term.
  Series substitute(const std::vector<Series>& g) const {
    int kk = g.empty() ? 0 : g[0].k_;
    int ord = g.empty() ? order_ : g[0].order_;
    Series out(kk, ord);
    std::vector<std::vector<Series>> powers(k_);
    for (const auto& [n, c] : coef_) {
      Series term = constant(kk, ord, c);
      for (int i = 0; i < k_; ++i) {
        if (n[i] == 0) continue;
        auto& p = powers[i];
        if (p.empty()) p.push_back(constant(kk, ord, R(1)));
        while (static_cast<int>(p.size()) <= n[i]) p.push_back(p.back() * g[i]);
        term = term * p[n[i]];
      }
      out += term;
    }
    return out;
  }

  Series truncated(int order) const {
    Series out(k_, order);
    for (const auto& [n, c] : coef_) out.add(n, c);
    return out;
  }

  /// Lines `x1^2*x2: 3/4`, graded-lex by multi-index.
  std::string str(const std::vector<std::string>& names = {}) const {
    std::vector<std::pair<MultiIndex, const R*>> items;
    for (const auto& [n, c] : coef_) items.emplace_back(n, &c);
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      int da = degree(a.first), db = degree(b.first);
      if (da != db) return da < db;
      return a.first > b.first;
    });
    std::string s;
    for (const auto& [n, c] : items) {
      std::string mono;
      for (int i = 0; i < k_; ++i) {
        if (n[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names.empty() ? "x" + std::to_string(i + 1) : names[i];
        if (n[i] > 1) mono += "^" + std::to_string(n[i]);
      }
      s += (mono.empty() ? "1" : mono) + ": " + ring_str(*c) + "\n";
    }
    return s;
  }

  static int degree(const MultiIndex& n) {
    int d = 0;
    for (int e : n) d += e;
    return d;
  }

 private:
  int k_ = 0;
  int order_ = 0;
  std::map<MultiIndex, R> coef_;
};

/// Formal diffeomorphism of (C^k, 0) tangent to the identity: components
/// f_i = x_i (1 + ...), kept up to total degree order + 1.
class FormalDiffeo {
 public:
  FormalDiffeo() = default;
  explicit FormalDiffeo(std::vector<Series<Rational>> components);
  static FormalDiffeo identity(int k, int order);
  /// f_i = x_i * sum_n a[i][n] x^n with a[i][0] = 1 implied.
  static FormalDiffeo from_coefficients(int k, int order, const std::vector<std::map<MultiIndex, Rational>>& a);

  int k() const { return static_cast<int>(f_.size()); }
  int order() const { return order_; }
  const Series<Rational>& component(int i) const { return f_.at(i); }
  const std::vector<Series<Rational>>& components() const { return f_; }
  /// a^{(i)}_n: coefficient of x_i x^n in f_i.
  Rational a(int i, const MultiIndex& n) const;
  bool tangent_to_identity() const;

  friend bool operator==(const FormalDiffeo&, const FormalDiffeo&) = default;
  std::string str() const;

 private:
  std::vector<Series<Rational>> f_;
  int order_ = 0;
};

/// (f o g)(x) = f(g(x)).
FormalDiffeo compose(const FormalDiffeo& f, const FormalDiffeo& g);
/// Lagrange inversion for k = 1, fixed-point iteration otherwise.
FormalDiffeo invert(const FormalDiffeo& f);

/// Coordinate a^{(i)}_n of Diff(C^k, 0) as a polynomial variable, with a
/// prefix separating tensor factors: "a1_2,0" for prefix "a", i = 0, n = (2,0).
std::string fdb_variable(const std::string& prefix, int i, const MultiIndex& n);
/// Delta(a^{(i)}_n) from the generating-series form, as a polynomial in the
/// left ("a") and right ("b") coordinates.
Poly fdb_coproduct(int k, int i, const MultiIndex& n);
/// Evaluates a polynomial in coordinates with the given prefix at f.
Poly fdb_evaluate(const Poly& p, const std::string& prefix, const FormalDiffeo& f);

/// Random tangent-to-identity diffeomorphism with small integer coefficients.
FormalDiffeo random_diffeo(std::mt19937_64& rng, int k, int order, bool odd_only = false);
Series<Rational> random_invertible_series(std::mt19937_64& rng, int k, int order);

/// Element of (C[[x]]^x)^{|R_E|} semidirect Diff(C^k, 0), acting on
/// couplings by x -> diffeo(x) and on the field of edge type e by
/// multiplication with wave[e].
struct SemidirectElement {
  std::vector<Series<Rational>> wave;
  FormalDiffeo diffeo;

  static SemidirectElement identity(int edges, int k, int order);
  bool is_pure_wave() const;
  friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

/// g1 o g2 as algebra maps: diffeo = diffeo2 o diffeo1,
/// wave_e = wave1_e * (wave2_e o diffeo1).
SemidirectElement semidirect_mul(const SemidirectElement& g1, const SemidirectElement& g2);
SemidirectElement semidirect_inverse(const SemidirectElement& g);

}  // namespace renhopf
