#include "renhopf/diffeo.hpp"

#include <functional>
#include <sstream>

namespace renhopf {

FormalDiffeo::FormalDiffeo(std::vector<Series<Rational>> components) : f_(std::move(components)) {
  order_ = f_.empty() ? 0 : f_[0].order() - 1;
}

FormalDiffeo FormalDiffeo::identity(int k, int order) {
  std::vector<Series<Rational>> f;
  for (int i = 0; i < k; ++i) f.push_back(Series<Rational>::variable(k, order + 1, i));
  return FormalDiffeo(std::move(f));
}

FormalDiffeo FormalDiffeo::from_coefficients(int k, int order, const std::vector<std::map<MultiIndex, Rational>>& a) {
  FormalDiffeo f = identity(k, order);
  for (int i = 0; i < k; ++i)
    for (const auto& [n, c] : a.at(i)) {
      if (Series<Rational>::degree(n) == 0) continue;
      MultiIndex m = n;
      ++m[i];
      f.f_[i].add(m, c);
    }
  return f;
}

Rational FormalDiffeo::a(int i, const MultiIndex& n) const {
  MultiIndex m = n;
  ++m.at(i);
  return f_.at(i).coefficient(m);
}

bool FormalDiffeo::tangent_to_identity() const {
  for (int i = 0; i < k(); ++i) {
    if (a(i, MultiIndex(k(), 0)) != 1) return false;
    for (const auto& [n, c] : f_[i].coefficients())
      if (n[i] == 0) return false;
  }
  return true;
}

std::string FormalDiffeo::str() const {
  std::string s;
  for (int i = 0; i < k(); ++i) s += "f" + std::to_string(i + 1) + ":\n" + f_[i].str();
  return s;
}

FormalDiffeo compose(const FormalDiffeo& f, const FormalDiffeo& g) {
  if (f.k() != g.k()) throw std::invalid_argument("compose: dimension mismatch");
  std::vector<Series<Rational>> out;
  for (int i = 0; i < f.k(); ++i) out.push_back(f.component(i).substitute(g.components()));
  return FormalDiffeo(std::move(out));
}

FormalDiffeo invert(const FormalDiffeo& f) {
  int k = f.k(), d = f.order();
  if (k == 1) {
    // [x^n] f^{-1} = (1/n) [x^{n-1}] (x/f)^n
    Series<Rational> h(1, d);
    for (const auto& [n, c] : f.component(0).coefficients()) h.add({n[0] - 1}, c);
    Series<Rational> hinv = h.inverse();
    Series<Rational> g(1, d + 1);
    for (int n = 1; n <= d + 1; ++n) g.add({n}, hinv.pow(n).coefficient({n - 1}) / Rational(n));
    return FormalDiffeo({g});
  }
  // g = x - phi(g) with f = x + phi
  FormalDiffeo id = FormalDiffeo::identity(k, d);
  std::vector<Series<Rational>> phi;
  for (int i = 0; i < k; ++i) phi.push_back(f.component(i) - id.component(i));
  std::vector<Series<Rational>> g = id.components();
  for (int it = 0; it <= d; ++it) {
    std::vector<Series<Rational>> next;
    for (int i = 0; i < k; ++i) next.push_back(id.component(i) - phi[i].substitute(g));
    g = std::move(next);
  }
  return FormalDiffeo(std::move(g));
}

std::string fdb_variable(const std::string& prefix, int i, const MultiIndex& n) {
  std::string s = prefix + std::to_string(i + 1) + "_";
  for (std::size_t j = 0; j < n.size(); ++j) s += (j ? "," : "") + std::to_string(n[j]);
  return s;
}

namespace {

// All multi-indices of k entries with total degree in [1, d].
std::vector<MultiIndex> indices_up_to(int k, int d) {
  std::vector<MultiIndex> out;
  MultiIndex n(k, 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == k) {
      if (Series<Rational>::degree(n) > 0) out.push_back(n);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      n[j] = e;
      rec(j + 1, left - e);
    }
    n[j] = 0;
  };
  rec(0, d);
  return out;
}

}  // namespace

Poly fdb_coproduct(int k, int i, const MultiIndex& n) {
  int d = Series<Poly>::degree(n);
  std::vector<Series<Poly>> A;
  for (int j = 0; j < k; ++j) {
    Series<Poly> s = Series<Poly>::variable(k, d + 1, j);
    for (const auto& m : indices_up_to(k, d)) {
      MultiIndex e = m;
      ++e[j];
      s.add(e, Poly::var(fdb_variable("a", j, m)));
    }
    A.push_back(std::move(s));
  }
  MultiIndex target = n;
  ++target[i];
  auto all = indices_up_to(k, d);
  all.insert(all.begin(), MultiIndex(k, 0));
  Poly out;
  for (const auto& m : all) {
    Series<Poly> prod = A[i];
    for (int j = 0; j < k; ++j) prod = prod * A[j].pow(m[j]);
    Poly right = Series<Poly>::degree(m) == 0 ? Poly(1) : Poly::var(fdb_variable("b", i, m));
    out += prod.coefficient(target) * right;
  }
  return out;
}

Poly fdb_evaluate(const Poly& p, const std::string& prefix, const FormalDiffeo& f) {
  std::map<VarId, Poly> sub;
  for (VarId v : p.variables()) {
    const std::string& name = var_name(v);
    if (name.rfind(prefix, 0) != 0) continue;
    auto us = name.find('_');
    int i = std::stoi(name.substr(prefix.size(), us - prefix.size())) - 1;
    MultiIndex n;
    std::stringstream ss(name.substr(us + 1));
    std::string part;
    while (std::getline(ss, part, ',')) n.push_back(std::stoi(part));
    sub[v] = Poly(f.a(i, n));
  }
  return p.substitute(sub);
}

FormalDiffeo random_diffeo(std::mt19937_64& rng, int k, int order, bool odd_only) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<std::map<MultiIndex, Rational>> a(k);
  for (int i = 0; i < k; ++i)
    for (const auto& n : indices_up_to(k, order)) {
      if (odd_only && Series<Rational>::degree(n) % 2 != 0) continue;
      a[i][n] = coef(rng);
    }
  return FormalDiffeo::from_coefficients(k, order, a);
}

Series<Rational> random_invertible_series(std::mt19937_64& rng, int k, int order) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> lead(1, 3);
  Series<Rational> s = Series<Rational>::constant(k, order, Rational(lead(rng)));
  for (const auto& n : indices_up_to(k, order)) s.add(n, coef(rng));
  return s;
}

SemidirectElement SemidirectElement::identity(int edges, int k, int order) {
  SemidirectElement g;
  for (int e = 0; e < edges; ++e) g.wave.push_back(Series<Rational>::constant(k, order, 1));
  g.diffeo = FormalDiffeo::identity(k, order);
  return g;
}

bool SemidirectElement::is_pure_wave() const { return diffeo == FormalDiffeo::identity(diffeo.k(), diffeo.order()); }

SemidirectElement semidirect_mul(const SemidirectElement& g1, const SemidirectElement& g2) {
  SemidirectElement out;
  out.diffeo = compose(g2.diffeo, g1.diffeo);
  for (std::size_t e = 0; e < g1.wave.size(); ++e) {
    auto moved = g2.wave[e].substitute(g1.diffeo.components()).truncated(g1.wave[e].order());
    out.wave.push_back(g1.wave[e] * moved);
  }
  return out;
}

SemidirectElement semidirect_inverse(const SemidirectElement& g) {
  SemidirectElement out;
  out.diffeo = invert(g.diffeo);
  for (const auto& w : g.wave)
    out.wave.push_back(w.inverse().substitute(out.diffeo.components()).truncated(w.order()));
  return out;
}

}  // namespace renhopf
