#include "renhopf/bv.hpp"
#include "renhopf/green.hpp"

#include <algorithm>
#include <set>

namespace renhopf {

namespace {

struct Lex {
  std::vector<VarId> vars;  // high to low

  std::vector<int> exps(const PowerProduct& m) const {
    std::vector<int> e(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) e[i] = m.degree(vars[i]);
    return e;
  }
  bool less(const PowerProduct& a, const PowerProduct& b) const { return exps(a) < exps(b); }

  std::pair<PowerProduct, Rational> lead(const Poly& p) const {
    auto it = p.terms().begin();
    auto best = it;
    for (; it != p.terms().end(); ++it)
      if (less(best->first, it->first)) best = it;
    return {best->first, best->second};
  }
};

Lex make_order(const std::vector<Poly>& a, const std::vector<Poly>& b, const std::vector<VarId>& order) {
  Lex lex{order};
  std::set<VarId> seen(order.begin(), order.end());
  std::vector<VarId> extra;
  for (const auto* list : {&a, &b})
    for (const Poly& p : *list)
      for (VarId v : p.variables())
        if (seen.insert(v).second) extra.push_back(v);
  std::sort(extra.begin(), extra.end(), [](VarId x, VarId y) { return var_name(x) < var_name(y); });
  lex.vars.insert(lex.vars.begin(), extra.begin(), extra.end());
  return lex;
}

PowerProduct lcm(const PowerProduct& a, const PowerProduct& b) {
  PowerProduct g = a.gcd(b), q;
  (a * b).divide(g, q);
  return q;
}

Poly reduce(Poly p, const std::vector<Poly>& basis, const Lex& lex) {
  Poly rem;
  while (!p.is_zero()) {
    auto [m, c] = lex.lead(p);
    bool divided = false;
    for (const Poly& g : basis) {
      auto [gm, gc] = lex.lead(g);
      PowerProduct q;
      if (!m.divide(gm, q)) continue;
      p -= Poly::term(c / gc, q) * g;
      divided = true;
      break;
    }
    if (!divided) {
      Poly t = Poly::term(c, m);
      rem += t;
      p -= t;
    }
  }
  return rem;
}

Poly monic(const Poly& p, const Lex& lex) {
  auto [m, c] = lex.lead(p);
  return p * Rational(1 / c);
}

std::vector<Poly> buchberger(const std::vector<Poly>& gens, const Lex& lex) {
  std::vector<Poly> g;
  for (const Poly& p : gens)
    if (!p.is_zero()) g.push_back(monic(p, lex));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    auto [mi, ci] = lex.lead(g[i]);
    auto [mj, cj] = lex.lead(g[j]);
    if (mi.gcd(mj).is_one()) continue;  // coprime leading terms
    PowerProduct l = lcm(mi, mj), qi, qj;
    l.divide(mi, qi);
    l.divide(mj, qj);
    Poly s = Poly::term(1 / ci, qi) * g[i] - Poly::term(1 / cj, qj) * g[j];
    Poly r = reduce(s, g, lex);
    if (r.is_zero()) continue;
    g.push_back(monic(r, lex));
    for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace_back(k, g.size() - 1);
  }
  // Minimal, then reduced.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto mi = lex.lead(g[i]).first;
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      auto mj = lex.lead(g[j]).first;
      PowerProduct q;
      if (mi.divide(mj, q) && (mi != mj || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    reduced.push_back(monic(reduce(minimal[i], others, lex), lex));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const Poly& a, const Poly& b) { return lex.less(lex.lead(b).first, lex.lead(a).first); });
  return reduced;
}

}  // namespace

std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const std::vector<VarId>& order) {
  return buchberger(gens, make_order(gens, {}, order));
}

Poly groebner_reduce(const Poly& p, const std::vector<Poly>& basis, const std::vector<VarId>& order) {
  return reduce(p, basis, make_order(basis, {p}, order));
}

bool same_ideal(const std::vector<Poly>& a, const std::vector<Poly>& b, const std::vector<VarId>& order) {
  Lex lex = make_order(a, b, order);
  return buchberger(a, lex) == buchberger(b, lex);
}

SimpleTheoryReport simple_theory_check(const TheorySpec& spec, const std::vector<Poly>& constraints) {
  SimpleTheoryReport out;
  std::map<VarId, Poly> massless;
  std::vector<int> interacting;
  for (int v = 0; v < spec.k(); ++v) {
    if (spec.vertices[v].valence() == 2)
      massless[var_id(spec.vertices[v].coupling)] = Poly();
    else
      interacting.push_back(v);
  }
  if (interacting.empty()) {
    out.simple = constraints.empty();
    return out;
  }
  int g = interacting.front();
  for (int v : interacting)
    if (spec.vertices[v].valence() < spec.vertices[g].valence()) g = v;
  const VarId gvar = var_id(spec.vertices[g].coupling);
  out.fundamental = spec.vertices[g].coupling;
  for (std::size_t i = 0; i < interacting.size(); ++i) {
    const auto& vi = spec.vertices[interacting[i]];
    out.substitution[var_id(vi.coupling)] = Poly::var(gvar).pow(static_cast<unsigned>(vi.valence() - 2));
    for (std::size_t j = i + 1; j < interacting.size(); ++j) {
      const auto& vj = spec.vertices[interacting[j]];
      Poly p = Poly::var(vj.coupling).pow(static_cast<unsigned>(vi.valence() - 2)) -
               Poly::var(vi.coupling).pow(static_cast<unsigned>(vj.valence() - 2));
      out.expected.push_back(p);
    }
  }
  std::vector<Poly> reduced;
  for (const Poly& c : constraints) {
    Poly r = c.substitute(massless);
    if (!r.is_zero()) reduced.push_back(r);
  }
  std::vector<VarId> order;
  for (int v : interacting)
    if (v != g) order.push_back(var_id(spec.vertices[v].coupling));
  order.push_back(gvar);
  out.basis = groebner_basis(reduced, order);
  out.simple = same_ideal(reduced, out.expected, order);
  return out;
}

}  // namespace renhopf
