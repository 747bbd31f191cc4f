#include "renhopf/coaction.hpp"

#include <memory>
#include <set>
#include <random>
#include <unordered_map>

namespace renhopf {

Rational evaluate(const Character& chi, const AlgebraElement& x) {
  Rational out = 0;
  for (const auto& [m, c] : x.terms()) {
    Rational v = c;
    for (int id : m) v *= chi(id);
    out += v;
  }
  return out;
}

Character convolve(HopfAlgebra& hopf, Character chi1, Character chi2) {
  auto memo = std::make_shared<std::unordered_map<int, Rational>>();
  return [&hopf, chi1 = std::move(chi1), chi2 = std::move(chi2), memo](int id) {
    auto it = memo->find(id);
    if (it != memo->end()) return it->second;
    Rational v = 0;
    for (const auto& [k, c] : hopf.coproduct(id).terms()) {
      Rational t = c;
      for (int a : k.first) t *= chi1(a);
      for (int b : k.second) t *= chi2(b);
      v += t;
    }
    memo->emplace(id, v);
    return v;
  };
}

Character seeded_character(const GraphTable& table, std::uint64_t seed) {
  return [&table, seed](int id) {
    std::mt19937_64 rng(stable_hash(table.info(id).key) ^ seed);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    int n = num(rng), d = den(rng);
    Rational v(n, d);
    v.canonicalize();
    return v;
  };
}

namespace {

bool complete_multidegree(const GreenAlgebra& ga, const MultiIndex& m) {
  const auto& spec = ga.spec();
  int twice_l = 0, val2 = 0;
  for (int v = 0; v < spec.k(); ++v) {
    twice_l += (spec.vertices[v].valence() - 2) * m[v];
    if (spec.vertices[v].valence() == 2) val2 += m[v];
  }
  int l = twice_l / 2;
  return twice_l % 2 == 0 && l <= ga.lmax() && l + val2 <= spec.valence2_cutoff;
}

}  // namespace

FormalDiffeo character_to_diffeo(GreenAlgebra& ga, const Character& chi, int order) {
  int k = ga.spec().k();
  std::vector<Series<Rational>> f;
  for (int i = 0; i < k; ++i) {
    Series<Rational> s(k, order + 1);
    for (const auto& [m, pm] : ga.by_multidegree(ga.complete(ga.y(i)))) {
      MultiIndex p = m;
      ++p[i];
      s.add(p, evaluate(chi, pm));
    }
    f.push_back(std::move(s));
  }
  return FormalDiffeo(std::move(f));
}

FormalDiffeo restrict_complete(const GreenAlgebra& ga, const FormalDiffeo& f) {
  std::vector<Series<Rational>> out;
  for (int i = 0; i < f.k(); ++i) {
    Series<Rational> s(f.k(), f.order() + 1);
    for (const auto& [p, c] : f.component(i).coefficients()) {
      MultiIndex m = p;
      --m[i];
      if (complete_multidegree(ga, m)) s.add(p, c);
    }
    out.push_back(std::move(s));
  }
  return FormalDiffeo(std::move(out));
}

namespace {

PowerProduct coupling_power(const TheorySpec& spec, const MultiIndex& n) {
  PowerProduct p;
  for (int v = 0; v < spec.k(); ++v)
    if (n[v] != 0) {
      if (n[v] < 0) throw std::logic_error("negative coupling exponent");
      p = p * PowerProduct::of(var_id(spec.vertices[v].coupling), n[v]);
    }
  return p;
}

CoactionValue coaction_mul(GreenAlgebra& ga, const CoactionValue& a, const CoactionValue& b) {
  CoactionValue out;
  for (const auto& [ma, ha] : a)
    for (const auto& [mb, hb] : b) {
      AlgebraElement h = ga.mul(ha, hb);
      if (h.is_zero()) continue;
      auto& slot = out[ma * mb];
      slot += h;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

using CoactionTensor = std::map<PowerProduct, Tensor>;

}  // namespace

CoactionValue coaction_coupling(GreenAlgebra& ga, int v) {
  CoactionValue out;
  for (const auto& [n, pn] : ga.by_multidegree(ga.complete(ga.y(v)))) {
    MultiIndex m = n;
    ++m[v];
    out[coupling_power(ga.spec(), m)] += pn;
  }
  return out;
}

CoactionValue coaction_field(GreenAlgebra& ga, const std::string& field) {
  CoactionValue out;
  for (const auto& [n, pn] : ga.by_multidegree(ga.complete(ga.cphi(field))))
    out[coupling_power(ga.spec(), n) * PowerProduct::of(var_id(field))] += pn;
  return out;
}

CoactionValue coaction_monomial(GreenAlgebra& ga, const PowerProduct& m) {
  const auto& spec = ga.spec();
  CoactionValue out{{PowerProduct(), AlgebraElement::one()}};
  for (const auto& [var, e] : m.factors()) {
    const std::string& name = var_name(var);
    CoactionValue g;
    if (spec.has_field(name)) {
      g = coaction_field(ga, name);
    } else {
      int v = -1;
      for (int i = 0; i < spec.k(); ++i)
        if (spec.vertices[i].coupling == name) v = i;
      if (v < 0) throw std::invalid_argument("unknown coupling or field '" + name + "'");
      g = coaction_coupling(ga, v);
    }
    for (int i = 0; i < e; ++i) out = coaction_mul(ga, out, g);
  }
  return out;
}

std::string coaction_str(const GraphTable& t, const CoactionValue& v) {
  std::string s;
  for (const auto& [m, h] : v) s += (m.is_one() ? "1" : m.str()) + " (x) " + element_str(t, h) + "\n";
  return s;
}

namespace {

std::string first_difference(const GraphTable& t, const CoactionTensor& a, const CoactionTensor& b) {
  std::set<PowerProduct> keys;
  for (const auto& [m, x] : a) keys.insert(m);
  for (const auto& [m, x] : b) keys.insert(m);
  for (const auto& m : keys) {
    Tensor x = a.count(m) ? a.at(m) : Tensor();
    Tensor y = b.count(m) ? b.at(m) : Tensor();
    if (!(x == y)) return (m.is_one() ? "1" : m.str()) + ": " + tensor_str(t, x - y).substr(0, 300);
  }
  return "";
}

CoactionTensor normalize(CoactionTensor x) {
  std::erase_if(x, [](const auto& kv) { return kv.second.is_zero(); });
  return x;
}

}  // namespace

CheckResult check_comodule(GreenAlgebra& ga) {
  CheckResult res;
  res.name = "comodule";
  const auto& spec = ga.spec();
  auto check = [&](const std::string& label, const CoactionValue& rho) {
    CoactionTensor lhs, rhs;
    for (const auto& [m, h] : rho) {
      for (const auto& [m2, h2] : coaction_monomial(ga, m)) lhs[m2] += Tensor::product(h2, h);
      rhs[m] += ga.hopf().coproduct(h);
    }
    for (auto& [m, t] : lhs) t = ga.complete(t);
    for (auto& [m, t] : rhs) t = ga.complete(t);
    lhs = normalize(lhs);
    rhs = normalize(rhs);
    std::string diff = first_difference(ga.table(), lhs, rhs);
    res.record("rho(" + label + ")", diff.empty(), diff);
  };
  for (int v = 0; v < spec.k(); ++v) check(spec.vertices[v].coupling, coaction_coupling(ga, v));
  for (const auto& f : spec.fields) check(f.name, coaction_field(ga, f.name));

  for (int v = 0; v < spec.k(); ++v) {
    PowerProduct mono = PowerProduct::of(var_id(spec.vertices[v].coupling));
    PowerProduct fields;
    for (const auto& leg : spec.vertices[v].legs) fields = fields * PowerProduct::of(var_id(leg));
    CoactionValue rho = coaction_monomial(ga, mono * fields);
    CoactionValue expected;
    for (const auto& [n, pn] : ga.by_multidegree(ga.green({ResidueRef::Kind::Vertex, v}))) {
      MultiIndex m = n;
      ++m[v];
      expected[coupling_power(spec, m) * fields] += pn;
    }
    bool ok = rho == expected;
    res.record("G^" + spec.vertices[v].name + " from rho(" + (mono * fields).str() + ")", ok);
  }
  return res;
}

CheckResult check_simple_coaction(GreenAlgebra& ga) {
  CheckResult res;
  res.name = "simple-coaction";
  QuotientNF q(ga);
  if (!q.decidable()) {
    res.undecidable("J'", q.undecidable_reason());
    return res;
  }
  const auto& spec = ga.spec();
  int v0 = first_cubic_vertex(spec);
  Rational n = spec.vertices[v0].valence() - 2;
  AlgebraElement x = ga.y(v0, 1 / n);
  VarId g = var_id("g");
  int L = ga.lmax();

  CoactionValue rho_g;
  for (int l = 0; l <= L; ++l) rho_g[PowerProduct::of(g, 2 * l + 1)] += project_loop(ga.table(), x, l);
  std::erase_if(rho_g, [](const auto& kv) { return kv.second.is_zero(); });
  auto rho_g_pow = [&](int e) {
    CoactionValue out{{PowerProduct(), AlgebraElement::one()}};
    for (int i = 0; i < e; ++i) out = coaction_mul(ga, out, rho_g);
    return out;
  };

  auto compare = [&](const std::string& label, const CoactionTensor& lhs, const CoactionTensor& rhs) {
    std::set<PowerProduct> keys;
    for (const auto& [m, t] : lhs) keys.insert(m);
    for (const auto& [m, t] : rhs) keys.insert(m);
    bool ok = true;
    std::string detail;
    for (const auto& m : keys) {
      Tensor a = lhs.count(m) ? lhs.at(m) : Tensor();
      Tensor b = rhs.count(m) ? rhs.at(m) : Tensor();
      Tensor d = q.normal_form(ga.complete(a - b));
      if (!d.is_zero() && ok) {
        ok = false;
        detail = m.str() + ": " + tensor_str(ga.table(), d).substr(0, 300);
      }
    }
    res.record(label, ok, detail);
  };

  {
    CoactionTensor lhs, rhs;
    for (int l = 0; l <= L; ++l) {
      AlgebraElement ql = project_loop(ga.table(), x, l);
      for (const auto& [m, h] : rho_g_pow(2 * l + 1)) lhs[m] += Tensor::product(h, ql);
      rhs[PowerProduct::of(g, 2 * l + 1)] += ga.hopf().coproduct(ql);
    }
    compare("rho~(g)", lhs, rhs);
  }
  for (const auto& f : spec.fields) {
    AlgebraElement c = ga.complete(ga.cphi(f.name));
    VarId phi = var_id(f.name);
    CoactionValue rho_phi;
    for (int l = 0; l <= L; ++l) rho_phi[PowerProduct::of(g, 2 * l) * PowerProduct::of(phi)] += project_loop(ga.table(), c, l);
    std::erase_if(rho_phi, [](const auto& kv) { return kv.second.is_zero(); });
    CoactionTensor lhs, rhs;
    for (int l = 0; l <= L; ++l) {
      AlgebraElement ql = project_loop(ga.table(), c, l);
      for (const auto& [m, h] : coaction_mul(ga, rho_g_pow(2 * l), rho_phi)) lhs[m] += Tensor::product(h, ql);
      rhs[PowerProduct::of(g, 2 * l) * PowerProduct::of(phi)] += ga.hopf().coproduct(ql);
    }
    compare("rho~(" + f.name + ")", lhs, rhs);
  }
  return res;
}

CheckResult check_character_diffeo(GreenAlgebra& ga, std::uint64_t seed, int order) {
  CheckResult res;
  res.name = "character-diffeo";
  if (order <= 0) order = 2 * ga.lmax() + ga.spec().valence2_cutoff + 1;
  Character chi1 = seeded_character(ga.table(), seed);
  Character chi2 = seeded_character(ga.table(), seed + 1);
  Character chi12 = convolve(ga.hopf(), chi1, chi2);
  FormalDiffeo f1 = character_to_diffeo(ga, chi1, order);
  FormalDiffeo f2 = character_to_diffeo(ga, chi2, order);
  FormalDiffeo f12 = restrict_complete(ga, character_to_diffeo(ga, chi12, order));
  FormalDiffeo comp = restrict_complete(ga, compose(f2, f1));
  res.record("F(chi1*chi2) = F(chi2) o F(chi1)", f12 == comp, "order " + std::to_string(order));
  FormalDiffeo eps = character_to_diffeo(ga, [](int) { return Rational(0); }, order);
  res.record("F(counit) = id", eps == FormalDiffeo::identity(ga.spec().k(), order));
  return res;
}

CheckResult check_fdb(std::uint64_t seed, int samples, int order) {
  CheckResult res;
  res.name = "fdb";
  std::mt19937_64 rng(seed);
  std::vector<Poly> cop;
  for (int n = 0; n <= order; ++n) cop.push_back(fdb_coproduct(1, 0, {n}));
  int pairing_bad = 0, inverse_bad = 0;
  for (int s = 0; s < samples; ++s) {
    FormalDiffeo f = random_diffeo(rng, 1, order), g = random_diffeo(rng, 1, order);
    FormalDiffeo gf = compose(g, f);
    for (int n = 0; n <= order; ++n) {
      Poly v = fdb_evaluate(fdb_evaluate(cop[n], "a", f), "b", g);
      if (!(v == Poly(gf.a(0, {n})))) ++pairing_bad;
    }
    FormalDiffeo fi = invert(f), id = FormalDiffeo::identity(1, order);
    if (!(compose(f, fi) == id) || !(compose(fi, f) == id)) ++inverse_bad;
  }
  res.record("pairing <Delta a_n, f (x) g> = a_n(g o f), n <= " + std::to_string(order), pairing_bad == 0,
             std::to_string(samples) + " pairs");
  res.record("Lagrange inversion, order " + std::to_string(order), inverse_bad == 0, std::to_string(samples) + " samples");

  // Generating series against direct coefficient extraction, k = 2.
  const int k = 2, d = 4;
  auto symbolic = [&](const std::string& prefix) {
    std::vector<Series<Poly>> f;
    for (int j = 0; j < k; ++j) {
      Series<Poly> s = Series<Poly>::variable(k, d + 1, j);
      for (int a = 0; a <= d; ++a)
        for (int b = 0; a + b <= d; ++b) {
          if (a + b == 0) continue;
          MultiIndex m{a, b}, e{a, b};
          ++e[j];
          s.add(e, Poly::var(fdb_variable(prefix, j, m)));
        }
      f.push_back(std::move(s));
    }
    return f;
  };
  auto F = symbolic("a"), G = symbolic("b");
  int lemma_bad = 0, count = 0;
  for (int i = 0; i < k; ++i) {
    Series<Poly> gf = G[i].substitute(F);
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b) {
        MultiIndex n{a, b}, e{a, b};
        ++e[i];
        ++count;
        if (!(fdb_coproduct(k, i, n) == gf.coefficient(e))) ++lemma_bad;
      }
  }
  res.record("generating series k=2, degree <= 4", lemma_bad == 0, std::to_string(count) + " coordinates");
  return res;
}

CheckResult check_semidirect(std::uint64_t seed, int samples, int order, int k, int edges) {
  CheckResult res;
  res.name = "semidirect";
  std::mt19937_64 rng(seed);
  auto random_element = [&](bool pure_wave) {
    SemidirectElement g;
    for (int e = 0; e < edges; ++e) g.wave.push_back(random_invertible_series(rng, k, order));
    g.diffeo = pure_wave ? FormalDiffeo::identity(k, order) : random_diffeo(rng, k, order);
    return g;
  };
  SemidirectElement e = SemidirectElement::identity(edges, k, order);
  int assoc = 0, inverse = 0, normal = 0, hom = 0, kernel = 0;
  for (int s = 0; s < samples; ++s) {
    auto g1 = random_element(false), g2 = random_element(false), g3 = random_element(false);
    auto n = random_element(true);
    if (!(semidirect_mul(semidirect_mul(g1, g2), g3) == semidirect_mul(g1, semidirect_mul(g2, g3)))) ++assoc;
    if (!(semidirect_mul(g1, semidirect_inverse(g1)) == e) || !(semidirect_mul(semidirect_inverse(g1), g1) == e))
      ++inverse;
    auto conj = semidirect_mul(semidirect_mul(g1, n), semidirect_inverse(g1));
    if (!conj.is_pure_wave()) ++normal;
    if (!(semidirect_mul(g1, g2).diffeo == compose(g2.diffeo, g1.diffeo))) ++hom;
    if (!(conj.diffeo == FormalDiffeo::identity(k, order)) || !n.is_pure_wave()) ++kernel;
  }
  std::string detail = std::to_string(samples) + " samples, D=" + std::to_string(order);
  res.record("associativity", assoc == 0, detail);
  res.record("inverses", inverse == 0, detail);
  res.record("wave subgroup is normal", normal == 0, detail);
  res.record("projection to Diff is an (anti)homomorphism", hom == 0, detail);
  res.record("kernel of the projection is the wave subgroup", kernel == 0, detail);
  return res;
}

}  // namespace renhopf
