#include "renhopf/green.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace renhopf {

namespace {

Rational binomial(const Rational& alpha, int k) {
  Rational b = 1;
  for (int i = 0; i < k; ++i) {
    b *= alpha - i;
    b /= i + 1;
  }
  return b;
}

std::string slice_str(Slice s) { return "L=" + std::to_string(s.first) + " w=" + std::to_string(s.second); }

}  // namespace

GreenAlgebra::GreenAlgebra(HopfAlgebra& hopf, int lmax) : hopf_(hopf), lmax_(lmax) {}

Slice GreenAlgebra::slice(const Monomial& m) const {
  const auto& t = hopf_.table();
  int l = 0, w = 0;
  for (int id : m) {
    l += t.info(id).loop;
    w += t.info(id).weight2;
  }
  return {l, w};
}

bool GreenAlgebra::in_range(const Monomial& m) const {
  auto [l, w] = slice(m);
  return l <= lmax_ && w <= spec().valence2_cutoff;
}

AlgebraElement GreenAlgebra::complete(const AlgebraElement& x) const {
  AlgebraElement out;
  for (const auto& [m, c] : x.terms())
    if (in_range(m)) out.add(m, c);
  return out;
}

Tensor GreenAlgebra::complete(const Tensor& x) const {
  Tensor out;
  for (const auto& [k, c] : x.terms()) {
    auto a = slice(k.first), b = slice(k.second);
    if (a.first + b.first <= lmax_ && a.second + b.second <= spec().valence2_cutoff) out.add(k.first, k.second, c);
  }
  return out;
}

AlgebraElement GreenAlgebra::mul(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement out;
  for (const auto& [ma, ca] : a.terms()) {
    auto sa = slice(ma);
    for (const auto& [mb, cb] : b.terms()) {
      auto sb = slice(mb);
      if (sa.first + sb.first > lmax_ || sa.second + sb.second > spec().valence2_cutoff) continue;
      out.add(mono_mul(ma, mb), ca * cb);
    }
  }
  return out;
}

AlgebraElement GreenAlgebra::power(const AlgebraElement& x, const Rational& alpha) const {
  if (x.counit() != 1) throw std::invalid_argument("power of an element without unit constant term");
  AlgebraElement a = x - AlgebraElement::one();
  AlgebraElement out = AlgebraElement::one();
  AlgebraElement ak = AlgebraElement::one();
  for (int k = 1; k <= lmax_; ++k) {
    ak = mul(ak, a);
    if (ak.is_zero()) break;
    out += binomial(alpha, k) * ak;
  }
  return out;
}

const AlgebraElement& GreenAlgebra::green(ResidueRef r) {
  auto it = green_.find(r);
  if (it != green_.end()) return it->second;
  AlgebraElement g = AlgebraElement::one();
  Rational sign = r.is_vertex() ? 1 : -1;
  for (int l = 1; l <= lmax_; ++l)
    for (int id : table().generators(r, l)) g.add({id}, sign * table().info(id).green_weight);
  return green_.emplace(r, complete(g)).first->second;
}

AlgebraElement GreenAlgebra::green_power(ResidueRef r, const Rational& alpha) {
  if (alpha == 1) return green(r);
  auto key = std::make_pair(r, to_string(alpha));
  auto it = green_pow_.find(key);
  if (it != green_pow_.end()) return it->second;
  AlgebraElement p = power(green(r), alpha);
  return green_pow_.emplace(key, std::move(p)).first->second;
}

AlgebraElement GreenAlgebra::green_monomial(const std::map<ResidueRef, Rational>& exps) {
  AlgebraElement out = AlgebraElement::one();
  for (const auto& [r, e] : exps)
    if (e != 0) out = mul(out, green_power(r, e));
  return out;
}

AlgebraElement GreenAlgebra::cphi(const std::string& field, const Rational& alpha) {
  std::map<ResidueRef, Rational> exps;
  for (const auto& f : spec().cphi.at(field)) exps[*spec().residue_by_name(f.green)] += alpha * f.exponent;
  return green_monomial(exps);
}

std::map<ResidueRef, Rational> GreenAlgebra::y_exponents(int v, const Rational& alpha) const {
  std::map<ResidueRef, Rational> exps;
  exps[{ResidueRef::Kind::Vertex, v}] += alpha;
  for (const auto& leg : spec().vertices.at(v).legs)
    for (const auto& f : spec().cphi.at(leg)) exps[*spec().residue_by_name(f.green)] -= alpha * f.exponent;
  std::erase_if(exps, [](const auto& kv) { return kv.second == 0; });
  return exps;
}

AlgebraElement GreenAlgebra::y(int v, const Rational& alpha) { return green_monomial(y_exponents(v, alpha)); }

AlgebraElement GreenAlgebra::y_monomial(const std::vector<int>& n) {
  auto it = ymono_.find(n);
  if (it != ymono_.end()) return it->second;
  std::map<ResidueRef, Rational> exps;
  for (int v = 0; v < static_cast<int>(n.size()); ++v)
    if (n[v] != 0)
      for (const auto& [r, e] : y_exponents(v, n[v])) exps[r] += e;
  std::erase_if(exps, [](const auto& kv) { return kv.second == 0; });
  AlgebraElement y = green_monomial(exps);
  return ymono_.emplace(n, std::move(y)).first->second;
}

std::map<std::vector<int>, AlgebraElement> GreenAlgebra::by_multidegree(const AlgebraElement& x) const {
  std::map<std::vector<int>, AlgebraElement> out;
  for (const auto& [m, c] : x.terms()) out[mono_multidegree(hopf_.table(), m)].add(m, c);
  return out;
}

namespace {

// Per-slice comparison of two tensors; the first mismatch of each failing slice is printed.
CheckResult compare_tensors(GreenAlgebra& ga, const Tensor& lhs, const Tensor& rhs, const std::string& label) {
  CheckResult res;
  res.name = label;
  std::map<Slice, Tensor> diff;
  std::set<Slice> slices;
  auto total = [&](const Tensor::Key& k) {
    auto a = ga.slice(k.first), b = ga.slice(k.second);
    return Slice{a.first + b.first, a.second + b.second};
  };
  for (const auto& [k, c] : lhs.terms()) slices.insert(total(k));
  for (const auto& [k, c] : rhs.terms()) slices.insert(total(k));
  Tensor d = lhs - rhs;
  for (const auto& [k, c] : d.terms()) diff[total(k)].add(k.first, k.second, c);
  for (auto s : slices) {
    auto it = diff.find(s);
    if (it == diff.end()) {
      res.record(slice_str(s), true);
    } else {
      const auto& [k, c] = *it->second.terms().begin();
      Tensor first;
      first.add(k.first, k.second, c);
      res.record(slice_str(s), false,
                 std::to_string(it->second.terms().size()) + " terms differ; first: " + tensor_str(ga.table(), first));
    }
  }
  return res;
}

}  // namespace

CheckResult check_cop_form(GreenAlgebra& ga, const AlgebraElement& x, const std::string& label) {
  Tensor lhs = ga.complete(ga.hopf().coproduct(x));
  Tensor rhs;
  for (const auto& [n, pn] : ga.by_multidegree(x)) rhs += Tensor::product(ga.mul(x, ga.y_monomial(n)), pn);
  return compare_tensors(ga, lhs, ga.complete(rhs), label);
}

CheckResult check_cop_green(GreenAlgebra& ga) {
  CheckResult res;
  res.name = "cop-green";
  for (auto r : ga.spec().all_residues())
    res.merge(check_cop_form(ga, ga.green(r), "G^" + ga.spec().residue_name(r)));
  return res;
}

CheckResult check_cop_y(GreenAlgebra& ga, const std::vector<Rational>& alphas) {
  CheckResult res;
  res.name = "cop-y";
  for (int v = 0; v < ga.spec().k(); ++v)
    for (const auto& a : alphas)
      res.merge(check_cop_form(ga, ga.y(v, a), "Y_" + ga.spec().vertices[v].name + "^" + to_string(a)));
  return res;
}

namespace {

std::optional<Slice> common_slice(const GreenAlgebra& ga, const AlgebraElement& x) {
  std::optional<Slice> s;
  for (const auto& [m, c] : x.terms()) {
    auto t = ga.slice(m);
    if (s && *s != t) return std::nullopt;
    s = t;
  }
  return s;
}

std::string multidegree_str(const std::vector<int>& n) {
  std::string s;
  for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
  return s;
}

void add_projections(GreenAlgebra& ga, const AlgebraElement& x, const std::string& name,
                     std::vector<IdealGenerator>& out) {
  std::vector<int> zero(ga.spec().k(), 0);
  for (const auto& [n, pn] : ga.by_multidegree(ga.complete(x)))
    if (n != zero && !pn.is_zero()) out.push_back({"p_" + multidegree_str(n) + "(" + name + ")", pn, common_slice(ga, pn)});
}

}  // namespace

std::vector<IdealGenerator> st_ideal_generators(GreenAlgebra& ga) {
  const auto& spec = ga.spec();
  std::vector<IdealGenerator> gens;
  std::vector<int> big;
  for (int v = 0; v < spec.k(); ++v)
    if (spec.vertices[v].valence() > 2) big.push_back(v);
  for (std::size_t i = 0; i < big.size(); ++i)
    for (std::size_t j = i + 1; j < big.size(); ++j) {
      int v = big[i], w = big[j];
      int a = spec.vertices[v].valence() - 2, b = spec.vertices[w].valence() - 2;
      AlgebraElement diff = ga.y(w, a) - ga.y(v, b);
      std::string name = "Y_" + spec.vertices[w].name + "^" + std::to_string(a) + " - Y_" + spec.vertices[v].name +
                         "^" + std::to_string(b);
      for (int l = 1; l <= ga.lmax(); ++l) {
        AlgebraElement q = project_loop(ga.table(), diff, l);
        if (!q.is_zero()) gens.push_back({"q_" + std::to_string(l) + "(" + name + ")", q, common_slice(ga, q)});
      }
    }
  if (spec.massless)
    for (int v : spec.valence2_vertices()) add_projections(ga, ga.y(v), "Y_" + spec.vertices[v].name, gens);
  return gens;
}

std::vector<IdealGenerator> hr_generators(GreenAlgebra& ga) {
  const auto& spec = ga.spec();
  std::vector<IdealGenerator> gens;
  for (int v = 0; v < spec.k(); ++v) add_projections(ga, ga.y(v), "Y_" + spec.vertices[v].name, gens);
  for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e)
    add_projections(ga, ga.green({ResidueRef::Kind::Edge, e}), "G^" + spec.edges[e].name, gens);
  return gens;
}

QuotientNF::QuotientNF(GreenAlgebra& ga) : ga_(ga), gens_(st_ideal_generators(ga)) {
  for (const auto& g : gens_)
    if (!g.slice) {
      undecidable_ = "generator " + g.label + " is not homogeneous in the valence-2 weight";
      return;
    }
  auto hr = hr_generators(ga);
  for (const auto& h : hr)
    if (!h.slice) throw std::logic_error("inhomogeneous H_R generator " + h.label);
  int C = ga.spec().valence2_cutoff;

  // H_R monomials of a given slice, as products of generators with nondecreasing index.
  std::function<void(std::size_t, Slice, const AlgebraElement&, std::vector<AlgebraElement>&)> products =
      [&](std::size_t from, Slice need, const AlgebraElement& acc, std::vector<AlgebraElement>& out) {
        if (need == Slice{0, 0}) {
          out.push_back(acc);
          return;
        }
        for (std::size_t i = from; i < hr.size(); ++i) {
          auto s = *hr[i].slice;
          if (s.first > need.first || s.second > need.second) continue;
          products(i, {need.first - s.first, need.second - s.second}, acc * hr[i].element, out);
        }
      };

  for (int L = 1; L <= ga.lmax(); ++L)
    for (int w = 0; w <= C; ++w) {
      RowSpace& span = spans_[{L, w}];
      for (const auto& g : gens_) {
        auto s = *g.slice;
        if (s.first > L || s.second > w) continue;
        std::vector<AlgebraElement> us;
        products(0, {L - s.first, w - s.second}, AlgebraElement::one(), us);
        for (const auto& u : us) span.insert(u * g.element);
      }
    }
}

std::size_t QuotientNF::dimension(Slice s) const {
  auto it = spans_.find(s);
  return it == spans_.end() ? 0 : it->second.dimension();
}

AlgebraElement QuotientNF::normal_form(const AlgebraElement& x) const {
  std::map<Slice, AlgebraElement> parts;
  for (const auto& [m, c] : x.terms()) parts[ga_.slice(m)].add(m, c);
  AlgebraElement out;
  for (const auto& [s, p] : parts) {
    if (s.first == 0) {
      out += p;
      continue;
    }
    auto it = spans_.find(s);
    if (it == spans_.end()) throw std::out_of_range("normal form requested outside the truncation: " + slice_str(s));
    out += it->second.normal_form(p);
  }
  return out;
}

Tensor QuotientNF::normal_form(const Tensor& t) const {
  std::map<Monomial, AlgebraElement> by_right;
  for (const auto& [k, c] : t.terms()) by_right[k.second].add(k.first, c);
  std::map<Monomial, AlgebraElement> by_left;
  for (const auto& [r, left] : by_right) {
    AlgebraElement nf = normal_form(left);
    for (const auto& [m, c] : nf.terms()) by_left[m].add(r, c);
  }
  Tensor out;
  for (const auto& [l, right] : by_left) {
    AlgebraElement nf = normal_form(right);
    for (const auto& [m, c] : nf.terms()) out.add(l, m, c);
  }
  return out;
}

CheckResult check_hopf_ideal(GreenAlgebra& ga) {
  CheckResult res;
  res.name = "hopf-ideal";
  QuotientNF q(ga);
  if (!q.decidable()) {
    res.undecidable("J'", q.undecidable_reason());
    return res;
  }
  res.lines.push_back("generators: " + std::to_string(q.generator_count()));
  for (const auto& g : q.generators()) {
    Tensor d = q.normal_form(ga.complete(ga.hopf().coproduct(g.element)));
    res.record(g.label + " [" + slice_str(*g.slice) + "]", d.is_zero(),
               d.is_zero() ? "" : "residual " + tensor_str(ga.table(), d));
  }
  return res;
}

int first_cubic_vertex(const TheorySpec& spec) {
  for (int v = 0; v < spec.k(); ++v)
    if (spec.vertices[v].valence() > 2) return v;
  throw std::invalid_argument("theory has no vertex of valence > 2");
}

CheckResult check_quotient_x(GreenAlgebra& ga) {
  CheckResult res;
  res.name = "quotient-x";
  QuotientNF q(ga);
  if (!q.decidable()) {
    res.undecidable("J'", q.undecidable_reason());
    return res;
  }
  int v0 = first_cubic_vertex(ga.spec());
  Rational n = ga.spec().vertices[v0].valence() - 2;
  AlgebraElement x = ga.y(v0, 1 / n);
  Tensor lhs = ga.complete(ga.hopf().coproduct(x));
  Tensor rhs;
  for (int l = 0; l <= ga.lmax(); ++l) rhs += Tensor::product(ga.y(v0, (2 * l + 1) / n), project_loop(ga.table(), x, l));
  Tensor d = q.normal_form(lhs - ga.complete(rhs));
  std::map<int, Tensor> by_loop;
  for (const auto& [k, c] : d.terms())
    by_loop[mono_loop(ga.table(), k.first) + mono_loop(ga.table(), k.second)].add(k.first, k.second, c);
  for (int l = 0; l <= ga.lmax(); ++l) {
    auto it = by_loop.find(l);
    bool ok = it == by_loop.end();
    res.record("X = Y_" + ga.spec().vertices[v0].name + "^1/" + to_string(n) + " L=" + std::to_string(l), ok,
               ok ? "" : "residual " + tensor_str(ga.table(), it->second));
  }
  return res;
}

}  // namespace renhopf
