#include "renhopf/hopf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace renhopf {

GraphTable::GraphTable(TheorySpec spec) : spec_(std::move(spec)) {}

int GraphTable::intern(const FeynmanGraph& g) {
  std::string key = canonical_form(spec_, g);
  {
    std::lock_guard lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
  }
  Info info;
  info.graph = parse_graph(spec_, key);
  info.key = key;
  info.loop = loop_number(info.graph);
  info.residue = residue_or_throw(spec_, info.graph);
  info.multidegree = multidegree(spec_, info.graph);
  info.weight2 = valence2_weight(spec_, info.graph);
  info.sym = symmetry_factor(spec_, info.graph);
  info.green_weight = green_weight(spec_, info.graph);
  std::lock_guard lock(mu_);
  auto [it, inserted] = index_.emplace(key, static_cast<int>(infos_.size()));
  if (inserted) infos_.push_back(std::move(info));
  return it->second;
}

int GraphTable::find(const std::string& canonical) const {
  std::lock_guard lock(mu_);
  auto it = index_.find(canonical);
  return it == index_.end() ? -1 : it->second;
}

const GraphTable::Info& GraphTable::info(int id) const {
  std::lock_guard lock(mu_);
  return infos_.at(id);
}

int GraphTable::size() const {
  std::lock_guard lock(mu_);
  return static_cast<int>(infos_.size());
}

const std::vector<int>& GraphTable::generators(ResidueRef r, int loops) {
  {
    std::lock_guard lock(mu_);
    auto it = gens_.find({r, loops});
    if (it != gens_.end()) return it->second;
  }
  std::vector<int> ids;
  for (auto& g : enumerate_graphs(spec_, r, loops)) ids.push_back(intern(g));
  std::lock_guard lock(mu_);
  return gens_.emplace(std::make_pair(r, loops), std::move(ids)).first->second;
}

std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

AlgebraElement::AlgebraElement(const Rational& c) {
  if (c != 0) terms_[{}] = c;
}

AlgebraElement AlgebraElement::generator(int id) { return monomial({id}); }

AlgebraElement AlgebraElement::monomial(Monomial m, const Rational& c) {
  AlgebraElement x;
  std::sort(m.begin(), m.end());
  x.add(m, c);
  return x;
}

Rational AlgebraElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AlgebraElement::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add(mono_mul(ma, mb), ca * cb);
  return out;
}

void Tensor::add(const Monomial& l, const Monomial& r, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(Key{l, r}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Tensor& Tensor::operator+=(const Tensor& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
  return *this;
}

Tensor operator*(const Tensor& a, const Tensor& b) {
  Tensor out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      out.add(mono_mul(ka.first, kb.first), mono_mul(ka.second, kb.second), ca * cb);
  return out;
}

Tensor Tensor::product(const AlgebraElement& l, const AlgebraElement& r) {
  Tensor out;
  for (const auto& [ml, cl] : l.terms())
    for (const auto& [mr, cr] : r.terms()) out.add(ml, mr, cl * cr);
  return out;
}

int mono_loop(const GraphTable& t, const Monomial& m) {
  int l = 0;
  for (int id : m) l += t.info(id).loop;
  return l;
}

std::vector<int> mono_multidegree(const GraphTable& t, const Monomial& m) {
  std::vector<int> d(t.spec().k(), 0);
  for (int id : m) {
    const auto& md = t.info(id).multidegree;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += md[i];
  }
  return d;
}

Tensor HopfAlgebra::reduced_coproduct(int id) {
  const TheorySpec& spec = table_.spec();
  FeynmanGraph g = table_.info(id).graph;
  Tensor out;
  for (const auto& choice : subgraphs(spec, g)) {
    FeynmanGraph q = contract(spec, g, choice);
    if (!spec.allow_tadpoles && has_self_loop(q)) continue;
    Monomial left;
    for (const auto& c : choice.components) left.push_back(table_.intern(c.graph));
    std::sort(left.begin(), left.end());
    out.add(left, {table_.intern(q)}, 1);
  }
  return out;
}

const Tensor& HopfAlgebra::coproduct(int id) {
  auto it = cop_.find(id);
  if (it != cop_.end()) return it->second;
  Tensor t = reduced_coproduct(id);
  t.add({id}, {}, 1);
  t.add({}, {id}, 1);
  return cop_.emplace(id, std::move(t)).first->second;
}

Tensor HopfAlgebra::coproduct(const Monomial& m) {
  Tensor t;
  t.add({}, {}, 1);
  for (int id : m) t = t * coproduct(id);
  return t;
}

Tensor HopfAlgebra::coproduct(const AlgebraElement& x) {
  Tensor out;
  for (const auto& [m, c] : x.terms()) {
    Tensor t = coproduct(m);
    for (const auto& [k, v] : t.terms()) out.add(k.first, k.second, c * v);
  }
  return out;
}

const AlgebraElement& HopfAlgebra::antipode(int id) {
  auto it = anti_.find(id);
  if (it != anti_.end()) return it->second;
  // S(G) = -G - sum' S(g) G/g
  AlgebraElement s = -AlgebraElement::generator(id);
  Tensor red = reduced_coproduct(id);
  for (const auto& [k, c] : red.terms()) s -= c * (antipode(k.first) * AlgebraElement::monomial(k.second));
  return anti_.emplace(id, std::move(s)).first->second;
}

AlgebraElement HopfAlgebra::antipode(const Monomial& m) {
  AlgebraElement s = AlgebraElement::one();
  for (int id : m) s = s * antipode(id);
  return s;
}

AlgebraElement HopfAlgebra::antipode(const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& [m, c] : x.terms()) out += c * antipode(m);
  return out;
}

Tensor3 HopfAlgebra::coproduct_left(const Tensor& t) {
  Tensor3 out;
  for (const auto& [k, c] : t.terms()) {
    Tensor d = coproduct(k.first);
    for (const auto& [kk, cc] : d.terms()) {
      auto& v = out[{kk.first, kk.second, k.second}];
      v += c * cc;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Tensor3 HopfAlgebra::coproduct_right(const Tensor& t) {
  Tensor3 out;
  for (const auto& [k, c] : t.terms()) {
    Tensor d = coproduct(k.second);
    for (const auto& [kk, cc] : d.terms()) {
      auto& v = out[{k.first, kk.first, kk.second}];
      v += c * cc;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

AlgebraElement project_loop(const GraphTable& t, const AlgebraElement& x, int l) {
  AlgebraElement out;
  for (const auto& [m, c] : x.terms())
    if (mono_loop(t, m) == l) out.add(m, c);
  return out;
}

AlgebraElement project_multidegree(const GraphTable& t, const AlgebraElement& x, const std::vector<int>& n) {
  AlgebraElement out;
  for (const auto& [m, c] : x.terms())
    if (mono_multidegree(t, m) == n) out.add(m, c);
  return out;
}

AlgebraElement truncate_loop(const GraphTable& t, const AlgebraElement& x, int lmax) {
  AlgebraElement out;
  for (const auto& [m, c] : x.terms())
    if (mono_loop(t, m) <= lmax) out.add(m, c);
  return out;
}

Tensor truncate_loop(const GraphTable& t, const Tensor& x, int lmax) {
  Tensor out;
  for (const auto& [k, c] : x.terms())
    if (mono_loop(t, k.first) + mono_loop(t, k.second) <= lmax) out.add(k.first, k.second, c);
  return out;
}

std::string mono_str(const GraphTable& t, const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? " * " : "") + ("{" + t.info(m[i]).key + "}");
  return s;
}

std::string element_str(const GraphTable& t, const AlgebraElement& x) {
  if (x.is_zero()) return "0";
  std::vector<std::pair<std::string, std::string>> parts;
  for (const auto& [m, c] : x.terms()) parts.emplace_back(mono_str(t, m), to_string(c));
  std::sort(parts.begin(), parts.end());
  std::string s;
  for (auto& [m, c] : parts) s += (s.empty() ? "" : " + ") + c + " " + m;
  return s;
}

std::string tensor_str(const GraphTable& t, const Tensor& x) {
  if (x.is_zero()) return "0";
  std::vector<std::pair<std::string, std::string>> parts;
  for (const auto& [k, c] : x.terms())
    parts.emplace_back(mono_str(t, k.first) + " (x) " + mono_str(t, k.second), to_string(c));
  std::sort(parts.begin(), parts.end());
  std::string s;
  for (auto& [m, c] : parts) s += (s.empty() ? "" : " + ") + c + " " + m;
  return s;
}

}  // namespace renhopf
