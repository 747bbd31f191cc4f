#include "renhopf/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace renhopf {

namespace {

// Vertex-type multisets compatible with the residue, loop number and valence-2 bound.
std::vector<std::vector<int>> vertex_multisets(const TheorySpec& spec, ResidueRef r, int loops) {
  std::vector<std::vector<int>> out;
  auto ext = spec.residue_legs(r);
  int target = 2 * loops + static_cast<int>(ext.size()) - 2;
  if (loops < 1 || target < 0) return out;
  int res_val2 = r.is_vertex() && spec.vertices[r.index].valence() == 2 ? 1 : 0;
  int val2_budget = spec.valence2_cutoff - loops + res_val2;
  if (val2_budget < 0) return out;

  std::vector<int> m(spec.k(), 0);
  std::function<void(int, int, int)> rec = [&](int t, int left, int budget) {
    if (t == spec.k()) {
      if (left == 0) out.push_back(m);
      return;
    }
    int n = spec.vertices[t].valence();
    int cap = n == 2 ? budget : left / (n - 2);
    for (int c = 0; c <= cap; ++c) {
      m[t] = c;
      rec(t + 1, n == 2 ? left : left - c * (n - 2), n == 2 ? budget - c : budget);
    }
    m[t] = 0;
  };
  rec(0, target, val2_budget);

  // Field balance: every internal leg must be able to pair up.
  std::vector<std::vector<int>> kept;
  for (auto& mult : out) {
    std::map<std::string, int> internal;
    for (int t = 0; t < spec.k(); ++t)
      for (auto& f : spec.vertices[t].legs) internal[f] += mult[t];
    for (auto& f : ext) internal[f] -= 1;
    bool ok = true;
    for (auto& [f, c] : internal) {
      if (c < 0) ok = false;
      if (c == 0) continue;
      const auto& fs = spec.field(f);
      if (fs.is_source || !fs.propagates) ok = false;
    }
    for (auto& e : spec.edges) {
      int a = internal[e.field], b = internal[e.conjugate_field];
      if (e.oriented ? a != b : a % 2 != 0) ok = false;
    }
    for (auto& [f, c] : internal)
      if (c > 0) {
        bool covered = false;
        for (auto& e : spec.edges) covered |= e.field == f || e.conjugate_field == f;
        if (!covered) ok = false;
      }
    if (ok) kept.push_back(mult);
  }
  return kept;
}

std::vector<int> expand(const std::vector<int>& mult) {
  std::vector<int> v;
  for (int t = 0; t < static_cast<int>(mult.size()); ++t)
    for (int c = 0; c < mult[t]; ++c) v.push_back(t);
  return v;
}

struct Collector {
  const TheorySpec& spec;
  bool bullet;
  std::map<std::string, FeynmanGraph> found;

  void offer(FeynmanGraph g) {
    g.bullet = bullet;
    if (!is_one_pi(g)) return;
    if (valence2_weight(spec, g) > spec.valence2_cutoff) return;
    auto key = canonical_form(spec, g);
    if (found.count(key)) return;
    found.emplace(key, parse_graph(spec, key));
  }

  std::vector<FeynmanGraph> result() const {
    std::vector<FeynmanGraph> out;
    for (auto& [k, g] : found) out.push_back(g);
    return out;
  }
};

class Builder {
 public:
  Builder(const TheorySpec& spec, std::vector<int> types, std::vector<std::string> ext, Collector& sink)
      : spec_(spec), sink_(sink), ext_(std::move(ext)) {
    g_.vertices = std::move(types);
    filled_.resize(g_.vertices.size());
    for (std::size_t v = 0; v < g_.vertices.size(); ++v)
      filled_[v].assign(spec.vertices[g_.vertices[v]].legs.size(), false);
    ext_used_.assign(ext_.size(), false);
    touched_.assign(g_.vertices.size(), false);
  }

  void run() {
    if (ext_.empty()) return;
    const std::string& f = ext_[0];
    for (int v : first_untouched_per_type()) {
      int leg = first_free_leg(v, f);
      if (leg < 0) continue;
      ext_used_[0] = true;
      touch(v);
      attach_external(v, leg, 0);
      step();
      g_.externals.pop_back();
      filled_[v][leg] = false;
      untouch(v);
      ext_used_[0] = false;
    }
  }

 private:
  const std::string& leg_field(int v, int leg) const { return spec_.vertices[g_.vertices[v]].legs[leg]; }

  int first_free_leg(int v, const std::string& f, int skip = -1) const {
    const auto& legs = spec_.vertices[g_.vertices[v]].legs;
    for (int l = 0; l < static_cast<int>(legs.size()); ++l)
      if (l != skip && !filled_[v][l] && legs[l] == f) return l;
    return -1;
  }

  std::vector<int> first_untouched_per_type() const {
    std::vector<int> out;
    std::set<int> seen;
    for (int v = 0; v < static_cast<int>(g_.vertices.size()); ++v)
      if (!touched_[v] && seen.insert(g_.vertices[v]).second) out.push_back(v);
    return out;
  }

  void touch(int v) {
    touched_[v] = true;
    order_.push_back(v);
  }
  void untouch(int v) {
    touched_[v] = false;
    order_.pop_back();
  }

  void attach_external(int v, int leg, int x) {
    filled_[v][leg] = true;
    g_.externals.push_back({{v, leg}, ext_[x]});
  }

  void add_edge(int type, HalfEdge p, HalfEdge q) {
    filled_[p.vertex][p.leg] = filled_[q.vertex][q.leg] = true;
    const auto& et = spec_.edges[type];
    InternalEdge e{type, p, q};
    if (leg_field(p.vertex, p.leg) != et.field) std::swap(e.a, e.b);
    g_.edges.push_back(e);
  }
  void pop_edge() {
    auto e = g_.edges.back();
    g_.edges.pop_back();
    filled_[e.a.vertex][e.a.leg] = filled_[e.b.vertex][e.b.leg] = false;
  }

  void step() {
    int v = -1, leg = -1;
    for (int u : order_) {
      for (int l = 0; l < static_cast<int>(filled_[u].size()); ++l)
        if (!filled_[u][l]) {
          v = u;
          leg = l;
          break;
        }
      if (v >= 0) break;
    }
    if (v < 0) {
      if (order_.size() == g_.vertices.size() &&
          std::all_of(ext_used_.begin(), ext_used_.end(), [](bool b) { return b; }))
        sink_.offer(g_);
      return;
    }
    const std::string& f = leg_field(v, leg);

    for (std::size_t x = 0; x < ext_.size(); ++x)
      if (!ext_used_[x] && ext_[x] == f) {
        ext_used_[x] = true;
        attach_external(v, leg, static_cast<int>(x));
        step();
        g_.externals.pop_back();
        filled_[v][leg] = false;
        ext_used_[x] = false;
        break;
      }

    const auto& fs = spec_.field(f);
    if (fs.is_source || !fs.propagates) return;

    std::vector<std::string> partners;
    for (auto& e : spec_.edges) {
      if (e.field == f) partners.push_back(e.conjugate_field);
      else if (e.conjugate_field == f) partners.push_back(e.field);
    }
    std::sort(partners.begin(), partners.end());
    partners.erase(std::unique(partners.begin(), partners.end()), partners.end());

    for (const auto& pf : partners) {
      int type = spec_.edge_between(f, pf);
      for (int u : std::vector<int>(order_)) {
        if (u == v && !spec_.allow_tadpoles) continue;
        int l = first_free_leg(u, pf, u == v ? leg : -1);
        if (l < 0) continue;
        add_edge(type, {v, leg}, {u, l});
        step();
        pop_edge();
      }
      for (int u : first_untouched_per_type()) {
        int l = first_free_leg(u, pf);
        if (l < 0) continue;
        touch(u);
        add_edge(type, {v, leg}, {u, l});
        step();
        pop_edge();
        untouch(u);
      }
    }
  }

  const TheorySpec& spec_;
  Collector& sink_;
  std::vector<std::string> ext_;
  FeynmanGraph g_;
  std::vector<std::vector<bool>> filled_;
  std::vector<bool> ext_used_;
  std::vector<bool> touched_;
  std::vector<int> order_;
};

bool bullet_for(const TheorySpec& spec, ResidueRef r) {
  return r.is_vertex() && spec.vertices[r.index].valence() == 2;
}

}  // namespace

std::vector<FeynmanGraph> enumerate_graphs(const TheorySpec& spec, ResidueRef r, int loops) {
  Collector sink{spec, bullet_for(spec, r), {}};
  for (auto& mult : vertex_multisets(spec, r, loops)) {
    Builder b(spec, expand(mult), spec.residue_legs(r), sink);
    b.run();
  }
  return sink.result();
}

std::vector<FeynmanGraph> enumerate_graphs_naive(const TheorySpec& spec, ResidueRef r, int loops) {
  Collector sink{spec, bullet_for(spec, r), {}};
  auto ext = spec.residue_legs(r);
  for (auto& mult : vertex_multisets(spec, r, loops)) {
    FeynmanGraph g;
    g.vertices = expand(mult);
    std::vector<HalfEdge> halves;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v)
      for (int l = 0; l < spec.vertices[g.vertices[v]].valence(); ++l) halves.push_back({v, l});
    auto field = [&](HalfEdge h) { return spec.vertices[g.vertices[h.vertex]].legs[h.leg]; };
    std::vector<bool> used(halves.size(), false);

    std::function<void()> match = [&]() {
      std::size_t i = 0;
      while (i < halves.size() && used[i]) ++i;
      if (i == halves.size()) {
        if (is_connected(g)) sink.offer(g);
        return;
      }
      used[i] = true;
      for (std::size_t j = i + 1; j < halves.size(); ++j) {
        if (used[j]) continue;
        if (!spec.allow_tadpoles && halves[i].vertex == halves[j].vertex) continue;
        auto fi = field(halves[i]), fj = field(halves[j]);
        int type = spec.edge_between(fi, fj);
        if (type < 0) continue;
        if (spec.field(fi).is_source || !spec.field(fi).propagates) continue;
        InternalEdge e{type, halves[i], halves[j]};
        if (fi != spec.edges[type].field) std::swap(e.a, e.b);
        used[j] = true;
        g.edges.push_back(e);
        match();
        g.edges.pop_back();
        used[j] = false;
      }
      used[i] = false;
    };

    std::function<void(std::size_t)> place = [&](std::size_t x) {
      if (x == ext.size()) {
        match();
        return;
      }
      for (std::size_t i = 0; i < halves.size(); ++i) {
        if (used[i] || field(halves[i]) != ext[x]) continue;
        used[i] = true;
        g.externals.push_back({halves[i], ext[x]});
        place(x + 1);
        g.externals.pop_back();
        used[i] = false;
      }
    };
    place(0);
  }
  return sink.result();
}

}  // namespace renhopf
