#include "renhopf/graph.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <tuple>

namespace renhopf {

namespace {

// Edge record in a code: (pos u, pos w, type, field at u, field at w); type -1 marks an external attachment.
using CodeEdge = std::tuple<int, int, int, int, int>;

struct Code {
  std::vector<int> colors;  // initial node color by position
  std::vector<CodeEdge> edges;
  friend auto operator<=>(const Code&, const Code&) = default;
};

struct Arc {
  int to;
  int label;
};

struct Problem {
  int n_vertices = 0;
  int n_nodes = 0;
  std::vector<int> init;             // initial color per node
  std::vector<std::vector<Arc>> adj; // includes self-loop arcs twice
  std::vector<CodeEdge> raw;         // edges in node ids
};

Problem build(const TheorySpec& spec, const FeynmanGraph& g, bool labeled) {
  Problem p;
  int F = static_cast<int>(spec.fields.size());
  int k = spec.k();
  p.n_vertices = static_cast<int>(g.vertices.size());
  p.n_nodes = p.n_vertices + static_cast<int>(g.externals.size());
  p.adj.resize(p.n_nodes);
  for (int t : g.vertices) p.init.push_back(t);
  for (std::size_t i = 0; i < g.externals.size(); ++i) {
    int f = spec.field_index(g.externals[i].field);
    p.init.push_back(labeled ? k + F * static_cast<int>(i) + f : k + f);
  }
  auto field_of = [&](HalfEdge h) { return spec.field_index(spec.vertices[g.vertices[h.vertex]].legs[h.leg]); };
  auto label = [&](int type, int fu, int fw) { return (type * F + fu) * F + fw; };
  for (auto& e : g.edges) {
    int u = e.a.vertex, w = e.b.vertex, fu = field_of(e.a), fw = field_of(e.b);
    p.adj[u].push_back({w, label(e.type, fu, fw)});
    p.adj[w].push_back({u, label(e.type, fw, fu)});
    p.raw.emplace_back(u, w, e.type, fu, fw);
  }
  int ext_label_base = static_cast<int>(spec.edges.size()) * F * F;
  for (std::size_t i = 0; i < g.externals.size(); ++i) {
    int x = p.n_vertices + static_cast<int>(i);
    int v = g.externals[i].at.vertex;
    int f = spec.field_index(g.externals[i].field);
    p.adj[v].push_back({x, ext_label_base + f});
    p.adj[x].push_back({v, ext_label_base + f});
    p.raw.emplace_back(v, x, -1, f, f);
  }
  return p;
}

// Re-ranks colors by (old color, multiset of neighbour colors and labels) until stable.
std::vector<int> refine(const Problem& p, std::vector<int> colors) {
  auto count_cells = [](const std::vector<int>& c) {
    std::vector<int> s(c);
    std::sort(s.begin(), s.end());
    return std::unique(s.begin(), s.end()) - s.begin();
  };
  auto cells = count_cells(colors);
  while (true) {
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> sig(p.n_nodes);
    for (int u = 0; u < p.n_nodes; ++u) {
      sig[u].first = colors[u];
      for (auto& a : p.adj[u]) sig[u].second.emplace_back(colors[a.to], a.label);
      std::sort(sig[u].second.begin(), sig[u].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(p.n_nodes);
    for (int u = 0; u < p.n_nodes; ++u)
      next[u] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[u]) - sorted.begin());
    auto c = static_cast<long>(sorted.size());
    colors = std::move(next);
    if (c == cells) return colors;
    cells = c;
  }
}

Code leaf_code(const Problem& p, const std::vector<int>& pos) {
  Code c;
  c.colors.resize(p.n_nodes);
  for (int u = 0; u < p.n_nodes; ++u) c.colors[pos[u]] = p.init[u];
  for (auto [u, w, t, fu, fw] : p.raw) {
    int pu = pos[u], pw = pos[w];
    if (pu > pw || (pu == pw && fu > fw)) {
      std::swap(pu, pw);
      std::swap(fu, fw);
    }
    c.edges.emplace_back(pu, pw, t, fu, fw);
  }
  std::sort(c.edges.begin(), c.edges.end());
  return c;
}

struct SearchResult {
  Code best;
  long count = 0;
  bool have = false;
};

void search(const Problem& p, const std::vector<int>& colors, SearchResult& out) {
  int n = p.n_nodes;
  std::vector<int> size(n, 0);
  for (int c : colors) ++size[c];
  int target = -1;
  for (int c = 0; c < n; ++c)
    if (size[c] > 1) {
      target = c;
      break;
    }
  if (target < 0) {
    Code code = leaf_code(p, colors);
    if (!out.have || code < out.best) {
      out.best = std::move(code);
      out.count = 1;
      out.have = true;
    } else if (code == out.best) {
      ++out.count;
    }
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (colors[v] != target) continue;
    std::vector<int> next(n);
    for (int u = 0; u < n; ++u) next[u] = 2 * colors[u] + (u == v ? 0 : 1);
    search(p, refine(p, next), out);
  }
}

SearchResult canonical_search(const TheorySpec& spec, const FeynmanGraph& g, bool labeled) {
  Problem p = build(spec, g, labeled);
  SearchResult r;
  if (p.n_nodes == 0) {
    r.count = 1;
    r.have = true;
    return r;
  }
  search(p, refine(p, p.init), r);
  return r;
}

long factorial(int m) {
  long f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

long bundle_factor(const TheorySpec& spec, const FeynmanGraph& g) {
  std::map<std::tuple<int, int, int, std::string, std::string>, int> bundles;
  for (auto& e : g.edges) {
    const auto& fu = spec.vertices[g.vertices[e.a.vertex]].legs[e.a.leg];
    const auto& fw = spec.vertices[g.vertices[e.b.vertex]].legs[e.b.leg];
    int u = e.a.vertex, w = e.b.vertex;
    std::string su = fu, sw = fw;
    if (u > w || (u == w && su > sw)) {
      std::swap(u, w);
      std::swap(su, sw);
    }
    ++bundles[{u, w, e.type, su, sw}];
  }
  long f = 1;
  for (auto& [key, m] : bundles) {
    f *= factorial(m);
    if (std::get<0>(key) == std::get<1>(key) && std::get<3>(key) == std::get<4>(key)) f <<= m;
  }
  return f;
}

std::string code_to_string(const TheorySpec& spec, const Problem& p, const Code& c, bool bullet) {
  int nv = p.n_vertices;
  // Attachments per vertex: (field, other position, edge index, end); legs are handed out in this order.
  struct Att {
    int field, other, type, idx, end;
    auto key() const { return std::tie(field, other, type, idx, end); }
  };
  std::vector<std::vector<Att>> att(nv);
  for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
    auto [pu, pw, t, fu, fw] = c.edges[i];
    if (t < 0) {
      att[pu].push_back({fu, pw, t, i, 0});
    } else {
      att[pu].push_back({fu, pw, t, i, 0});
      att[pw].push_back({fw, pu, t, i, 1});
    }
  }
  std::vector<std::array<int, 2>> leg_of(c.edges.size(), {-1, -1});
  for (int v = 0; v < nv; ++v) {
    std::sort(att[v].begin(), att[v].end(), [](const Att& a, const Att& b) { return a.key() < b.key(); });
    const auto& legs = spec.vertices[c.colors[v]].legs;
    std::vector<bool> used(legs.size(), false);
    for (auto& a : att[v]) {
      for (std::size_t l = 0; l < legs.size(); ++l)
        if (!used[l] && spec.field_index(legs[l]) == a.field) {
          used[l] = true;
          leg_of[a.idx][a.end] = static_cast<int>(l);
          break;
        }
    }
  }
  FeynmanGraph h;
  h.bullet = bullet;
  for (int v = 0; v < nv; ++v) h.vertices.push_back(c.colors[v]);
  for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
    auto [pu, pw, t, fu, fw] = c.edges[i];
    if (t < 0) continue;
    InternalEdge e;
    e.type = t;
    HalfEdge hu{pu, leg_of[i][0]}, hw{pw, leg_of[i][1]};
    // End a carries the edge type's field.
    if (spec.field_index(spec.edges[t].field) == fu) {
      e.a = hu;
      e.b = hw;
    } else {
      e.a = hw;
      e.b = hu;
    }
    h.edges.push_back(e);
  }
  for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
    auto [pu, pw, t, fu, fw] = c.edges[i];
    if (t >= 0) continue;
    h.externals.push_back({{pu, leg_of[i][0]}, spec.fields[fu].name});
  }
  std::sort(h.externals.begin(), h.externals.end(),
            [](const ExternalLeg& a, const ExternalLeg& b) { return a.at < b.at; });
  return graph_to_string(spec, h);
}

}  // namespace

std::string canonical_form(const TheorySpec& spec, const FeynmanGraph& g) {
  Problem p = build(spec, g, false);
  auto r = canonical_search(spec, g, false);
  return code_to_string(spec, p, r.best, g.bullet);
}

long symmetry_factor(const TheorySpec& spec, const FeynmanGraph& g) {
  return canonical_search(spec, g, true).count * bundle_factor(spec, g);
}

long unlabeled_automorphisms(const TheorySpec& spec, const FeynmanGraph& g) {
  return canonical_search(spec, g, false).count * bundle_factor(spec, g);
}

}  // namespace renhopf
