#include "renhopf/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace renhopf {

namespace {

// Legs of the component's vertices not covered by its own edges, sorted.
std::vector<HalfEdge> open_legs(const TheorySpec& spec, const FeynmanGraph& g, const std::vector<int>& verts,
                                const std::vector<int>& edges) {
  std::vector<HalfEdge> covered;
  for (int i : edges) {
    covered.push_back(g.edges[i].a);
    covered.push_back(g.edges[i].b);
  }
  std::sort(covered.begin(), covered.end());
  std::vector<HalfEdge> open;
  for (int v : verts)
    for (int l = 0; l < spec.vertices[g.vertices[v]].valence(); ++l) {
      HalfEdge h{v, l};
      if (!std::binary_search(covered.begin(), covered.end(), h)) open.push_back(h);
    }
  return open;
}

FeynmanGraph extract(const TheorySpec& spec, const FeynmanGraph& g, const std::vector<int>& verts,
                     const std::vector<int>& edges) {
  std::map<int, int> id;
  FeynmanGraph h;
  for (int v : verts) {
    id[v] = static_cast<int>(h.vertices.size());
    h.vertices.push_back(g.vertices[v]);
  }
  for (int i : edges) {
    auto e = g.edges[i];
    e.a.vertex = id[e.a.vertex];
    e.b.vertex = id[e.b.vertex];
    h.edges.push_back(e);
  }
  for (auto leg : open_legs(spec, g, verts, edges))
    h.externals.push_back({{id[leg.vertex], leg.leg}, spec.vertices[g.vertices[leg.vertex]].legs[leg.leg]});
  return h;
}

// Residue options for a 1PI component: (residue, bullet).
std::vector<std::pair<ResidueRef, bool>> residue_options(const TheorySpec& spec, const FeynmanGraph& h) {
  std::vector<std::pair<ResidueRef, bool>> out;
  auto legs = external_fields(h);
  if (legs.size() == 2) {
    int e = spec.edge_with_legs(legs);
    if (e >= 0) out.push_back({{ResidueRef::Kind::Edge, e}, false});
    int v = spec.valence2_vertex(legs);
    if (v >= 0) out.push_back({{ResidueRef::Kind::Vertex, v}, true});
  } else if (auto r = residue(spec, h)) {
    out.push_back({*r, false});
  }
  return out;
}

}  // namespace

std::vector<SubgraphChoice> subgraphs(const TheorySpec& spec, const FeynmanGraph& g) {
  std::vector<SubgraphChoice> out;
  int E = static_cast<int>(g.edges.size());
  int n = static_cast<int>(g.vertices.size());
  if (E >= 31) throw std::invalid_argument("graph too large for subgraph enumeration");
  for (unsigned mask = 1; mask + 1 < (1u << E); ++mask) {
    // Components of the edge subset.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<bool> in_sub(n, false);
    for (int i = 0; i < E; ++i)
      if (mask >> i & 1) {
        in_sub[g.edges[i].a.vertex] = in_sub[g.edges[i].b.vertex] = true;
        parent[find(g.edges[i].a.vertex)] = find(g.edges[i].b.vertex);
      }
    std::map<int, std::pair<std::vector<int>, std::vector<int>>> comps;  // root -> (vertices, edges)
    for (int v = 0; v < n; ++v)
      if (in_sub[v]) comps[find(v)].first.push_back(v);
    for (int i = 0; i < E; ++i)
      if (mask >> i & 1) comps[find(g.edges[i].a.vertex)].second.push_back(i);

    std::vector<std::vector<SubgraphComponent>> options;
    bool ok = true;
    for (auto& [root, ve] : comps) {
      FeynmanGraph h = extract(spec, g, ve.first, ve.second);
      if (!is_one_pi(h)) {
        ok = false;
        break;
      }
      std::vector<SubgraphComponent> opts;
      for (auto [res, bullet] : residue_options(spec, h)) {
        SubgraphComponent c{ve.second, ve.first, res, bullet, h};
        c.graph.bullet = bullet;
        opts.push_back(std::move(c));
      }
      if (opts.empty()) {
        ok = false;
        break;
      }
      options.push_back(std::move(opts));
    }
    if (!ok) continue;

    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      SubgraphChoice choice;
      for (std::size_t i = 0; i < options.size(); ++i) choice.components.push_back(options[i][pick[i]]);
      out.push_back(std::move(choice));
      std::size_t i = 0;
      while (i < options.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == options.size()) break;
    }
  }
  return out;
}

FeynmanGraph contract(const TheorySpec& spec, const FeynmanGraph& g, const SubgraphChoice& choice) {
  int n = static_cast<int>(g.vertices.size());
  std::vector<int> comp_of(n, -1);
  std::vector<bool> in_sub_edge(g.edges.size(), false);
  for (std::size_t c = 0; c < choice.components.size(); ++c) {
    for (int v : choice.components[c].vertices) comp_of[v] = static_cast<int>(c);
    for (int i : choice.components[c].edges) in_sub_edge[i] = true;
  }

  FeynmanGraph q;
  q.bullet = g.bullet;
  std::vector<int> new_id(n, -1);
  for (int v = 0; v < n; ++v)
    if (comp_of[v] < 0) {
      new_id[v] = static_cast<int>(q.vertices.size());
      q.vertices.push_back(g.vertices[v]);
    }

  // Where each open half-edge of the parent lands: a vertex leg of the quotient, or a pass-through port.
  struct Port {
    bool pass = false;
    HalfEdge at;   // quotient vertex leg when !pass
    HalfEdge other;  // the opposite open leg of a pass-through component
  };
  std::map<HalfEdge, Port> port;
  for (int v = 0; v < n; ++v)
    if (comp_of[v] < 0)
      for (int l = 0; l < spec.vertices[g.vertices[v]].valence(); ++l) port[{v, l}] = {false, {new_id[v], l}, {}};
  for (const auto& c : choice.components) {
    auto open = open_legs(spec, g, c.vertices, c.edges);
    if (c.residue.is_vertex()) {
      int id = static_cast<int>(q.vertices.size());
      q.vertices.push_back(c.residue.index);
      const auto& legs = spec.vertices[c.residue.index].legs;
      std::vector<bool> used(legs.size(), false);
      for (auto h : open) {
        const auto& f = spec.vertices[g.vertices[h.vertex]].legs[h.leg];
        int l = 0;
        while (l < static_cast<int>(legs.size()) && (used[l] || legs[l] != f)) ++l;
        if (l == static_cast<int>(legs.size())) throw std::logic_error("contraction leg mismatch");
        used[l] = true;
        port[h] = {false, {id, l}, {}};
      }
    } else {
      if (open.size() != 2) throw std::logic_error("edge residue component without two legs");
      port[open[0]] = {true, {}, open[1]};
      port[open[1]] = {true, {}, open[0]};
    }
  }

  // Segments: surviving edges and external legs. Each open half-edge is the end of exactly one segment.
  struct Segment {
    HalfEdge a, b;
    int external = -1;  // index into g.externals when one end is outside
  };
  std::vector<Segment> segs;
  std::map<HalfEdge, int> seg_at;
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (!in_sub_edge[i]) {
      seg_at[g.edges[i].a] = seg_at[g.edges[i].b] = static_cast<int>(segs.size());
      segs.push_back({g.edges[i].a, g.edges[i].b, -1});
    }
  for (std::size_t x = 0; x < g.externals.size(); ++x) {
    seg_at[g.externals[x].at] = static_cast<int>(segs.size());
    segs.push_back({g.externals[x].at, {}, static_cast<int>(x)});
  }

  auto field_at = [&](HalfEdge h) { return spec.vertices[q.vertices[h.vertex]].legs[h.leg]; };
  std::vector<bool> done(segs.size(), false);
  // Walks from a segment end through pass-through components; returns the terminal (vertex leg or external).
  auto walk = [&](int s, HalfEdge from, std::optional<HalfEdge>& leg, int& external) {
    while (true) {
      done[s] = true;
      const auto& sg = segs[s];
      if (sg.external >= 0) {
        external = sg.external;
        return;
      }
      HalfEdge far = sg.a == from ? sg.b : sg.a;
      const Port& p = port.at(far);
      if (!p.pass) {
        leg = p.at;
        return;
      }
      from = p.other;
      s = seg_at.at(from);
    }
  };

  std::vector<ExternalLeg> externals;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (done[s]) continue;
    // Start from an end that is a quotient vertex leg.
    std::vector<HalfEdge> ends{segs[s].a};
    if (segs[s].external < 0) ends.push_back(segs[s].b);
    HalfEdge start{};
    bool found = false;
    for (auto h : ends)
      if (!port.at(h).pass) {
        start = h;
        found = true;
        break;
      }
    if (!found) continue;  // interior of a chain; reached from its terminal end
    HalfEdge start_leg = port.at(start).at;
    std::optional<HalfEdge> leg;
    int external = -1;
    if (segs[s].external >= 0) {
      done[s] = true;
      external = segs[s].external;
    } else {
      walk(static_cast<int>(s), start, leg, external);
    }
    if (leg) {
      int type = spec.edge_between(field_at(start_leg), field_at(*leg));
      if (type < 0) throw std::logic_error("contraction produced an untyped edge");
      InternalEdge e{type, start_leg, *leg};
      if (field_at(start_leg) != spec.edges[type].field) std::swap(e.a, e.b);
      q.edges.push_back(e);
    } else {
      externals.push_back({start_leg, field_at(start_leg)});
    }
  }
  // Externals reached only through pass-throughs from the outside.
  for (std::size_t s = 0; s < segs.size(); ++s)
    if (!done[s]) throw std::logic_error("contraction left a closed chain of propagators");
  std::sort(externals.begin(), externals.end(), [](auto& a, auto& b) { return a.at < b.at; });
  q.externals = std::move(externals);
  return q;
}

}  // namespace renhopf
