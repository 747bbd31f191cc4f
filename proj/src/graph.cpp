#include "renhopf/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace renhopf {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool connected_without(const FeynmanGraph& g, int skip_edge) {
  int n = static_cast<int>(g.vertices.size());
  if (n == 0) return false;
  DisjointSets ds(n);
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
    if (i != skip_edge) ds.unite(g.edges[i].a.vertex, g.edges[i].b.vertex);
  int root = ds.find(0);
  for (int v = 1; v < n; ++v)
    if (ds.find(v) != root) return false;
  return true;
}

const std::string& leg_field(const TheorySpec& spec, const FeynmanGraph& g, HalfEdge h) {
  return spec.vertices.at(g.vertices.at(h.vertex)).legs.at(h.leg);
}

}  // namespace

int loop_number(const FeynmanGraph& g) {
  return static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) + 1;
}

bool is_connected(const FeynmanGraph& g) { return connected_without(g, -1); }

bool is_one_pi(const FeynmanGraph& g) {
  if (!is_connected(g) || loop_number(g) < 1) return false;
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
    if (!g.edges[i].is_self_loop() && !connected_without(g, i)) return false;
  return true;
}

bool has_self_loop(const FeynmanGraph& g) {
  return std::any_of(g.edges.begin(), g.edges.end(), [](auto& e) { return e.is_self_loop(); });
}

void validate_graph(const TheorySpec& spec, const FeynmanGraph& g) {
  auto bad = [](const std::string& m) { throw std::invalid_argument("invalid graph: " + m); };
  std::vector<std::vector<int>> filled(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (g.vertices[v] < 0 || g.vertices[v] >= spec.k()) bad("unknown vertex type");
    filled[v].assign(spec.vertices[g.vertices[v]].legs.size(), 0);
  }
  auto fill = [&](HalfEdge h) {
    if (h.vertex < 0 || h.vertex >= static_cast<int>(g.vertices.size())) bad("half-edge on missing vertex");
    auto& legs = filled[h.vertex];
    if (h.leg < 0 || h.leg >= static_cast<int>(legs.size())) bad("half-edge on missing leg");
    if (legs[h.leg]++) bad("leg filled twice");
  };
  for (auto& e : g.edges) {
    if (e.type < 0 || e.type >= static_cast<int>(spec.edges.size())) bad("unknown edge type");
    fill(e.a);
    fill(e.b);
    const auto& et = spec.edges[e.type];
    if (leg_field(spec, g, e.a) != et.field || leg_field(spec, g, e.b) != et.conjugate_field)
      bad("edge '" + et.name + "' attached to legs of the wrong field");
  }
  for (auto& x : g.externals) {
    fill(x.at);
    if (leg_field(spec, g, x.at) != x.field) bad("external leg field mismatch");
  }
  for (auto& legs : filled)
    for (int c : legs)
      if (c != 1) bad("unfilled leg");
  if (!is_connected(g)) bad("not connected");
  if (!is_one_pi(g)) bad("not one-particle irreducible");
  if (g.bullet && g.externals.size() != 2) bad("bullet on a graph without two external legs");
}

std::vector<std::string> external_fields(const FeynmanGraph& g) {
  std::vector<std::string> out;
  for (auto& x : g.externals) out.push_back(x.field);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ResidueRef> residue(const TheorySpec& spec, const FeynmanGraph& g) {
  auto legs = external_fields(g);
  if (legs.size() == 2 && !g.bullet) {
    int e = spec.edge_with_legs(legs);
    if (e < 0) return std::nullopt;
    return ResidueRef{ResidueRef::Kind::Edge, e};
  }
  if (legs.size() == 2) {
    int v = spec.valence2_vertex(legs);
    if (v < 0) return std::nullopt;
    return ResidueRef{ResidueRef::Kind::Vertex, v};
  }
  for (int v = 0; v < spec.k(); ++v)
    if (spec.vertices[v].valence() > 2 && spec.vertices[v].legs == legs) return ResidueRef{ResidueRef::Kind::Vertex, v};
  return std::nullopt;
}

ResidueRef residue_or_throw(const TheorySpec& spec, const FeynmanGraph& g) {
  auto r = residue(spec, g);
  if (!r) {
    std::string legs;
    for (auto& f : external_fields(g)) legs += (legs.empty() ? "" : ",") + f;
    throw std::invalid_argument("external legs [" + legs + "] match no vertex or edge type");
  }
  return *r;
}

std::vector<int> vertex_counts(const TheorySpec& spec, const FeynmanGraph& g) {
  std::vector<int> m(spec.k(), 0);
  for (int t : g.vertices) ++m.at(t);
  return m;
}

std::vector<int> multidegree(const TheorySpec& spec, const FeynmanGraph& g) {
  auto d = vertex_counts(spec, g);
  auto r = residue(spec, g);
  if (r && r->is_vertex()) --d[r->index];
  return d;
}

int valence2_weight(const TheorySpec& spec, const FeynmanGraph& g) {
  auto d = multidegree(spec, g);
  int w = loop_number(g);
  for (int v : spec.valence2_vertices()) w += d[v];
  return w;
}

Rational green_weight(const TheorySpec& spec, const FeynmanGraph& g) {
  auto fields = external_fields(g);
  mpz_class num = 1;
  for (std::size_t i = 0; i < fields.size();) {
    std::size_t j = i;
    while (j < fields.size() && fields[j] == fields[i]) ++j;
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), j - i);
    num *= f;
    i = j;
  }
  Rational w(num, unlabeled_automorphisms(spec, g));
  w.canonicalize();
  return w;
}

std::string graph_to_string(const TheorySpec& spec, const FeynmanGraph& g) {
  std::ostringstream os;
  os << "vertices: [";
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    os << (v ? ", " : "") << spec.vertices[g.vertices[v]].name << '@' << v;
  os << "]; edges: [";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    os << (i ? ", " : "") << spec.edges[e.type].name << ": " << e.a.vertex << '.' << e.a.leg << " - " << e.b.vertex
       << '.' << e.b.leg;
  }
  os << "]; ext: [";
  for (std::size_t i = 0; i < g.externals.size(); ++i) {
    const auto& x = g.externals[i];
    os << (i ? ", " : "") << x.at.vertex << '.' << x.at.leg << ':' << x.field;
  }
  os << "]; bullet: " << (g.bullet ? 1 : 0);
  return os.str();
}

FeynmanGraph parse_graph(const TheorySpec& spec, const std::string& text) {
  static const std::regex whole(
      R"(^\s*vertices:\s*\[([^\]]*)\];\s*edges:\s*\[([^\]]*)\];\s*ext:\s*\[([^\]]*)\];\s*bullet:\s*([01])\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, whole)) throw std::invalid_argument("malformed graph text: " + text);
  auto items = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto b = item.find_first_not_of(" \t");
      if (b == std::string::npos) continue;
      auto e = item.find_last_not_of(" \t");
      out.push_back(item.substr(b, e - b + 1));
    }
    return out;
  };
  FeynmanGraph g;
  static const std::regex vre(R"(^(\w+)@(\d+)$)");
  for (auto& it : items(m[1])) {
    std::smatch vm;
    if (!std::regex_match(it, vm, vre)) throw std::invalid_argument("malformed vertex '" + it + "'");
    int id = std::stoi(vm[2]);
    int t = spec.vertex_index(vm[1]);
    if (t < 0) throw std::invalid_argument("unknown vertex type '" + std::string(vm[1]) + "'");
    if (id != static_cast<int>(g.vertices.size())) throw std::invalid_argument("vertex ids must be 0,1,2,...");
    g.vertices.push_back(t);
  }
  static const std::regex ere(R"(^(\w+):\s*(\d+)\.(\d+)\s*-\s*(\d+)\.(\d+)$)");
  for (auto& it : items(m[2])) {
    std::smatch em;
    if (!std::regex_match(it, em, ere)) throw std::invalid_argument("malformed edge '" + it + "'");
    InternalEdge e;
    e.type = spec.edge_index(em[1]);
    if (e.type < 0) throw std::invalid_argument("unknown edge type '" + std::string(em[1]) + "'");
    e.a = {std::stoi(em[2]), std::stoi(em[3])};
    e.b = {std::stoi(em[4]), std::stoi(em[5])};
    g.edges.push_back(e);
  }
  static const std::regex xre(R"(^(\d+)\.(\d+):(\w+)$)");
  for (auto& it : items(m[3])) {
    std::smatch xm;
    if (!std::regex_match(it, xm, xre)) throw std::invalid_argument("malformed external leg '" + it + "'");
    g.externals.push_back({{std::stoi(xm[1]), std::stoi(xm[2])}, xm[3]});
  }
  g.bullet = m[4] == "1";
  validate_graph(spec, g);
  return g;
}

FeynmanGraph relabel(const FeynmanGraph& g, const std::vector<int>& perm) {
  FeynmanGraph out;
  out.vertices.resize(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) out.vertices[perm[v]] = g.vertices[v];
  for (auto e : g.edges) {
    e.a.vertex = perm[e.a.vertex];
    e.b.vertex = perm[e.b.vertex];
    out.edges.push_back(e);
  }
  for (auto x : g.externals) {
    x.at.vertex = perm[x.at.vertex];
    out.externals.push_back(x);
  }
  out.bullet = g.bullet;
  return out;
}

}  // namespace renhopf
