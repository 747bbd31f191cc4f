#include "renhopf/graph.hpp"
#include "renhopf/hopf.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using namespace renhopf;

namespace {

TheorySpec theory(const char* name) { return load_theory(resolve_theory_path(name)); }

bool connected_without(const FeynmanGraph& g, int skip) {
  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    if (e != skip) parent[find(g.edges[e].a.vertex)] = find(g.edges[e].b.vertex);
  for (int v = 1; v < n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

// |Aut| for graphs whose vertices have fully symmetric legs: vertex
// permutations fixing every vertex that carries an external leg and
// preserving typed adjacency, times k! per multi-edge bundle and 2^k k! per
// bundle of k self-loops.
long brute_force_symmetry(const FeynmanGraph& g) {
  const int n = static_cast<int>(g.vertices.size());
  std::map<std::pair<int, int>, int> mult;
  for (const auto& e : g.edges) {
    auto key = std::minmax(e.a.vertex, e.b.vertex);
    ++mult[{key.first, key.second}];
  }
  std::set<int> pinned;
  for (const auto& x : g.externals) pinned.insert(x.at.vertex);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      if (pinned.count(v) && perm[v] != v) ok = false;
      if (g.vertices[v] != g.vertices[perm[v]]) ok = false;
    }
    for (const auto& [k, m] : mult) {
      if (!ok) break;
      auto img = std::minmax(perm[k.first], perm[k.second]);
      auto it = mult.find({img.first, img.second});
      if (it == mult.end() || it->second != m) ok = false;
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (const auto& [k, m] : mult) {
    long f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    if (k.first == k.second) f <<= m;
    count *= f;
  }
  return count;
}

}  // namespace

TEST_CASE("phi3 one-loop graphs by hand") {
  TheorySpec spec = theory("phi3");
  auto prop = *spec.residue_by_name("prop");
  auto vertex = *spec.residue_by_name("phi3");
  auto bubble = enumerate_graphs(spec, prop, 1);
  REQUIRE(bubble.size() == 1);
  CHECK(bubble[0].vertices.size() == 2);
  CHECK(symmetry_factor(spec, bubble[0]) == 2);
  CHECK(green_weight(spec, bubble[0]) == Rational(1, 2));
  auto triangle = enumerate_graphs(spec, vertex, 1);
  REQUIRE(triangle.size() == 1);
  CHECK(triangle[0].edges.size() == 3);
  CHECK(symmetry_factor(spec, triangle[0]) == 1);
  // Two-loop self-energy: nested bubble and vertex-corrected bubble, both 1/2.
  auto two = enumerate_graphs(spec, prop, 2);
  REQUIRE(two.size() == 2);
  for (const auto& g : two) CHECK(symmetry_factor(spec, g) == 2);
}

TEST_CASE("no graphs at zero loops") {
  TheorySpec spec = theory("qed");
  for (ResidueRef r : spec.all_residues()) CHECK(enumerate_graphs(spec, r, 0).empty());
}

TEST_CASE("enumeration agrees with the naive generator") {
  for (const char* name : {"phi3", "qed", "yang_mills"}) {
    TheorySpec spec = theory(name);
    for (ResidueRef r : spec.all_residues())
      // The naive generator is exponential; two loops only where it is cheap.
      for (int l = 1; l <= (std::string(name) == "qed" ? 2 : 1); ++l) {
        std::multiset<std::string> fast, naive;
        for (const auto& g : enumerate_graphs(spec, r, l)) fast.insert(canonical_form(spec, g));
        for (const auto& g : enumerate_graphs_naive(spec, r, l)) naive.insert(canonical_form(spec, g));
        CAPTURE(name);
        CAPTURE(spec.residue_name(r));
        CHECK(fast == naive);
        CHECK(std::set<std::string>(fast.begin(), fast.end()).size() == fast.size());
      }
  }
}

TEST_CASE("graph invariants recomputed from the edge lists") {
  for (const char* name : {"phi3", "qed", "yang_mills"}) {
    TheorySpec spec = theory(name);
    for (ResidueRef r : spec.all_residues())
      for (int l = 1; l <= 2; ++l)
        for (const auto& g : enumerate_graphs(spec, r, l)) {
          int loops = static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) + 1;
          CHECK(loop_number(g) == loops);
          CHECK(loops == l);
          bool bridge = false;
          for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) bridge |= !connected_without(g, e);
          CHECK(is_one_pi(g) == !bridge);
          CHECK(!bridge);
          // Lemma 1: sum (N(v) - 2) d_v = 2 L, where d_v does not count the
          // residue itself; a residue with E legs contributes E - 2.
          int sum = 0;
          for (int v : g.vertices) sum += spec.vertices[v].valence() - 2;
          sum -= static_cast<int>(g.externals.size()) - 2;
          CHECK(sum == 2 * loops);
          int graded = 0;
          auto d = multidegree(spec, g);
          for (int v = 0; v < spec.k(); ++v) graded += (spec.vertices[v].valence() - 2) * d[v];
          CHECK(graded == sum);
        }
  }
}

TEST_CASE("symmetry factors match brute-force automorphism counts") {
  TheorySpec spec = theory("phi3");
  for (ResidueRef r : spec.all_residues())
    for (int l = 1; l <= 3; ++l)
      for (const auto& g : enumerate_graphs(spec, r, l)) {
        CAPTURE(graph_to_string(spec, g));
        CHECK(symmetry_factor(spec, g) == brute_force_symmetry(g));
      }
}

TEST_CASE("canonical form is invariant under relabeling") {
  TheorySpec spec = theory("yang_mills");
  for (const auto& g : enumerate_graphs(spec, *spec.residue_by_name("A3"), 1)) {
    std::vector<int> perm(g.vertices.size());
    std::iota(perm.rbegin(), perm.rend(), 0);
    CHECK(canonical_form(spec, relabel(g, perm)) == canonical_form(spec, g));
    CHECK(canonical_form(spec, parse_graph(spec, graph_to_string(spec, g))) == canonical_form(spec, g));
  }
}

TEST_CASE("parse_graph rejects malformed input") {
  TheorySpec spec = theory("phi3");
  CHECK_THROWS_AS(parse_graph(spec, "vertices: [nope@0]; edges: []; ext: []; bullet: 0"), std::invalid_argument);
}
