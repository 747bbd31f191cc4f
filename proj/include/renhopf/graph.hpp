#pragma once

#include "renhopf/rational.hpp"
#include "renhopf/theory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace renhopf {

struct HalfEdge {
  int vertex = -1;
  int leg = -1;  // index into VertexType::legs
  friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

/// Internal propagator. End `a` carries the edge type's `field`, end `b` its
/// `conjugate_field`; for unoriented types the order carries no meaning.
struct InternalEdge {
  int type = -1;
  HalfEdge a, b;
  bool is_self_loop() const { return a.vertex == b.vertex; }
};

struct ExternalLeg {
  HalfEdge at;
  std::string field;
};

/// Typed multigraph with external legs. Vertex ids are positions in
/// `vertices`; each entry is an index into TheorySpec::vertices.
struct FeynmanGraph {
  std::vector<int> vertices;
  std::vector<InternalEdge> edges;
  std::vector<ExternalLeg> externals;
  bool bullet = false;
};

/// Throws std::invalid_argument if a structural invariant is violated
/// (legs filled once with matching fields, connected, 1PI, no source edges).
void validate_graph(const TheorySpec& spec, const FeynmanGraph& g);

int loop_number(const FeynmanGraph& g);
bool is_connected(const FeynmanGraph& g);
/// Connected, at least one loop, and no internal bridge.
bool is_one_pi(const FeynmanGraph& g);
bool has_self_loop(const FeynmanGraph& g);

std::vector<std::string> external_fields(const FeynmanGraph& g);
/// Residue of the graph; nullopt if the external legs match no element of R.
std::optional<ResidueRef> residue(const TheorySpec& spec, const FeynmanGraph& g);
/// Same, but throws std::invalid_argument when there is no match.
ResidueRef residue_or_throw(const TheorySpec& spec, const FeynmanGraph& g);

/// m_{Gamma,v} for every vertex type.
std::vector<int> vertex_counts(const TheorySpec& spec, const FeynmanGraph& g);
/// d_v = m_{Gamma,v} - n_{Gamma,v}.
std::vector<int> multidegree(const TheorySpec& spec, const FeynmanGraph& g);
/// L + sum of d_v over valence-2 types; bounded by TheorySpec::valence2_cutoff.
int valence2_weight(const TheorySpec& spec, const FeynmanGraph& g);

/// Canonical text form; equal iff isomorphic by a type-, orientation- and
/// external-field-preserving isomorphism. Bullet is part of the identity.
std::string canonical_form(const TheorySpec& spec, const FeynmanGraph& g);

/// Order of the automorphism group fixing every external leg.
long symmetry_factor(const TheorySpec& spec, const FeynmanGraph& g);
/// Order of the automorphism group that may permute external legs of equal field.
long unlabeled_automorphisms(const TheorySpec& spec, const FeynmanGraph& g);
/// Weight of the isomorphism class in a Green's function: the sum of
/// 1/Sym over its distinct external labelings, i.e. prod n_f! / |Aut|.
Rational green_weight(const TheorySpec& spec, const FeynmanGraph& g);

/// Text form `vertices: [...]; edges: [...]; ext: [...]; bullet: 0|1`
/// using the graph's own labels.
std::string graph_to_string(const TheorySpec& spec, const FeynmanGraph& g);
/// Inverse of graph_to_string; throws std::invalid_argument.
FeynmanGraph parse_graph(const TheorySpec& spec, const std::string& text);

/// Relabels vertices by `perm` (new id = perm[old id]).
FeynmanGraph relabel(const FeynmanGraph& g, const std::vector<int>& perm);

// Enumeration

/// All 1PI graphs with the given residue and loop number, one per
/// isomorphism class, ordered by canonical form. Two-leg classes carry the
/// bullet flag exactly when the residue is a valence-2 vertex. Graphs whose
/// valence-2 weight exceeds spec.valence2_cutoff are omitted.
std::vector<FeynmanGraph> enumerate_graphs(const TheorySpec& spec, ResidueRef r, int loops);

/// Reference implementation for cross-checks: generates every perfect
/// matching of the half-edges without symmetry breaking. Small orders only.
std::vector<FeynmanGraph> enumerate_graphs_naive(const TheorySpec& spec, ResidueRef r, int loops);

// Subgraphs and contraction

struct SubgraphComponent {
  std::vector<int> edges;     // internal edge indices of the parent
  std::vector<int> vertices;  // parent vertex ids
  ResidueRef residue;
  bool bullet = false;
  FeynmanGraph graph;  // the component as a standalone graph
};

/// A proper subgraph: disjoint 1PI components, each with its residue
/// choice (bullet or edge for two-leg components).
struct SubgraphChoice {
  std::vector<SubgraphComponent> components;
};

/// Every proper, nonempty choice in the coproduct sum.
std::vector<SubgraphChoice> subgraphs(const TheorySpec& spec, const FeynmanGraph& g);

/// Gamma / gamma: each component replaced by its residue vertex or edge.
FeynmanGraph contract(const TheorySpec& spec, const FeynmanGraph& g, const SubgraphChoice& choice);

}  // namespace renhopf
