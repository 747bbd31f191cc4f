#pragma once

#include "renhopf/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace renhopf {

enum class Statistics { Bosonic, Fermionic };

struct FieldSpec {
  std::string name;
  int ghost_degree = 0;
  int form_degree = 0;
  bool is_source = false;
  std::optional<std::string> partner;  // for a source: the field it is the source of
  Statistics statistics = Statistics::Bosonic;
  bool propagates = true;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct VertexType {
  std::string name;
  std::vector<std::string> legs;  // sorted multiset of field names
  std::string coupling;
  int valence() const { return static_cast<int>(legs.size()); }

  friend bool operator==(const VertexType&, const VertexType&) = default;
};

struct EdgeType {
  std::string name;
  std::string field;
  std::string conjugate_field;
  bool oriented = false;

  friend bool operator==(const EdgeType&, const EdgeType&) = default;
};

/// One factor (G^r)^{exponent} of a C^phi monomial.
struct CPhiFactor {
  std::string green;  // name of an element of R
  Rational exponent;

  friend bool operator==(const CPhiFactor&, const CPhiFactor&) = default;
};

/// Formal monomial in Green's-function symbols, merged and sorted by name.
using CPhiExpr = std::vector<CPhiFactor>;

/// Index into R = R_V followed by R_E.
struct ResidueRef {
  enum class Kind { Vertex, Edge } kind = Kind::Vertex;
  int index = -1;

  bool is_vertex() const { return kind == Kind::Vertex; }
  friend auto operator<=>(const ResidueRef&, const ResidueRef&) = default;
};

class TheorySpec {
 public:
  std::string name;
  std::vector<FieldSpec> fields;
  std::vector<VertexType> vertices;
  std::vector<EdgeType> edges;
  std::map<std::string, CPhiExpr> cphi;
  int loop_cutoff = 2;

  /// Monomials in which a field occurs linearly (condition 1 of the C^phi
  /// rules). Each entry lists the fields of one bilinear or higher term.
  std::vector<std::vector<std::string>> linear_terms;
  bool allow_tadpoles = true;
  /// Bound on L + sum of d_v over valence-2 vertex types (see README).
  int valence2_cutoff = 2;
  /// Quotient by the valence-2 Y_v components when forming J'.
  bool massless = true;

  int k() const { return static_cast<int>(vertices.size()); }

  const FieldSpec& field(const std::string& name) const;
  bool has_field(const std::string& name) const;
  int field_index(const std::string& name) const;
  int vertex_index(const std::string& name) const;  // -1 if absent
  int edge_index(const std::string& name) const;    // -1 if absent

  std::optional<ResidueRef> residue_by_name(const std::string& name) const;
  std::string residue_name(ResidueRef r) const;
  /// External leg multiset of a residue (sorted field names).
  std::vector<std::string> residue_legs(ResidueRef r) const;
  std::vector<ResidueRef> all_residues() const;

  /// Edge type joining legs with fields a and b, or -1.
  int edge_between(const std::string& a, const std::string& b) const;
  /// Valence-2 vertex type with the given (sorted) legs, or -1.
  int valence2_vertex(const std::vector<std::string>& legs) const;
  /// Edge type whose leg multiset is the given (sorted) pair, or -1.
  int edge_with_legs(const std::vector<std::string>& legs) const;
  std::vector<int> valence2_vertices() const;

  /// N_phi(r): number of legs of field phi on residue r.
  int leg_count(ResidueRef r, const std::string& field) const;
};

/// Parses the JSON theory document; throws std::invalid_argument with a
/// message naming the offending key.
TheorySpec parse_theory(const std::string& text);
TheorySpec load_theory(const std::string& path);
/// Looks up `name` in the bundled data directory if it is not a path.
std::string resolve_theory_path(const std::string& name_or_path);
std::string serialize_theory(const TheorySpec& spec);

struct CPhiViolation {
  int condition;  // 1, 2 or 3
  std::string detail;
};

std::vector<CPhiViolation> validate_cphi(const TheorySpec& spec);

/// Product of two CPhiExpr monomials (exponents added, zeros dropped).
CPhiExpr cphi_multiply(const CPhiExpr& a, const CPhiExpr& b);
CPhiExpr cphi_power(const CPhiExpr& a, const Rational& alpha);
std::string cphi_str(const CPhiExpr& e);

bool operator==(const TheorySpec& a, const TheorySpec& b);

}  // namespace renhopf
