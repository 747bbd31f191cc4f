#pragma once

#include "renhopf/poly.hpp"
#include "renhopf/report.hpp"
#include "renhopf/theory.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace renhopf {

/// A field or source symbol, optionally under one exterior derivative.
struct Atom {
  int sym = 0;
  bool d = false;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

using Word = std::vector<Atom>;

/// Degree table for the BV symbols, read from the theory's field list.
class SymbolTable {
 public:
  explicit SymbolTable(const TheorySpec& spec);

  int size() const { return static_cast<int>(names_.size()); }
  int index(const std::string& name) const;  // throws if unknown
  const std::string& name(int sym) const { return names_.at(sym); }
  std::string name(Atom a) const { return (a.d ? "d" : "") + names_.at(a.sym); }
  Atom parse_atom(const std::string& token) const;

  int form(Atom a) const { return form_.at(a.sym) + (a.d ? 1 : 0); }
  int ghost(Atom a) const { return ghost_.at(a.sym); }
  int total(Atom a) const { return form(a) + ghost(a); }
  int parity(Atom a) const { return ((total(a) % 2) + 2) % 2; }
  int parity(const Word& w) const;
  int form(const Word& w) const;
  bool is_source(int sym) const { return source_.at(sym); }
  /// Source of a field, or field of a source; -1 if none.
  int partner(int sym) const { return partner_.at(sym); }

 private:
  std::vector<std::string> names_;
  std::vector<int> form_, ghost_, partner_;
  std::vector<bool> source_;
};

/// Lie-algebra-valued local form: linear combination of associative words,
/// value = coefficient * x_1 ... x_n read left to right. Brackets are
/// expanded, so Jacobi and antisymmetry hold identically.
class LieExpr {
 public:
  LieExpr() = default;
  static LieExpr atom(Atom a, const Poly& c = Poly(1));

  const std::map<Word, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Word& w, const Poly& c);

  LieExpr& operator+=(const LieExpr& o);
  LieExpr& operator-=(const LieExpr& o);
  friend LieExpr operator+(LieExpr a, const LieExpr& b) { return a += b; }
  friend LieExpr operator-(LieExpr a, const LieExpr& b) { return a -= b; }
  friend LieExpr operator*(const Poly& c, const LieExpr& x);
  LieExpr operator-() const;
  friend bool operator==(const LieExpr&, const LieExpr&) = default;

  LieExpr substitute(const std::map<VarId, Poly>& values) const;
  std::string str(const SymbolTable& t) const;

 private:
  std::map<Word, Poly> terms_;
};

/// Associative product in word order.
LieExpr product(const LieExpr& x, const LieExpr& y);
/// [X,Y] = XY - (-1)^{|X||Y|} YX on each pair of words.
LieExpr bracket(const SymbolTable& t, const LieExpr& x, const LieExpr& y);
/// Exterior derivative: odd derivation for the total degree, d(dX) = 0.
LieExpr exterior_d(const SymbolTable& t, const LieExpr& x);

/// Slot of an atom inside an integrated trace: a 0-form, or a form atom on
/// the left or right of the Hodge pairing.
enum class Tag : int { Zero = 0, Left = 1, Right = 2 };

struct TaggedAtom {
  Atom atom;
  Tag tag = Tag::Zero;
  friend auto operator<=>(const TaggedAtom&, const TaggedAtom&) = default;
};

using TraceWord = std::vector<TaggedAtom>;

/// Integrated trace functional int tr( u * v ). A key stands for
/// tr(T^{word}) times the components ordered as (0-forms)(Left)(Right), each
/// class in word order, with the Left forms paired against the Right forms.
class Functional {
 public:
  const std::map<TraceWord, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Adds an arbitrary (non-canonical) term; it is canonicalized first.
  void add(const SymbolTable& t, const TraceWord& w, const Poly& c);

  Functional& operator+=(const Functional& o);
  Functional& operator-=(const Functional& o);
  friend Functional operator+(Functional a, const Functional& b) { return a += b; }
  friend Functional operator-(Functional a, const Functional& b) { return a -= b; }
  friend Functional operator*(const Poly& c, const Functional& f);
  friend bool operator==(const Functional&, const Functional&) = default;

  Functional substitute(const std::map<VarId, Poly>& values) const;
  std::string str(const SymbolTable& t) const;

 private:
  std::map<TraceWord, Poly> terms_;
};

/// Canonical representative of a trace word under rotation and exchange of
/// the pairing sides; sign 0 means the word vanishes.
std::pair<TraceWord, int> canonical_trace_word(const SymbolTable& t, const TraceWord& w);

/// int tr( u * v ).
Functional pairing(const SymbolTable& t, const LieExpr& u, const LieExpr& v);
/// c * int tr( w ) with the components multiplied in word order.
Functional trace_word(const SymbolTable& t, const TraceWord& w, const Poly& c);

/// F <-d/dK for a source K; throws on terms nonlinear in K or of an
/// unsupported shape.
LieExpr right_source_derivative(const SymbolTable& t, const Functional& f, int source);
/// d/dK-> G.
LieExpr left_source_derivative(const SymbolTable& t, const Functional& g, int source);
/// Sum over occurrences of `field` (and d field) of the substitution by y,
/// with the Koszul signs of a left or right derivative.
Functional variation(const SymbolTable& t, const Functional& g, int field, const LieExpr& y, bool left);

/// (F,G) = sum_phi (F <-d_phi)(d_K-> G) - (F <-d_K)(d_phi-> G).
Functional antibracket(const SymbolTable& t, const Functional& f, const Functional& g);

/// One line of the action: coefficient * int tr( left * right ).
struct ActionTerm {
  Poly coefficient;
  LieExpr left;
  LieExpr right;
  std::string text;
};

struct ActionSpec {
  std::vector<ActionTerm> terms;

  Functional functional(const SymbolTable& t) const;
  ActionSpec substitute(const std::map<VarId, Poly>& values) const;
  /// Coupling variables in first-appearance order.
  std::vector<VarId> couplings() const;
};

/// Parses lines `<coefficient> int tr( <factor> * <factor> )` or
/// `<coefficient> int tr( < <factor>, <factor> > )`; factors are `sym`,
/// `d sym`, `dsym` or `[f, g]`. `#` starts a comment.
ActionSpec parse_action(const SymbolTable& t, const std::string& text);
ActionSpec load_action(const SymbolTable& t, const std::string& path);
LieExpr parse_factor(const SymbolTable& t, const std::string& text);

using BrstRules = std::map<int, LieExpr>;

/// s phi = S <-d/dK_phi for every field with a registered source; empty if
/// the action has no source term. Throws if a source appears nonlinearly.
BrstRules brst_from_action(const SymbolTable& t, const ActionSpec& s);
/// Graded-Leibniz extension of the rules, s d = -d s.
LieExpr apply_s(const SymbolTable& t, const LieExpr& x, const BrstRules& rules);
/// s acting on the fields of a functional, sources untouched.
Functional apply_s(const SymbolTable& t, const Functional& f, const BrstRules& rules);

/// Distinct primitive coefficient polynomials of the canonical (S,S).
std::vector<Poly> master_constraints(const SymbolTable& t, const ActionSpec& s);

struct SimpleTheoryReport {
  bool simple = false;
  std::string fundamental;             // coupling name of g
  std::map<VarId, Poly> substitution;  // lambda_v -> g^{N(v)-2}
  std::vector<Poly> expected;          // generators of I'
  std::vector<Poly> basis;             // reduced Groebner basis of the constraints
};

SimpleTheoryReport simple_theory_check(const TheorySpec& spec, const std::vector<Poly>& constraints);

/// Reduced Groebner basis, lex order with `order` from high to low.
std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const std::vector<VarId>& order);
/// Remainder of p modulo a Groebner basis.
Poly groebner_reduce(const Poly& p, const std::vector<Poly>& basis, const std::vector<VarId>& order);
bool same_ideal(const std::vector<Poly>& a, const std::vector<Poly>& b, const std::vector<VarId>& order);

/// Coefficients of s^2(A) in the basis ([dw,w], [A,[w,w]]).
struct SquareDecomposition {
  Poly first;
  Poly second;
  bool exact = false;  // remainder vanished
};

SquareDecomposition decompose_s2_gauge(const SymbolTable& t, const BrstRules& rules, const std::string& gauge,
                                       const std::string& ghost);

/// Master-equation suite for a theory and its action: constraints, the
/// simple-theory ideal, s^2(A), s^2 = 0 and (S,S) = 0 after substitution.
CheckResult check_master(const TheorySpec& spec, const ActionSpec& action);

/// Graded Lie identities and trace identities on seeded random words.
CheckResult check_bv_identities(const TheorySpec& spec, const ActionSpec& action, std::uint64_t seed,
                                int samples = 40);

/// Finite-dimensional BV algebra check: bracket from the odd Laplacian,
/// antisymmetry, Leibniz and Jacobi on seeded polynomials.
CheckResult check_toy_bv(std::uint64_t seed, int samples = 30);

class GreenAlgebra;
/// Slavnov-Taylor identities for the couplings and the Green's-function
/// forms, as normal forms modulo J' slice by slice.
CheckResult check_st_identities(GreenAlgebra& ga);

/// Path of the action file shipped next to a theory file, or "".
std::string resolve_action_path(const std::string& theory_path);

}  // namespace renhopf
