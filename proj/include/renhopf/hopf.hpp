#pragma once

#include "renhopf/graph.hpp"
#include "renhopf/rational.hpp"

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace renhopf {

/// Interning registry of 1PI graph classes. Each class gets a stable id in
/// insertion order; properties are computed once.
class GraphTable {
 public:
  explicit GraphTable(TheorySpec spec);

  const TheorySpec& spec() const { return spec_; }

  /// Canonicalizes and returns the id of the class of `g`.
  int intern(const FeynmanGraph& g);
  int find(const std::string& canonical) const;  // -1 if unknown

  struct Info {
    FeynmanGraph graph;  // canonical representative
    std::string key;     // canonical string
    int loop = 0;
    ResidueRef residue;
    std::vector<int> multidegree;
    int weight2 = 0;       // valence-2 weight
    long sym = 1;          // automorphisms fixing the external legs
    Rational green_weight; // coefficient in the Green's function
  };
  const Info& info(int id) const;
  int size() const;

  /// Ids of enumerate_graphs(spec, r, L), cached.
  const std::vector<int>& generators(ResidueRef r, int loops);

 private:
  TheorySpec spec_;
  mutable std::mutex mu_;
  std::deque<Info> infos_;
  std::unordered_map<std::string, int> index_;
  std::map<std::pair<ResidueRef, int>, std::vector<int>> gens_;
};

/// Sorted list of generator ids; the empty monomial is the unit.
/// FNV-1a; stable across platforms and runs.
std::uint64_t stable_hash(const std::string& s);

using Monomial = std::vector<int>;

Monomial mono_mul(const Monomial& a, const Monomial& b);

/// Finite rational combination of monomials in the free commutative algebra H.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(const Rational& c);  // c * 1
  static AlgebraElement one() { return AlgebraElement(Rational(1)); }
  static AlgebraElement generator(int id);
  static AlgebraElement monomial(Monomial m, const Rational& c = 1);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;
  Rational counit() const { return coefficient({}); }

  void add(const Monomial& m, const Rational& c);
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const Rational& c);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const Rational& c) { return a *= c; }
  friend AlgebraElement operator*(const Rational& c, AlgebraElement a) { return a *= c; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  AlgebraElement operator-() const { return *this * Rational(-1); }
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  std::map<Monomial, Rational> terms_;
};

/// Element of H (x) H.
class Tensor {
 public:
  using Key = std::pair<Monomial, Monomial>;
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Monomial& l, const Monomial& r, const Rational& c);
  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const Tensor& a, const Tensor& b);
  friend bool operator==(const Tensor&, const Tensor&) = default;

  static Tensor product(const AlgebraElement& l, const AlgebraElement& r);

 private:
  std::map<Key, Rational> terms_;
};

/// Element of H (x) H (x) H, used for coassociativity.
using Tensor3 = std::map<std::array<Monomial, 3>, Rational>;

int mono_loop(const GraphTable& t, const Monomial& m);
std::vector<int> mono_multidegree(const GraphTable& t, const Monomial& m);

/// Coproduct on generators, memoized; the quotient graphs are interned.
class HopfAlgebra {
 public:
  explicit HopfAlgebra(GraphTable& table) : table_(table) {}
  GraphTable& table() { return table_; }

  const Tensor& coproduct(int id);
  Tensor coproduct(const Monomial& m);
  Tensor coproduct(const AlgebraElement& x);
  /// Sum of gamma (x) Gamma/gamma over proper nonempty subgraphs only.
  Tensor reduced_coproduct(int id);

  const AlgebraElement& antipode(int id);
  AlgebraElement antipode(const Monomial& m);
  AlgebraElement antipode(const AlgebraElement& x);

  Tensor3 coproduct_left(const Tensor& t);   // (Delta (x) id)
  Tensor3 coproduct_right(const Tensor& t);  // (id (x) Delta)

 private:
  GraphTable& table_;
  std::unordered_map<int, Tensor> cop_;
  std::unordered_map<int, AlgebraElement> anti_;
};

AlgebraElement project_loop(const GraphTable& t, const AlgebraElement& x, int l);
AlgebraElement project_multidegree(const GraphTable& t, const AlgebraElement& x, const std::vector<int>& n);
/// Keeps monomials of total loop number <= lmax.
AlgebraElement truncate_loop(const GraphTable& t, const AlgebraElement& x, int lmax);
Tensor truncate_loop(const GraphTable& t, const Tensor& x, int lmax);

/// m o (f (x) g), with f and g given on monomials.
template <class F, class G>
AlgebraElement convolve_apply(const Tensor& t, F&& f, G&& g) {
  AlgebraElement out;
  for (const auto& [k, c] : t.terms()) out += c * (f(k.first) * g(k.second));
  return out;
}

std::string mono_str(const GraphTable& t, const Monomial& m);
std::string element_str(const GraphTable& t, const AlgebraElement& x);
std::string tensor_str(const GraphTable& t, const Tensor& x);

}  // namespace renhopf
