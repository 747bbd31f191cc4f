#pragma once

#include "renhopf/hopf.hpp"

#include <map>
#include <vector>

namespace renhopf {

/// Reduced row-echelon basis of a subspace of H, with normal-form projection
/// onto a fixed complement. The pivot of a row is its largest monomial.
class RowSpace {
 public:
  /// Adds v to the span; returns false if it was already contained.
  bool insert(AlgebraElement v);
  /// Unique representative of v modulo the span; zero iff v is in the span.
  AlgebraElement normal_form(const AlgebraElement& v) const;
  bool contains(const AlgebraElement& v) const { return normal_form(v).is_zero(); }
  std::size_t dimension() const { return rows_.size(); }

 private:
  std::map<Monomial, AlgebraElement> rows_;  // pivot -> row with pivot coefficient 1
};

/// Dense rational matrix helpers.
using Matrix = std::vector<std::vector<Rational>>;

/// Row-reduces `m` in place; returns the pivot column of each nonzero row.
std::vector<int> row_reduce(Matrix& m);
int rank(Matrix m);

}  // namespace renhopf
