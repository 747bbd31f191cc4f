#include "renhopf/linalg.hpp"

namespace renhopf {

AlgebraElement RowSpace::normal_form(const AlgebraElement& v) const {
  AlgebraElement out = v;
  for (const auto& [m, c] : v.terms()) {
    auto it = rows_.find(m);
    if (it != rows_.end()) out -= c * it->second;
  }
  return out;
}

bool RowSpace::insert(AlgebraElement v) {
  v = normal_form(v);
  if (v.is_zero()) return false;
  auto last = std::prev(v.terms().end());
  Monomial pivot = last->first;
  v *= 1 / Rational(last->second);
  for (auto& [p, row] : rows_) {
    Rational c = row.coefficient(pivot);
    if (c != 0) row -= c * v;
  }
  rows_.emplace(std::move(pivot), std::move(v));
  return true;
}

std::vector<int> row_reduce(Matrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

int rank(Matrix m) { return static_cast<int>(row_reduce(m).size()); }

}  // namespace renhopf
