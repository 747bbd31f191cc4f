#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// Plain dense power series in one variable; no library series code involved.

#include "renhopf/rational.hpp"

#include <vector>

namespace oracle {

using renhopf::Rational;
using Dense = std::vector<Rational>;  // coefficient of x^i at index i

inline Dense mul(const Dense& a, const Dense& b, int order) {
  Dense c(order + 1);
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= order; ++i)
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= order; ++j) c[i + j] += a[i] * b[j];
  return c;
}

// f(g(x)) by Horner; g must have no constant term.
inline Dense compose(const Dense& f, const Dense& g, int order) {
  Dense out(order + 1);
  for (std::size_t i = f.size(); i-- > 0;) {
    out = mul(out, g, order);
    out[0] += f[i];
  }
  return out;
}

inline Dense derivative(const Dense& f) {
  Dense d(f.size() > 1 ? f.size() - 1 : 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * static_cast<long>(i);
  return d;
}

// 1/h for h(0) != 0, by the triangular recursion.
inline Dense reciprocal(const Dense& h, int order) {
  Dense r(order + 1);
  r[0] = 1 / h[0];
  for (int n = 1; n <= order; ++n) {
    Rational s = 0;
    for (int k = 1; k <= n && k < static_cast<int>(h.size()); ++k) s += h[k] * r[n - k];
    r[n] = -s / h[0];
  }
  return r;
}

// Compositional inverse of f = x + ... by Newton iteration
// g <- g - (f(g) - x) / f'(g).
inline Dense newton_inverse(const Dense& f, int order) {
  Dense g(order + 1);
  g[1] = 1;
  Dense fp = derivative(f);
  for (int prec = 1; prec < 2 * (order + 1); prec *= 2) {
    Dense r = compose(f, g, order);
    r[1] -= 1;
    Dense step = mul(r, reciprocal(compose(fp, g, order), order), order);
    for (int i = 0; i <= order; ++i) g[i] -= step[i];
  }
  return g;
}

}  // namespace oracle
