#include "renhopf/bv.hpp"

#include <random>

namespace renhopf {

namespace {

// Supercommutative polynomials in fields x_0..x_{n-1} and their antifields
// K_0..K_{n-1}; variable i < n is x_i, variable n + i is K_i.
class ToyAlgebra {
 public:
  using Mono = std::vector<int>;
  using Elem = std::map<Mono, Rational>;

  explicit ToyAlgebra(std::vector<int> field_parity) : n_(static_cast<int>(field_parity.size())) {
    parity_ = field_parity;
    for (int p : field_parity) parity_.push_back(p ^ 1);
  }

  int vars() const { return 2 * n_; }
  int fields() const { return n_; }
  int var_parity(int v) const { return parity_[v]; }

  int parity(const Mono& m) const {
    int p = 0;
    for (int v = 0; v < vars(); ++v) p ^= (m[v] & parity_[v]);
    return p;
  }
  int parity(const Elem& x) const { return x.empty() ? 0 : parity(x.begin()->first); }

  static void add(Elem& x, const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = x.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) x.erase(it);
    }
  }

  Elem mul(const Elem& a, const Elem& b) const {
    Elem out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        Mono m(vars());
        bool zero = false;
        int swaps = 0;
        for (int v = 0; v < vars(); ++v) {
          m[v] = ma[v] + mb[v];
          if (parity_[v] && m[v] > 1) zero = true;
        }
        if (zero) continue;
        // Odd variables of b move left past the odd variables of a with larger index.
        for (int j = 0; j < vars(); ++j) {
          if (!parity_[j] || !mb[j]) continue;
          for (int i = j + 1; i < vars(); ++i)
            if (parity_[i] && ma[i]) ++swaps;
        }
        Rational c = ca * cb;
        add(out, m, (swaps % 2) ? Rational(-c) : c);
      }
    return out;
  }

  Elem derivative(const Elem& x, int v, bool left) const {
    Elem out;
    for (const auto& [m, c] : x) {
      if (!m[v]) continue;
      Mono q = m;
      Rational f = c * m[v];
      --q[v];
      if (parity_[v]) {
        int before = 0;
        if (left) {
          for (int i = 0; i < v; ++i) before += parity_[i] & m[i];
        } else {
          for (int i = v + 1; i < vars(); ++i) before += parity_[i] & m[i];
        }
        if (before % 2) f = -f;
      }
      add(out, q, f);
    }
    return out;
  }

  Elem bracket(const Elem& a, const Elem& b) const {
    Elem out;
    for (int i = 0; i < n_; ++i) {
      for (const auto& [m, c] : mul(derivative(a, i, false), derivative(b, n_ + i, true))) add(out, m, c);
      for (const auto& [m, c] : mul(derivative(a, n_ + i, false), derivative(b, i, true))) add(out, m, -c);
    }
    return out;
  }

  // Sum_i (-1)^{|x_i|} d_L/dK_i d_L/dx_i; `printed` gives d_R/dK_i d_L/dx_i.
  Elem laplacian(const Elem& x, bool printed = false) const {
    Elem out;
    for (int i = 0; i < n_; ++i) {
      Elem r = derivative(derivative(x, i, true), n_ + i, !printed);
      bool flip = !printed && parity_[i];
      for (const auto& [m, c] : r) add(out, m, flip ? Rational(-c) : c);
    }
    return out;
  }

  Elem scale(const Elem& x, const Rational& c) const {
    Elem out;
    for (const auto& [m, v] : x) add(out, m, v * c);
    return out;
  }

  Elem sum(const Elem& a, const Elem& b) const {
    Elem out = a;
    for (const auto& [m, c] : b) add(out, m, c);
    return out;
  }

  Elem variable(int v) const {
    Mono m(vars(), 0);
    m[v] = 1;
    return {{m, Rational(1)}};
  }

  Elem random(std::mt19937_64& rng, int parity) const {
    std::uniform_int_distribution<int> var(0, vars() - 1), deg(1, 3), coef(-3, 3);
    Elem out;
    int guard = 0;
    while (out.size() < 3 && guard++ < 200) {
      Mono m(vars(), 0);
      int d = deg(rng);
      for (int k = 0; k < d; ++k) {
        int v = var(rng);
        if (parity_[v] && m[v]) continue;
        ++m[v];
      }
      if (this->parity(m) != parity) continue;
      int c = coef(rng);
      if (c) add(out, m, Rational(c));
    }
    return out;
  }

 private:
  int n_;
  std::vector<int> parity_;
};

int sign(int parity) { return parity ? -1 : 1; }

}  // namespace

CheckResult check_toy_bv(std::uint64_t seed, int samples) {
  CheckResult res;
  res.name = "toy-bv";
  ToyAlgebra alg({0, 1, 1, 0});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  int anti = 0, leib = 0, jac = 0, lap = 0, bv = 0, nonzero = 0;
  for (int s = 0; s < samples; ++s) {
    int px = coin(rng), py = coin(rng), pz = coin(rng);
    auto x = alg.random(rng, px), y = alg.random(rng, py), z = alg.random(rng, pz);
    auto xy = alg.bracket(x, y);
    if (!xy.empty()) ++nonzero;
    // (x,y) = -(-1)^{(|x|+1)(|y|+1)} (y,x)
    if (!alg.sum(xy, alg.scale(alg.bracket(y, x), sign((px ^ 1) & (py ^ 1)))).empty()) ++anti;
    // (x,yz) = (x,y)z + (-1)^{(|x|+1)|y|} y(x,z)
    auto lhs = alg.bracket(x, alg.mul(y, z));
    auto rhs = alg.sum(alg.mul(xy, z), alg.scale(alg.mul(y, alg.bracket(x, z)), sign((px ^ 1) & py)));
    if (!alg.sum(lhs, alg.scale(rhs, -1)).empty()) ++leib;
    // (x,(y,z)) = ((x,y),z) + (-1)^{(|x|+1)(|y|+1)} (y,(x,z))
    auto j1 = alg.bracket(x, alg.bracket(y, z));
    auto j2 = alg.sum(alg.bracket(xy, z), alg.scale(alg.bracket(y, alg.bracket(x, z)), sign((px ^ 1) & (py ^ 1))));
    if (!alg.sum(j1, alg.scale(j2, -1)).empty()) ++jac;
    if (!alg.laplacian(alg.laplacian(x)).empty()) ++lap;
    // (-1)^{|x|} (x,y) = D(xy) - D(x) y - (-1)^{|x|} x D(y)
    auto d = alg.sum(alg.laplacian(alg.mul(x, y)), alg.scale(alg.mul(alg.laplacian(x), y), -1));
    d = alg.sum(d, alg.scale(alg.mul(x, alg.laplacian(y)), -sign(px)));
    if (!alg.sum(d, alg.scale(xy, -sign(px))).empty()) ++bv;
  }
  auto count = [&](int bad) { return std::to_string(samples - bad) + "/" + std::to_string(samples); };
  res.record("(x,y) nonzero on most samples", nonzero * 2 > samples, std::to_string(nonzero) + "/" + std::to_string(samples));
  res.record("(x,y) = -(-1)^{(|x|+1)(|y|+1)} (y,x)", anti == 0, count(anti));
  res.record("(x,yz) = (x,y)z + (-1)^{(|x|+1)|y|} y(x,z)", leib == 0, count(leib));
  res.record("graded Jacobi for (,)", jac == 0, count(jac));
  res.record("D^2 = 0", lap == 0, count(lap));
  res.record("(-1)^{|x|}(x,y) = D(xy) - D(x)y - (-1)^{|x|} x D(y)", bv == 0, count(bv));

  // D(xy) - D(x)y + (-1)^{|x|} x D(y) is symmetric on x = phi, y = K_phi
  // for even phi, while the bracket is antisymmetric there.
  auto phi = alg.variable(0), k = alg.variable(alg.fields());
  auto rhs_plus = [&](const ToyAlgebra::Elem& a, int pa, const ToyAlgebra::Elem& b, bool printed) {
    auto r = alg.sum(alg.laplacian(alg.mul(a, b), printed), alg.scale(alg.mul(alg.laplacian(a, printed), b), -1));
    return alg.sum(r, alg.scale(alg.mul(a, alg.laplacian(b, printed)), sign(pa)));
  };
  bool witness = rhs_plus(phi, 0, k, true) == alg.bracket(phi, k) && rhs_plus(k, 1, phi, true) != alg.bracket(k, phi);
  res.record("control: D(xy) - D(x)y + (-1)^{|x|} x D(y) fails on (K_phi, phi)", witness);
  // The unsigned operator d_R/dK d_L/dx admits no fixed sign pattern
  // D(xy) + a D(x)y + b x D(y) = c (x,y) across the samples.
  bool any_variant = false;
  for (int v = 0; v < 8 && !any_variant; ++v) {
    int a = (v & 1) ? -1 : 1, b = (v & 2) ? -1 : 1, c = (v & 4) ? -1 : 1;
    std::mt19937_64 again(seed);
    bool holds = true;
    for (int s = 0; s < samples && holds; ++s) {
      int px = coin(again), py = coin(again), pz = coin(again);
      auto x = alg.random(again, px), y = alg.random(again, py);
      alg.random(again, pz);
      auto d = alg.sum(alg.laplacian(alg.mul(x, y), true), alg.scale(alg.mul(alg.laplacian(x, true), y), a));
      d = alg.sum(d, alg.scale(alg.mul(x, alg.laplacian(y, true)), b));
      holds = alg.sum(d, alg.scale(alg.bracket(x, y), -c)).empty();
    }
    any_variant = holds;
  }
  res.record("control: unsigned d_R/dK d_L/dx fits no sign pattern", !any_variant);
  return res;
}

}  // namespace renhopf
