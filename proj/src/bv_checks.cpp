#include "renhopf/bv.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace renhopf {

namespace {

int sgn_of(int parity) { return parity ? -1 : 1; }

int expr_parity(const SymbolTable& t, const LieExpr& x) {
  return x.is_zero() ? 0 : t.parity(x.terms().begin()->first);
}

int functional_parity(const SymbolTable& t, const Functional& f) {
  if (f.is_zero()) return 0;
  int p = 0;
  for (const auto& a : f.terms().begin()->first) p ^= t.parity(a.atom);
  return p;
}

const VertexType* vertex_with_leg(const TheorySpec& spec, const std::string& leg) {
  for (const auto& v : spec.vertices)
    if (std::find(v.legs.begin(), v.legs.end(), leg) != v.legs.end()) return &v;
  return nullptr;
}

class ExprGen {
 public:
  ExprGen(const SymbolTable& t, std::uint64_t seed, bool sources) : t_(t), rng_(seed) {
    for (int s = 0; s < t.size(); ++s) {
      if (t.is_source(s)) {
        if (sources) atoms_.push_back({s, false});
      } else {
        atoms_.push_back({s, false});
        atoms_.push_back({s, true});
      }
    }
  }

  LieExpr expr(int depth) {
    std::uniform_int_distribution<int> coin(0, 2);
    if (depth == 0 || coin(rng_) == 0) return LieExpr::atom(atom(), Poly(coefficient()));
    return bracket(t_, expr(depth - 1), expr(depth - 1));
  }

  Atom atom() {
    std::uniform_int_distribution<std::size_t> pick(0, atoms_.size() - 1);
    return atoms_[pick(rng_)];
  }

  long coefficient() {
    std::uniform_int_distribution<long> c(-3, 3);
    long v = 0;
    while (v == 0) v = c(rng_);
    return v;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  const SymbolTable& t_;
  std::mt19937_64 rng_;
  std::vector<Atom> atoms_;
};

}  // namespace

CheckResult check_master(const TheorySpec& spec, const ActionSpec& action) {
  CheckResult res;
  res.name = "master";
  SymbolTable t(spec);
  BrstRules rules = brst_from_action(t, action);
  for (const auto& [field, rule] : rules) res.record("s " + t.name(field) + " = " + rule.str(t), true);

  std::vector<Poly> constraints = master_constraints(t, action);
  for (const Poly& p : constraints) res.record("(S,S) coefficient: " + p.str() + " = 0", true);

  SimpleTheoryReport rep = simple_theory_check(spec, constraints);
  std::string basis;
  for (const Poly& p : rep.basis) basis += (basis.empty() ? "" : ", ") + p.str();
  res.record("constraint ideal = simple-theory ideal, g = " + (rep.fundamental.empty() ? "-" : rep.fundamental),
             rep.simple, "Groebner basis {" + basis + "}");
  for (const auto& [v, value] : rep.substitution) res.record("  " + var_name(v) + " -> " + value.str(), rep.simple);

  // s^2 on the gauge field, in the basis ([dw,w], [A,[w,w]]).
  std::string gauge, ghost;
  for (const auto& f : spec.fields) {
    if (f.is_source) continue;
    if (f.form_degree == 1 && gauge.empty()) gauge = f.name;
    if (f.ghost_degree == 1 && f.form_degree == 0 && ghost.empty()) ghost = f.name;
  }
  if (!rules.empty() && !gauge.empty() && !ghost.empty() && rules.count(t.index(gauge)) && rules.count(t.index(ghost))) {
    SquareDecomposition dec = decompose_s2_gauge(t, rules, gauge, ghost);
    const VertexType* vk = vertex_with_leg(spec, t.name(t.partner(t.index(gauge))));
    const VertexType* vw = vertex_with_leg(spec, t.name(t.partner(t.index(ghost))));
    std::string item = "s^2(" + gauge + ") = (" + dec.first.str() + ") [d" + ghost + "," + ghost + "] + (" +
                       dec.second.str() + ") [" + gauge + ",[" + ghost + "," + ghost + "]]";
    bool ok = dec.exact;
    if (vk && vw) {
      Poly lk = Poly::var(vk->coupling), lw = Poly::var(vw->coupling);
      Poly a = lk - lw;
      Poly b = (lk * lk - lk * lw) * make_rational(1, 2);
      ok = ok && !a.is_zero() && dec.first * b == dec.second * a && !dec.first.is_zero();
    }
    res.record(item, ok, ok ? "ratio matches (l_K - l_w) : 1/2 (l_K^2 - l_K l_w)" : "ratio mismatch");
  }

  if (rep.simple && !rep.substitution.empty()) {
    ActionSpec sub = action.substitute(rep.substitution);
    Functional f = sub.functional(t);
    Functional ss = antibracket(t, f, f);
    res.record("(S,S) = 0 after substitution", ss.is_zero(), ss.is_zero() ? "" : ss.str(t));
    BrstRules sr = brst_from_action(t, sub);
    for (const auto& [field, rule] : sr) {
      LieExpr s2 = apply_s(t, apply_s(t, LieExpr::atom({field, false}), sr), sr);
      res.record("s^2 " + t.name(field) + " = 0 after substitution", s2.is_zero(), s2.is_zero() ? "" : s2.str(t));
    }
    Functional s0 = apply_s(t, f, sr);
    res.record("s S = 0 after substitution", s0.is_zero(), s0.is_zero() ? "" : s0.str(t));
  } else if (!rep.simple) {
    res.record("(S,S) = 0 after substitution", false, "theory is not simple");
  }
  return res;
}

CheckResult check_bv_identities(const TheorySpec& spec, const ActionSpec& action, std::uint64_t seed, int samples) {
  CheckResult res;
  res.name = "bv-identities";
  SymbolTable t(spec);
  ExprGen gen(t, seed, true);
  ExprGen fields(t, seed ^ 0x5bd1e995ull, false);

  int anti = 0, jacobi = 0, leibniz = 0, dd = 0, dleib = 0, dbr = 0;
  for (int i = 0; i < samples; ++i) {
    LieExpr x = gen.expr(2), y = gen.expr(2), z = gen.expr(1);
    int px = expr_parity(t, x), py = expr_parity(t, y), pz = expr_parity(t, z);
    if (!(bracket(t, x, y) + Poly(sgn_of(px & py)) * bracket(t, y, x)).is_zero()) ++anti;
    LieExpr jac = Poly(sgn_of(px & pz)) * bracket(t, bracket(t, x, y), z) +
                  Poly(sgn_of(py & px)) * bracket(t, bracket(t, y, z), x) +
                  Poly(sgn_of(pz & py)) * bracket(t, bracket(t, z, x), y);
    if (!jac.is_zero()) ++jacobi;
    LieExpr lhs = bracket(t, product(x, y), z);
    LieExpr rhs = product(x, bracket(t, y, z)) + Poly(sgn_of(py & pz)) * product(bracket(t, x, z), y);
    if (!(lhs - rhs).is_zero()) ++leibniz;
    if (!exterior_d(t, exterior_d(t, x)).is_zero()) ++dd;
    LieExpr dl = exterior_d(t, product(x, y)) - product(exterior_d(t, x), y) -
                 Poly(sgn_of(px)) * product(x, exterior_d(t, y));
    if (!dl.is_zero()) ++dleib;
    LieExpr db = exterior_d(t, bracket(t, x, y)) - bracket(t, exterior_d(t, x), y) -
                 Poly(sgn_of(px)) * bracket(t, x, exterior_d(t, y));
    if (!db.is_zero()) ++dbr;
  }
  auto count = [&](int bad) { return std::to_string(samples - bad) + "/" + std::to_string(samples); };
  res.record("graded antisymmetry of [,]", anti == 0, count(anti));
  res.record("graded Jacobi of [,]", jacobi == 0, count(jacobi));
  res.record("graded Leibniz [XY,Z] = X[Y,Z] + (-1)^{|Y||Z|}[X,Z]Y", leibniz == 0, count(leibniz));
  res.record("d^2 = 0", dd == 0, count(dd));
  res.record("d(XY) = dX Y + (-1)^{|X|} X dY", dleib == 0, count(dleib));
  res.record("d[X,Y] = [dX,Y] + (-1)^{|X|}[X,dY]", dbr == 0, count(dbr));

  // Trace of a graded commutator vanishes.
  int traces = 0, trace_bad = 0;
  while (traces < samples) {
    std::uniform_int_distribution<int> len(2, 6), side(0, 1);
    int n = len(gen.rng());
    TraceWord w;
    int fl = 0, fr = 0;
    for (int j = 0; j < n; ++j) {
      Atom a = gen.atom();
      Tag tag = Tag::Zero;
      if (t.form(a)) tag = side(gen.rng()) ? Tag::Left : Tag::Right;
      (tag == Tag::Left ? fl : fr) += t.form(a);
      w.push_back({a, tag});
    }
    if (fl != fr) continue;
    ++traces;
    std::uniform_int_distribution<int> cut(1, n - 1);
    int k = cut(gen.rng());
    TraceWord p(w.begin(), w.begin() + k), q(w.begin() + k, w.end()), qp = q;
    qp.insert(qp.end(), p.begin(), p.end());
    int pp = 0, pq = 0;
    for (const auto& a : p) pp ^= t.parity(a.atom);
    for (const auto& a : q) pq ^= t.parity(a.atom);
    Functional c = trace_word(t, w, Poly(1)) - trace_word(t, qp, Poly(sgn_of(pp & pq)));
    if (!c.is_zero()) ++trace_bad;
  }
  res.record("tr[X,Y] = 0", trace_bad == 0, count(trace_bad));

  // Antibracket graded antisymmetry on source-linear functionals.
  auto random_functional = [&]() {
    for (;;) {
      std::uniform_int_distribution<int> kind(0, 1);
      Functional f;
      if (kind(gen.rng())) {
        std::vector<int> sources;
        for (int s = 0; s < t.size(); ++s)
          if (t.is_source(s) && t.partner(s) >= 0) sources.push_back(s);
        std::uniform_int_distribution<std::size_t> pick(0, sources.size() - 1);
        int k = sources[pick(gen.rng())];
        LieExpr x = fields.expr(2);
        f = pairing(t, x, LieExpr::atom({k, false}));
      } else {
        f = pairing(t, fields.expr(2), fields.expr(2));
      }
      if (!f.is_zero()) return f;
    }
  };
  int ab_bad = 0;
  for (int i = 0; i < samples; ++i) {
    Functional f = random_functional(), g = random_functional();
    int pf = functional_parity(t, f), pg = functional_parity(t, g);
    Functional sum = antibracket(t, f, g) + Poly(sgn_of((pf ^ 1) & (pg ^ 1))) * antibracket(t, g, f);
    if (!sum.is_zero()) ++ab_bad;
  }
  res.record("(F,G) = -(-1)^{(|F|+1)(|G|+1)} (G,F)", ab_bad == 0, count(ab_bad));

  BrstRules rules = brst_from_action(t, action);
  if (!rules.empty()) {
    Functional s = action.functional(t);
    Functional ss = antibracket(t, s, s);
    Functional two_s = Poly(-2) * apply_s(t, s, rules);
    res.record("(S,S) = -2 s(S)", ss == two_s);

    SimpleTheoryReport rep = simple_theory_check(spec, master_constraints(t, action));
    BrstRules sub = rules;
    for (auto& [f, r] : sub) r = r.substitute(rep.substitution);
    int sd = 0, s2 = 0, sl = 0;
    for (int i = 0; i < samples; ++i) {
      LieExpr x = fields.expr(2), y = fields.expr(1);
      int px = expr_parity(t, x);
      if (!(apply_s(t, exterior_d(t, x), sub) + exterior_d(t, apply_s(t, x, sub))).is_zero()) ++sd;
      if (!apply_s(t, apply_s(t, x, sub), sub).is_zero()) ++s2;
      LieExpr l = apply_s(t, bracket(t, x, y), sub) - bracket(t, apply_s(t, x, sub), y) -
                  Poly(sgn_of(px)) * bracket(t, x, apply_s(t, y, sub));
      if (!l.is_zero()) ++sl;
    }
    res.record("s d + d s = 0", sd == 0, count(sd));
    res.record("s^2 = 0 on random expressions after substitution", s2 == 0, count(s2));
    res.record("s[X,Y] = [sX,Y] + (-1)^{|X|}[X,sY]", sl == 0, count(sl));
  }
  return res;
}

}  // namespace renhopf
