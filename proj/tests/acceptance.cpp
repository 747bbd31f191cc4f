// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.

#include "oracles.hpp"
#include "renhopf/bv.hpp"
#include "renhopf/coaction.hpp"
#include "renhopf/green.hpp"
#include "renhopf/renorm.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

using namespace renhopf;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void require(const CheckResult& r, const std::string& what) {
    if (!r.passed()) {
      for (const auto& line : r.lines)
        if (line.find(": PASS") == std::string::npos) std::cerr << "  [" << what << "] " << r.name << " " << line << "\n";
    }
    require(r.passed(), what + " (" + status_str(r.status) + ")");
  }
};

struct Theory {
  std::string name;
  GraphTable table;
  HopfAlgebra hopf{table};
  std::map<int, std::unique_ptr<GreenAlgebra>> green;

  explicit Theory(const std::string& n) : name(n), table(load_theory(resolve_theory_path(n))) {}
  GreenAlgebra& ga(int lmax) {
    auto& g = green[lmax];
    if (!g) g = std::make_unique<GreenAlgebra>(hopf, lmax);
    return *g;
  }
};

Theory& theory(const std::string& name) {
  static std::map<std::string, std::unique_ptr<Theory>> cache;
  auto& t = cache[name];
  if (!t) t = std::make_unique<Theory>(name);
  return *t;
}

const std::array<const char*, 2> kSpecs = {"qed", "yang_mills"};

Outcome hopf_axioms() {
  Outcome o;
  for (const char* s : kSpecs) o.require(check_hopf_axioms(theory(s).hopf, 3), std::string(s) + " L<=3");
  return o;
}

Outcome lemma_one() {
  Outcome o;
  std::size_t graphs = 0;
  for (const char* s : kSpecs) {
    Theory& t = theory(s);
    const auto& spec = t.table.spec();
    for (ResidueRef r : spec.all_residues())
      for (int l = 1; l <= 3; ++l)
        for (int id : t.table.generators(r, l)) {
          // Recount from the vertex list: the residue itself is not counted in d_v.
          const auto& g = t.table.info(id).graph;
          int sum = 0;
          for (int v : g.vertices) sum += spec.vertices[v].valence() - 2;
          sum -= static_cast<int>(g.externals.size()) - 2;
          int loops = static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) + 1;
          o.require(sum == 2 * loops && loops == l, std::string(s) + " " + std::to_string(id));
          ++graphs;
        }
    o.require(check_grading(t.ga(3), 3), std::string(s) + " grading");
  }
  o.detail = o.ok ? std::to_string(graphs) + " graphs" : o.detail;
  return o;
}

Outcome cop_green() {
  Outcome o;
  for (const char* s : kSpecs) o.require(check_cop_green(theory(s).ga(2)), s);
  return o;
}

Outcome cop_y() {
  Outcome o;
  for (const char* s : kSpecs)
    o.require(check_cop_y(theory(s).ga(2), {Rational(1), Rational(-1), make_rational(1, 2)}), s);
  return o;
}

Outcome hopf_ideal() {
  Outcome o;
  std::size_t gens = 0;
  for (const char* s : kSpecs) {
    CheckResult r = check_hopf_ideal(theory(s).ga(2));
    o.require(r.status == Status::Pass, std::string(s) + " " + status_str(r.status));
    gens += QuotientNF(theory(s).ga(2)).generator_count();
  }
  if (o.ok) o.detail = std::to_string(gens) + " generators";
  return o;
}

Outcome quotient_x() {
  Outcome o;
  o.require(check_quotient_x(theory("yang_mills").ga(2)), "yang_mills");
  return o;
}

Outcome faa_di_bruno() {
  Outcome o;
  o.require(check_fdb(1, 50, 8), "pairing, inversion, generating series");
  // Lagrange inversion against Newton iteration on 50 random series.
  std::mt19937_64 rng(99);
  int bad = 0;
  for (int s = 0; s < 50; ++s) {
    FormalDiffeo f = random_diffeo(rng, 1, 8);
    oracle::Dense df(10), di(10);
    for (const auto& [n, c] : f.component(0).coefficients()) df[n[0]] = c;
    FormalDiffeo inv = invert(f);
    for (const auto& [n, c] : inv.component(0).coefficients()) di[n[0]] = c;
    if (di != oracle::newton_inverse(df, 9)) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " Newton mismatches");
  return o;
}

Outcome comodule() {
  Outcome o;
  o.require(check_comodule(theory("yang_mills").ga(2)), "yang_mills");
  return o;
}

Outcome semidirect() {
  Outcome o;
  o.require(check_semidirect(1, 20, 4), "D=4");
  return o;
}

Outcome birkhoff() {
  Outcome o;
  Theory& t = theory("yang_mills");
  ToyRules rules;
  o.require(check_birkhoff(t.hopf, 3, rules, 50), "suite");
  // Independent recursion over the reduced coproduct.
  LaurentCharacter gamma = toy_rules(t.hopf, 3, rules);
  Birkhoff bk(t.hopf, gamma);
  std::map<int, LaurentSeries> minus;
  auto mono = [&](const Monomial& m, bool counterterm) {
    LaurentSeries v(Poly(1));
    for (int id : m) v = v * (counterterm ? minus.at(id) : gamma.at(id));
    return v;
  };
  int bad = 0;
  auto ids = generators_up_to(t.table, 3);
  for (int id : ids) {
    LaurentSeries bar = gamma.at(id);
    const Tensor red = t.hopf.reduced_coproduct(id);
    for (const auto& [k, c] : red.terms()) bar += mono(k.first, true) * mono(k.second, false) * c;
    minus[id] = -bar.pole_part();
    if (!(minus[id] == bk.minus(id)) || !bk.plus(id).agrees(bar + minus[id])) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " of " + std::to_string(ids.size()) + " recursion mismatches");
  if (o.ok) o.detail = std::to_string(ids.size()) + " generators";
  return o;
}

Outcome rg() {
  Outcome o;
  o.require(check_rg(theory("yang_mills").ga(2), ToyRules{}), "yang_mills");
  return o;
}

Outcome master() {
  Outcome o;
  TheorySpec spec = theory("yang_mills").table.spec();
  SymbolTable t(spec);
  ActionSpec action = load_action(t, resolve_action_path(resolve_theory_path("yang_mills")));
  o.require(check_master(spec, action), "suite");
  SimpleTheoryReport simple = simple_theory_check(spec, master_constraints(t, action));
  Poly g = Poly::var("lA3");
  o.require(simple.simple && simple.fundamental == "lA3", "simple theory with g = lA3");
  o.require(simple.substitution.at(var_id("lA4")) == g * g, "lA4 = g^2");
  for (const char* c : {"lwbarAw", "lAwKA", "lwwKw"}) o.require(simple.substitution.at(var_id(c)) == g, c);
  auto dec = decompose_s2_gauge(t, brst_from_action(t, action), "A", "w");
  Poly lK = Poly::var("lAwKA"), lw = Poly::var("lwwKw");
  o.require(dec.exact && dec.first == lK - lw &&
                dec.second == (lK * lK - lK * lw) * make_rational(1, 2),
            "s^2(A) two-term form");
  ActionSpec sub = action.substitute(simple.substitution);
  o.require(antibracket(t, sub.functional(t), sub.functional(t)).is_zero(), "(S,S) = 0");
  BrstRules rules = brst_from_action(t, sub);
  for (const auto& [f, img] : rules)
    o.require(apply_s(t, img, rules).is_zero(), "s^2 " + t.name(f) + " = 0");
  return o;
}

Outcome slavnov_taylor() {
  Outcome o;
  CheckResult r = check_st_identities(theory("yang_mills").ga(2));
  o.require(r, "yang_mills");
  int ghost = 0;
  for (const auto& line : r.lines)
    if (line.rfind("G^wbarAw = G^AwKA", 0) == 0 && line.find(": PASS") != std::string::npos) ++ghost;
  o.require(ghost == 3, "G^ghoglu = G^gluBRST at L = 0, 1, 2");
  return o;
}

std::string run_report() {
  std::string cmd = std::string(RENHOPF_CLI_PATH) + " --theory yang_mills --seed 1 report-all";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  pclose(p);
  return out;
}

Outcome determinism() {
  Outcome o;
  std::string a = run_report(), b = run_report();
  o.require(!a.empty(), "report produced");
  o.require(a == b, "byte-identical");
  if (o.ok) o.detail = std::to_string(a.size()) + " bytes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Hopf axioms, QED and YM, L<=3", hopf_axioms},
      {"Lemma 1 on all graphs, L<=3", lemma_one},
      {"coproduct on Green's functions, L<=2", cop_green},
      {"coproduct on Y_v^alpha, alpha in {1,-1,1/2}, L<=2", cop_y},
      {"J' is a Hopf ideal, grade <= 2", hopf_ideal},
      {"Delta(X) in H_R/J', YM, l<=2", quotient_x},
      {"Faa di Bruno pairing, inversion, generating series", faa_di_bruno},
      {"comodule axiom, YM", comodule},
      {"semidirect product structure, D=4", semidirect},
      {"Birkhoff decomposition, YM, L<=3", birkhoff},
      {"renormalization group, YM, L<=2", rg},
      {"BV master equation for YM", master},
      {"Slavnov-Taylor identities, YM, L<=2", slavnov_taylor},
      {"report-all determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << "criterion " << (i + 1) << ": " << (o.ok ? "PASS" : "FAIL") << " " << criteria[i].first;
    if (!o.detail.empty()) line << " (" << o.detail << ")";
    line.precision(1);
    line << std::fixed << " [" << secs << " s]";
    std::cout << line.str() << std::endl;
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
