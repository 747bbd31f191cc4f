#include "renhopf/cli.hpp"

#include "renhopf/bv.hpp"
#include "renhopf/coaction.hpp"
#include "renhopf/green.hpp"
#include "renhopf/renorm.hpp"

#include <filesystem>
#include <memory>

namespace renhopf {

namespace {

TheorySpec load_config_theory(const RunConfig& cfg) {
  std::string path = resolve_theory_path(cfg.theory);
  if (!std::filesystem::exists(path)) throw UsageError("theory file not found: " + cfg.theory);
  TheorySpec spec;
  try {
    spec = load_theory(path);
  } catch (const std::exception& e) {
    throw UsageError(std::string("invalid theory file: ") + e.what());
  }
  if (cfg.massless) spec.massless = *cfg.massless;
  return spec;
}

// Owns the table, the Hopf algebra and (lazily) the Green's functions.
struct Session {
  GraphTable table;
  HopfAlgebra hopf;
  std::unique_ptr<GreenAlgebra> green;

  explicit Session(TheorySpec spec) : table(std::move(spec)), hopf(table) {}
  GreenAlgebra& ga(int lmax) {
    if (!green || green->lmax() != lmax) green = std::make_unique<GreenAlgebra>(hopf, lmax);
    return *green;
  }
};

ToyRules rules_of(const RunConfig& cfg) {
  ToyRules r;
  r.seed = cfg.seed;
  r.zmax = cfg.zmax;
  return r;
}

// Suites that do not depend on the loop truncation.
bool loop_free(const std::string& suite) { return suite == "fdb" || suite == "master"; }

int lmax_for(const RunConfig& cfg, const std::string& suite, const TheorySpec& spec) {
  int l = cfg.lmax ? *cfg.lmax : default_lmax(suite, spec.loop_cutoff);
  if (l < 0) throw UsageError("--Lmax must be non-negative");
  return l;
}

int shown_lmax(const RunConfig& cfg, const std::string& suite, const TheorySpec& spec) {
  return loop_free(suite) ? -1 : lmax_for(cfg, suite, spec);
}

ActionSpec load_config_action(const RunConfig& cfg, const TheorySpec& spec) {
  std::string path = resolve_action_path(resolve_theory_path(cfg.theory));
  if (path.empty()) throw UsageError("no action file next to theory " + cfg.theory);
  try {
    return load_action(SymbolTable(spec), path);
  } catch (const std::exception& e) {
    throw UsageError(std::string("invalid action file: ") + e.what());
  }
}

CheckResult run_in(Session& s, const RunConfig& cfg, const std::string& suite) {
  const TheorySpec& spec = s.table.spec();
  const int lmax = lmax_for(cfg, suite, spec);
  CheckResult res;
  res.name = suite;
  auto add = [&](const CheckResult& r) { res.merge(r); };
  if (suite == "coassoc") {
    add(check_hopf_axioms(s.hopf, lmax));
  } else if (suite == "grading") {
    add(check_grading(s.ga(lmax), lmax));
  } else if (suite == "cop-green") {
    add(check_cop_green(s.ga(lmax)));
  } else if (suite == "cop-y") {
    add(check_cop_y(s.ga(lmax), {Rational(1), Rational(-1), make_rational(1, 2)}));
  } else if (suite == "hopf-ideal") {
    add(check_hopf_ideal(s.ga(lmax)));
  } else if (suite == "quotient-x") {
    add(check_quotient_x(s.ga(lmax)));
  } else if (suite == "fdb") {
    add(check_fdb(cfg.seed, 50, cfg.order > 0 ? cfg.order : 8));
    add(check_semidirect(cfg.seed, 20, cfg.order > 0 ? cfg.order : 4));
  } else if (suite == "comodule") {
    add(check_comodule(s.ga(lmax)));
    add(check_simple_coaction(s.ga(lmax)));
    add(check_character_diffeo(s.ga(lmax), cfg.seed, cfg.order));
  } else if (suite == "birkhoff") {
    add(check_birkhoff(s.hopf, lmax, rules_of(cfg)));
  } else if (suite == "rg") {
    add(check_rg(s.ga(lmax), rules_of(cfg)));
  } else if (suite == "master") {
    ActionSpec action = load_config_action(cfg, spec);
    add(check_master(spec, action));
    add(check_bv_identities(spec, action, cfg.seed));
    add(check_toy_bv(cfg.seed));
  } else if (suite == "st") {
    add(check_st_identities(s.ga(lmax)));
  } else {
    throw UsageError("unknown suite: " + suite);
  }
  return res;
}

void print_header(const RunConfig& cfg, const std::string& command, const TheorySpec& spec, std::ostream& out) {
  if (cfg.format == Format::Records) {
    out << "record: " << command << "\n";
    out << "theory: " << spec.name << "\n";
    out << "seed: " << cfg.seed << "\n";
  } else {
    out << "== " << command << " [" << spec.name << ", seed " << cfg.seed << "]\n";
  }
}

int finish(const RunConfig& cfg, Status st, std::ostream& out) {
  if (cfg.format == Format::Records)
    out << "status: " << status_str(st) << "\n\n";
  else
    out << "result: " << status_str(st) << "\n\n";
  return exit_code(st);
}

Status combine(Status a, Status b) {
  if (a == Status::Fail || b == Status::Fail) return Status::Fail;
  if (a == Status::Undecidable || b == Status::Undecidable) return Status::Undecidable;
  return Status::Pass;
}

void print_check(const RunConfig& cfg, const CheckResult& r, int lmax, std::ostream& out) {
  if (cfg.format == Format::Records) {
    out << "suite: " << r.name << "\n";
    if (lmax >= 0) out << "lmax: " << lmax << "\n";
  } else {
    out << "-- " << r.name;
    if (lmax >= 0) out << " (Lmax " << lmax << ")";
    out << "\n";
  }
  print_result(cfg, r, out);
}

void print_birkhoff_table(Session& s, const RunConfig& cfg, int lmax, std::ostream& out) {
  const bool rec = cfg.format == Format::Records;
  for (const BirkhoffRow& row : birkhoff_table(s.hopf, lmax, rules_of(cfg))) {
    const auto& info = s.table.info(row.id);
    std::string g = graph_to_string(s.table.spec(), info.graph);
    auto series = [&](const char* key, const LaurentSeries& x) {
      std::string text = x.str();
      if (!rec) out << "  " << key << ":\n";
      std::size_t start = 0;
      while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        out << (rec ? std::string(key) + ": " : "    ") << text.substr(start, end - start) << "\n";
        start = end + 1;
      }
    };
    if (rec) {
      out << "graph: " << g << "\n";
      out << "loop: " << info.loop << "\n";
    } else {
      out << "graph " << g << " (L=" << info.loop << ")\n";
    }
    series("gamma", row.gamma);
    series("gamma_minus", row.minus);
    series("gamma_plus", row.plus);
    if (rec)
      out << "mu_independent: " << (row.mu_independent ? "yes" : "no") << "\n";
    else
      out << "  d/dmu gamma_-: " << (row.mu_independent ? "0" : "nonzero") << "\n";
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"coassoc", "grading", "cop-green", "cop-y",
                                                 "hopf-ideal", "quotient-x", "fdb", "comodule",
                                                 "birkhoff", "rg", "master", "st"};
  return names;
}

int default_lmax(const std::string& suite, int loop_cutoff) {
  if (suite == "coassoc" || suite == "grading" || suite == "birkhoff") return std::min(3, loop_cutoff);
  return std::min(2, loop_cutoff);
}

CheckResult run_suite(const RunConfig& cfg, const std::string& suite) {
  Session s(load_config_theory(cfg));
  return run_in(s, cfg, suite);
}

void print_result(const RunConfig& cfg, const CheckResult& r, std::ostream& out) {
  for (const auto& line : r.lines) {
    if (cfg.format == Format::Records)
      out << "item: " << line << "\n";
    else
      out << "  " << line << "\n";
  }
}

int cmd_enumerate(const RunConfig& cfg, const std::string& residue, std::optional<int> loops, std::ostream& out) {
  Session s(load_config_theory(cfg));
  const TheorySpec& spec = s.table.spec();
  std::vector<ResidueRef> residues;
  if (residue.empty()) {
    residues = spec.all_residues();
  } else {
    auto r = spec.residue_by_name(residue);
    if (!r) throw UsageError("unknown residue: " + residue);
    residues.push_back(*r);
  }
  int lo = loops ? *loops : 1;
  int hi = loops ? *loops : lmax_for(cfg, "enumerate", spec);
  if (lo < 0) throw UsageError("loop number must be non-negative");
  print_header(cfg, "enumerate", spec, out);
  const bool rec = cfg.format == Format::Records;
  for (ResidueRef r : residues) {
    for (int l = lo; l <= hi; ++l) {
      const auto& ids = s.table.generators(r, l);
      if (rec)
        out << "residue: " << spec.residue_name(r) << "\nloop: " << l << "\ncount: " << ids.size() << "\n";
      else
        out << spec.residue_name(r) << " L=" << l << ": " << ids.size() << " graphs\n";
      for (int id : ids) {
        const auto& info = s.table.info(id);
        std::string md;
        for (std::size_t i = 0; i < info.multidegree.size(); ++i) md += (i ? "," : "") + std::to_string(info.multidegree[i]);
        if (rec)
          out << "graph: " << graph_to_string(spec, info.graph) << " | sym " << info.sym << " | multidegree "
              << md << " | weight2 " << info.weight2 << "\n";
        else
          out << "  " << graph_to_string(spec, info.graph) << "  Sym=" << info.sym << "  d=(" << md
              << ")  w2=" << info.weight2 << "\n";
      }
    }
  }
  return finish(cfg, Status::Pass, out);
}

int cmd_check(const RunConfig& cfg, const std::string& suite, std::ostream& out) {
  Session s(load_config_theory(cfg));
  const TheorySpec& spec = s.table.spec();
  CheckResult r = run_in(s, cfg, suite);
  print_header(cfg, "check", spec, out);
  print_check(cfg, r, shown_lmax(cfg, suite, spec), out);
  return finish(cfg, r.status, out);
}

int cmd_birkhoff(const RunConfig& cfg, std::ostream& out) {
  Session s(load_config_theory(cfg));
  const TheorySpec& spec = s.table.spec();
  const int lmax = lmax_for(cfg, "birkhoff", spec);
  print_header(cfg, "birkhoff", spec, out);
  print_birkhoff_table(s, cfg, lmax, out);
  CheckResult r = run_in(s, cfg, "birkhoff");
  print_check(cfg, r, lmax, out);
  return finish(cfg, r.status, out);
}

int cmd_master(const RunConfig& cfg, std::ostream& out) {
  TheorySpec spec = load_config_theory(cfg);
  ActionSpec action = load_config_action(cfg, spec);
  SymbolTable t(spec);
  print_header(cfg, "master", spec, out);
  const bool rec = cfg.format == Format::Records;
  for (const Poly& p : master_constraints(t, action)) out << (rec ? "constraint: " : "  constraint ") << p.str() << " = 0\n";
  SimpleTheoryReport simple = simple_theory_check(spec, master_constraints(t, action));
  for (const auto& [v, p] : simple.substitution)
    out << (rec ? "substitution: " : "  ") << var_name(v) << " = " << p.str() << "\n";
  CheckResult r = check_master(spec, action);
  print_check(cfg, r, -1, out);
  return finish(cfg, r.status, out);
}

int cmd_report_all(const RunConfig& cfg, std::ostream& out) {
  Session s(load_config_theory(cfg));
  const TheorySpec& spec = s.table.spec();
  print_header(cfg, "report-all", spec, out);
  Status total = Status::Pass;
  for (const auto& suite : suite_names()) {
    if (suite == "master" && resolve_action_path(resolve_theory_path(cfg.theory)).empty()) {
      out << (cfg.format == Format::Records ? "suite: master\nskipped: no action file\n" : "-- master skipped: no action file\n");
      continue;
    }
    CheckResult r = run_in(s, cfg, suite);
    print_check(cfg, r, shown_lmax(cfg, suite, spec), out);
    total = combine(total, r.status);
  }
  print_birkhoff_table(s, cfg, lmax_for(cfg, "birkhoff", spec), out);
  return finish(cfg, total, out);
}

}  // namespace renhopf
