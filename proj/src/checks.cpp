#include "renhopf/green.hpp"

namespace renhopf {

namespace {

std::string gen_label(const TheorySpec& spec, ResidueRef r, int l) {
  return spec.residue_name(r) + " L=" + std::to_string(l);
}

}  // namespace

CheckResult check_hopf_axioms(HopfAlgebra& hopf, int lmax) {
  CheckResult res;
  res.name = "hopf-axioms";
  GraphTable& t = hopf.table();
  auto id_map = [](const Monomial& m) { return AlgebraElement::monomial(m); };
  auto counit = [](const Monomial& m) { return AlgebraElement(m.empty() ? 1 : 0); };
  auto anti = [&](const Monomial& m) { return hopf.antipode(m); };
  for (auto r : t.spec().all_residues())
    for (int l = 1; l <= lmax; ++l) {
      int coassoc = 0, cou = 0, ant = 0;
      const auto& gens = t.generators(r, l);
      for (int id : gens) {
        const Tensor& d = hopf.coproduct(id);
        if (hopf.coproduct_left(d) != hopf.coproduct_right(d)) ++coassoc;
        auto x = AlgebraElement::generator(id);
        if (convolve_apply(d, counit, id_map) != x || convolve_apply(d, id_map, counit) != x) ++cou;
        if (!convolve_apply(d, anti, id_map).is_zero() || !convolve_apply(d, id_map, anti).is_zero()) ++ant;
      }
      std::string detail = std::to_string(gens.size()) + " generators";
      if (coassoc + cou + ant > 0)
        detail += "; failures coassoc=" + std::to_string(coassoc) + " counit=" + std::to_string(cou) +
                  " antipode=" + std::to_string(ant);
      res.record(gen_label(t.spec(), r, l), coassoc + cou + ant == 0, detail);
    }
  return res;
}

CheckResult check_grading(GreenAlgebra& ga, int lmax) {
  CheckResult res;
  res.name = "grading";
  GraphTable& t = ga.table();
  const auto& spec = t.spec();
  for (auto r : spec.all_residues())
    for (int l = 1; l <= lmax; ++l) {
      int lemma = 0, graded = 0;
      const auto& gens = t.generators(r, l);
      for (int id : gens) {
        const auto& info = t.info(id);
        int sum = 0;
        for (int v = 0; v < spec.k(); ++v) sum += (spec.vertices[v].valence() - 2) * info.multidegree[v];
        if (sum != 2 * info.loop) ++lemma;
        for (const auto& [k, c] : ga.hopf().coproduct(id).terms()) {
          auto a = mono_multidegree(t, k.first), b = mono_multidegree(t, k.second);
          for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
          if (mono_loop(t, k.first) + mono_loop(t, k.second) != info.loop || a != info.multidegree) ++graded;
        }
      }
      std::string detail = std::to_string(gens.size()) + " generators";
      if (lemma + graded > 0)
        detail += "; lemma failures=" + std::to_string(lemma) + " grading failures=" + std::to_string(graded);
      res.record(gen_label(spec, r, l), lemma + graded == 0, detail);
    }
  return res;
}

}  // namespace renhopf
