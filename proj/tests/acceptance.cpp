// One PASS/FAIL line per acceptance criterion; exits 1 when any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "compcat/comprehension.hpp"
#include "compcat/endoalg.hpp"
#include "compcat/fibration.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace compcat;

namespace {

struct Outcome {
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++failed;
  }
  std::size_t failed = 0;
};

std::string first_violation(const LawReport& r) {
  if (r.passed()) return "";
  return " [" + r.violations().front().law + ": " + r.violations().front().witness + "]";
}

// The inverse of f found by scanning every morphism, or no_mor.
Mor raw_inverse(const Category& c, Mor f) {
  for (Mor g : oracle::raw_hom(c, c.cod(f), c.dom(f)))
    if (c.compose(g, f) == c.identity(c.dom(f)) && c.compose(f, g) == c.identity(c.cod(f))) return g;
  return no_mor;
}

// Every assignment that differs from `base` in exactly one component.
std::vector<std::vector<Mor>> single_perturbations(const Functor& f, const Functor& g,
                                                   const std::vector<Mor>& base) {
  std::vector<std::vector<Mor>> out;
  for (Obj x = 0; x < base.size(); ++x) {
    for (Mor m : oracle::raw_hom(*f.target(), f.obj(x), g.obj(x))) {
      if (m == base[x]) continue;
      auto comps = base;
      comps[x] = m;
      out.push_back(std::move(comps));
    }
  }
  return out;
}

void criterion_1(Outcome& o) {
  std::size_t morphisms = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = generate_category(seed, 3, 8);
    morphisms += c->morphism_count();
    const auto tag = "seed " + std::to_string(seed);
    const auto v = validate_category(*c);
    o.expect(v.passed(), tag + " validate_category" + first_violation(v));
    o.expect(oracle::is_category(*c), tag + " brute-force category laws");
    const auto adj = verify_cod_id_dom(c);
    o.expect(adj.passed(), tag + " cod -| id -| dom" + first_violation(adj));
  }
  o.summary = "100 generated categories, " + std::to_string(morphisms) + " morphisms";
}

void criterion_2(Outcome& o) {
  std::size_t squares = 0;
  for (const std::vector<int> u : {std::vector<int>{0, 1}, std::vector<int>{0, 1, 2}}) {
    const auto pred = pred_instance(u);
    const auto tag = "pred|" + std::to_string(u.size()) + "| ";
    const auto sd = section_data(pred);
    const auto arrows = arrow_category(pred.base);
    const Category& b = *pred.base;
    const Category& e = *pred.total;

    const auto adj = check_adjunction(pred.adj);
    o.expect(adj.passed(), tag + "adjunction" + first_violation(adj));
    const auto bij = check_hom_bijection(pred.adj);
    o.expect(bij.passed(), tag + "hom bijection" + first_violation(bij));
    for (Obj a = 0; a < b.object_count(); ++a)
      for (Obj x = 0; x < e.object_count(); ++x)
        o.expect(oracle::raw_hom(e, pred.section.obj(a), x).size() ==
                     oracle::raw_hom(b, a, pred.structure.obj(x)).size(),
                 tag + "hom cardinality at " + b.object_label(a) + ", " + e.object_label(x));

    const auto cs = derive_comprehension_from_section(sd, arrows);
    const auto laws = check_comprehension(cs, arrows);
    o.expect(laws.passed(), tag + "comprehension" + first_violation(laws));
    // ι_X is the inclusion of the predicate and every square commutes.
    for (Obj x = 0; x < e.object_count(); ++x) {
      const auto map = element_map(pred, cs.iota.at(x));
      for (int p : positions(pred.total_structure[x]))
        o.expect(map[p] == p, tag + "iota is an inclusion at " + e.object_label(x));
    }
    for (Mor g = 0; g < e.morphism_count(); ++g) {
      const Obj x = e.dom(g);
      const Obj y = e.cod(g);
      o.expect(b.compose(pred.proj.mor(g), cs.iota.at(x)) == b.compose(cs.iota.at(y), cs.comp.mor(g)),
               tag + "square at " + e.morphism_label(g));
      const Mor sq = cs.path.mor(g);
      o.expect(arrows.top(sq) == cs.comp.mor(g) && arrows.bottom(sq) == pred.proj.mor(g),
               tag + "path square at " + e.morphism_label(g));
      ++squares;
    }

    const auto cls = classify_notion(pred.proj, sd, cs);
    for (const auto* flag : {&cls.jacobs, &cls.d_category, &cls.tc_opfibration, &cls.lawvere})
      o.expect(flag->verdict == Verdict::yes, tag + "classification flag not true");
  }
  o.summary = "PRED{0,1} and PRED{0,1,2}, " + std::to_string(squares) + " squares, four notions";
}

void criterion_3(Outcome& o) {
  std::size_t squares = 0;
  for (const std::vector<int> u : {std::vector<int>{0, 1}, std::vector<int>{0, 1, 2}}) {
    const auto rel = rel_instance(u);
    const int n = static_cast<int>(u.size());
    const auto tag = "rel|" + std::to_string(n) + "| ";
    const auto arrows = arrow_category(rel.base);
    const auto qs = derive_quotient_from_section(section_data(rel), arrows);
    const Category& e = *rel.total;

    const auto adj = check_adjunction(rel.adj);
    o.expect(adj.passed(), tag + "adjunction" + first_violation(adj));

    std::vector<std::vector<int>> minima(e.object_count());
    for (Obj x = 0; x < e.object_count(); ++x) {
      minima[x] = oracle::closure_minima(rel.total_carrier[x], rel.total_structure[x], n);
      Subset expected = 0;
      for (int m : minima[x])
        if (m >= 0) expected |= 1u << m;
      o.expect(rel.base_carrier[qs.quot.obj(x)] == expected, tag + "quotient of " + e.object_label(x));
      const auto pi = element_map(rel, qs.pi.at(x));
      for (int p : positions(rel.total_carrier[x]))
        o.expect(pi[p] == minima[x][p], tag + "pi at " + e.object_label(x));
    }
    for (Mor g = 0; g < e.morphism_count(); ++g) {
      const auto f = element_map(rel, rel.proj.mor(g));
      const auto q = element_map(rel, qs.quot.mor(g));
      const Obj x = e.dom(g);
      const Obj y = e.cod(g);
      for (int p : positions(rel.total_carrier[x]))
        o.expect(minima[y][f[p]] == q[minima[x][p]], tag + "quotient square at " + e.morphism_label(g));
      ++squares;
    }
  }
  o.summary = "REL{0,1} and REL{0,1,2}, " + std::to_string(squares) + " squares on elements";
}

void criterion_4(Outcome& o) {
  std::size_t pairs = 0;
  std::size_t lifted = 0;
  std::size_t refused_phi = 0;
  for (const std::vector<int> u : {std::vector<int>{0, 1}, std::vector<int>{0, 1, 2}}) {
    const auto pred = pred_instance(u);
    const auto tag = "pred|" + std::to_string(u.size()) + "| ";
    const auto sd = section_data(pred);
    const auto arrows = arrow_category(pred.base);
    const auto cs = derive_comprehension_from_section(sd, arrows);
    const LiftData data = section_lift_data(sd, cs.iota);
    const Functor& phi_from = data.phi.source();
    const Functor& phi_to = data.phi.target();
    const Functor& psi_from = data.psi.source();
    const Functor& psi_to = data.psi.target();
    const Category& b = *pred.base;

    const auto natural_phis = oracle::natural_transformations(phi_from, phi_to);
    std::vector<std::vector<Mor>> psis = single_perturbations(psi_from, psi_to, cs.iota.components());
    if (u.size() == 2) {
      for (auto& comps : oracle::natural_transformations(psi_from, psi_to)) psis.push_back(comps);
    } else {
      psis.push_back(cs.iota.components());
    }

    const auto run = [&](const std::vector<Mor>& phi, const std::vector<Mor>& psi) {
      LiftData d = data;
      d.phi = NatTrans(phi_from, phi_to, phi);
      d.psi = NatTrans(psi_from, psi_to, psi);
      std::vector<Mor> phi_inv(phi.size());
      bool invertible = true;
      for (Obj a = 0; a < phi.size(); ++a) {
        phi_inv[a] = raw_inverse(b, phi[a]);
        invertible = invertible && phi_inv[a] != no_mor;
      }
      bool transposes = false;
      if (invertible && oracle::is_natural(psi_from, psi_to, psi)) {
        const NatTrans chi = mate(MateSquare{d.lower.proj, d.upper.proj, d.base, d.total, d.psi});
        transposes = chi.components() == phi_inv;
      }
      const auto expected = !invertible ? LiftDiagnosis::phi_not_invertible
                            : transposes ? LiftDiagnosis::lifted
                                         : LiftDiagnosis::psi_not_mate;
      const auto result = lift_adjunction(d);
      const bool direct = check_arrow_adjunction(d).passed();
      o.expect(result.diagnosis == expected, tag + "diagnosis " + to_string(result.diagnosis) +
                                                 " where " + to_string(expected) + " was expected");
      o.expect(direct == (result.diagnosis == LiftDiagnosis::lifted),
               tag + "direct check disagrees with the lift");
      if (result.diagnosis == LiftDiagnosis::lifted) {
        ++lifted;
        o.expect(psi == cs.iota.components(), tag + "lifted with a psi other than iota");
      }
      ++pairs;
    };

    for (const auto& phi : natural_phis)
      for (const auto& psi : psis) run(phi, psi);

    // A perturbed ι is never the transpose of φ⁻¹.
    for (const auto& psi : single_perturbations(psi_from, psi_to, cs.iota.components())) {
      LiftData d = data;
      d.psi = NatTrans(psi_from, psi_to, psi);
      o.expect(lift_adjunction(d).diagnosis == LiftDiagnosis::psi_not_mate,
               tag + "perturbed iota not diagnosed");
    }
    // A non-natural φ is not the data of a lax morphism at all.
    for (const auto& phi : single_perturbations(phi_from, phi_to, data.phi.components())) {
      if (oracle::is_natural(phi_from, phi_to, phi)) continue;
      LiftData d = data;
      d.phi = NatTrans(phi_from, phi_to, phi);
      bool refused = false;
      try {
        lift_adjunction(d);
      } catch (const StructuralError&) {
        refused = true;
      }
      o.expect(refused, tag + "non-natural phi accepted");
      o.expect(!check_arrow_adjunction(d).passed(), tag + "non-natural phi passes the direct check");
      ++refused_phi;
    }
  }
  o.expect(lifted == 2, "expected exactly one lift per universe, got " + std::to_string(lifted));
  o.summary = std::to_string(pairs) + " (phi, psi) pairs, " + std::to_string(lifted) + " lifted, " +
              std::to_string(refused_phi) + " non-natural phi refused";
}

void criterion_5(Outcome& o) {
  std::size_t laws = 0;
  for (const std::vector<int> u : {std::vector<int>{0, 1}, std::vector<int>{0, 1, 2}}) {
    const auto pred = pred_instance(u);
    const auto tag = "pred|" + std::to_string(u.size()) + "| ";
    const auto s = build_image_structure(pred.proj, pred.section);
    o.expect(s.has_value(), tag + "no opcartesian lifts");
    if (!s) continue;
    const auto coherence = check_image_coherence(*s);
    o.expect(coherence.passed(), tag + "coherence" + first_violation(coherence));
    const auto arrows = arrow_category(pred.base);
    const Functor image = image_functor(*s, arrows);
    // Exhaustive functor laws are out of reach on the larger arrow category.
    if (u.size() == 2) {
      const auto valid = validate_functor(image);
      o.expect(valid.passed(), tag + "image functor" + first_violation(valid));
    }
    o.expect(compose(pred.proj, image) == arrows.cod(), tag + "p . image != cod");
    o.expect(compose(image, arrows.id()) == pred.section, tag + "image . id != section");

    const Obj full = pred.base_object(pred.base_carrier.back());
    const Obj star = pred.section.obj(full);
    Mor swap = no_mor;
    for (Mor g : oracle::raw_hom(*pred.total, star, star)) {
      const auto map = total_element_map(pred, g);
      if (map[0] == 1 && map[1] == 0) swap = g;
    }
    o.expect(swap != no_mor, tag + "no swap on the full predicate");
    if (swap == no_mor) continue;
    ImageStructure broken = *s;
    broken.lift[pred.base->identity(full)] = swap;
    const auto caught = check_image_coherence(broken);
    o.expect(caught.has("image.identity.lambda"), tag + "corrupted identity lift not detected");
    laws += pred.base->morphism_count();
  }
  o.summary = "PRED{0,1} and PRED{0,1,2}, " + std::to_string(laws) + " lifts, corruption detected, functor laws on PRED{0,1}";
}

void criterion_6(Outcome& o) {
  const auto pred = pred_instance({0, 1});
  const auto arrows = arrow_category(pred.base);
  const auto sd = section_data(pred);
  const auto s = build_image_structure(pred.proj, pred.section);
  o.expect(s.has_value(), "no opcartesian lifts");
  if (!s) return;
  const auto ia = comprehension_with_image(*s, sd, arrows);
  const auto laws = check_comprehension_with_image(ia, *s, arrows);
  o.expect(laws.passed(), "image -| P" + first_violation(laws));
  const auto bij = check_hom_bijection(ia.adj);
  o.expect(bij.passed(), "hom bijection" + first_violation(bij));
  const Category& e = *pred.total;
  const Category& b2 = *arrows.arrows();
  for (Obj u = 0; u < b2.object_count(); ++u)
    for (Obj x = 0; x < e.object_count(); ++x)
      o.expect(oracle::raw_hom(e, ia.image.obj(u), x).size() ==
                   oracle::raw_hom(b2, u, ia.path.obj(x)).size(),
               "hom cardinality at " + b2.object_label(u) + ", " + e.object_label(x));
  o.summary = "PRED{0,1}, " + std::to_string(b2.object_count() * e.object_count()) + " hom pairs";
}

void criterion_7(Outcome& o) {
  const std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}};
  const auto pow = powerset_instance({0, 1, 2}, {0}, edges);
  const auto sd = section_data(pow);
  const auto dp = distributivity_pair(*pow.endo);
  const auto crit = check_lifting_criterion(sd, dp);
  o.expect(crit.report.passed(), "lifting criterion" + first_violation(crit.report));
  if (!crit.report.passed()) return;
  const auto lc = lift_comprehension_to_algebras(sd, dp);
  const auto adj = check_adjunction(lc.lifted.adj);
  o.expect(adj.passed(), "lifted adjunction" + first_violation(adj));
  const auto endo = check_endo_adjunction(lc.section_morphism, lc.comp_morphism, sd.adj.unit, sd.adj.counit);
  o.expect(endo.passed(), "endo adjunction" + first_violation(endo));

  const auto base_alg = algebra_category(dp.base_endo, Direction::algebra);
  const auto mu = extreme_object(*base_alg.alg, Extremity::initial);
  const Subset lfp = fixture::kleene_least(fixture::mask_of({0}), edges);
  o.expect(mu.object.has_value(), "no initial algebra");
  if (mu.object)
    o.expect(pow.base_carrier[base_alg.carrier[*mu.object]] == lfp, "initial algebra is not the least fixed point");

  const auto v = check_transport(sd, dp, Direction::algebra);
  o.expect(v.verdict == Verdict::yes, std::string("transport verdict ") + to_string(v.verdict));
  o.expect(v.mu_base == mu.object, "transport found another initial algebra");
  const auto dual = check_dual_transport(sd, dp);
  o.expect(dual.verdict == Verdict::yes, std::string("dual transport verdict ") + to_string(dual.verdict));
  o.summary = "POW{0,1,2}, base {0}, edges 0-1 1-2, mu F = " + base_alg.alg->object_label(*mu.object);
}

void criterion_8(Outcome& o) {
  struct Case {
    std::string name;
    SectionData sd;
    ArrowBundle arrows;
  };
  std::vector<Case> cases;
  {
    const auto pred = pred_instance({0});
    cases.push_back({"pred{0}", section_data(pred), arrow_category(pred.base)});
  }
  std::vector<std::pair<std::string, CategoryPtr>> bases{{"walk", walking_arrow()},
                                                         {"idempotent", fixture::idempotent()},
                                                         {"iso", fixture::iso_pair()}};
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    bases.emplace_back("seed " + std::to_string(seed), generate_category(seed, 3, 5));
  for (const auto& [name, b] : bases) {
    auto paths = path_adjunctions(b);
    if (paths.bundle.arrows()->morphism_count() > 30) continue;
    SectionData sd{paths.bundle.cod(), paths.bundle.id(), paths.id_dom, StructureSide::comprehension};
    cases.push_back({"cod over " + name, std::move(sd), arrow_category(b)});
  }
  std::size_t candidates = 0;
  for (const auto& c : cases) {
    const auto cs = derive_comprehension_from_section(c.sd, c.arrows);
    const auto count = oracle::count_factorizations(c.arrows, cs.iota);
    o.expect(count.matching_alpha == 1, c.name + ": factorizations of iota " + std::to_string(count.matching_alpha));
    o.expect(c.arrows.factorize(cs.iota).obj_map() == cs.iota.components(), c.name + ": factorize disagrees");
    std::size_t lifted = 0;
    for (const auto& comps : oracle::natural_transformations(cs.comp, c.sd.proj)) {
      const NatTrans cand(cs.comp, c.sd.proj, comps);
      if (lift_adjunction(section_lift_data(c.sd, cand)).diagnosis == LiftDiagnosis::lifted) {
        ++lifted;
        o.expect(comps == cs.iota.components(), c.name + ": a candidate other than iota lifts");
      }
      ++candidates;
    }
    o.expect(lifted == 1, c.name + ": " + std::to_string(lifted) + " lifting candidates");
  }
  o.summary = std::to_string(cases.size()) + " fixtures, " + std::to_string(candidates) + " natural candidates";
}

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "generated categories are categories, cod -| id -| dom", 10, criterion_1},
      {2, "PRED comprehension squares and classification", 30, criterion_2},
      {3, "REL quotients against the closure oracle", 60, criterion_3},
      {4, "lifting diagnosis agrees with the direct check", 0, criterion_4},
      {5, "PRED image coherence and the image functor", 0, criterion_5},
      {6, "PRED comprehension with image", 0, criterion_6},
      {7, "POW algebra lifting and initial algebra transport", 5, criterion_7},
      {8, "uniqueness of factorizations and of iota", 0, criterion_8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0)
      o.expect(seconds < c.limit_seconds, "took longer than " + std::to_string(c.limit_seconds) + " s");
    const bool ok = o.failed == 0;
    failed += ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%.2f s) %s\n", ok ? "PASS" : "FAIL", c.number, c.title, seconds,
                o.summary.c_str());
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    if (o.failed > o.failures.size()) std::printf("    ... %zu failures in total\n", o.failed);
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
