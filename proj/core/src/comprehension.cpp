#include "compcat/comprehension.hpp"

#include <algorithm>
#include <unordered_map>

namespace compcat {

namespace {

constexpr std::size_t witness_cap = 8;

void require_natural(const NatTrans& a, const char* what) {
  const LawReport r = validate_nat_trans(a);
  if (!r.passed()) {
    const Violation& v = r.violations().front();
    throw StructuralError(std::string(what) + ": " + v.law + " at " + v.witness);
  }
}

void require_strict_section(const Functor& p, const Functor& section, const char* what) {
  if (!same_category(section.source(), p.target()) || !same_category(section.target(), p.source()))
    throw StructuralError(std::string(what) + ": section has the wrong endpoints");
  if (!(compose(p, section) == identity_functor(p.target())))
    throw StructuralError(std::string(what) + ": p∘⋆ is not the identity");
}

void require_adjunction(const Adjunction& a, const char* what) {
  if (!check_adjunction(a).passed())
    throw StructuralError(std::string(what) + ": adjunction fails its laws");
}

bool same_components(const NatTrans& a, const NatTrans& b) {
  return a.components() == b.components();
}

void add_witness(NotionFlag& flag, std::string w) {
  if (flag.witnesses.size() < witness_cap) flag.witnesses.push_back(std::move(w));
}

void copy_witnesses(NotionFlag& flag, const std::vector<std::string>& ws, const std::string& tag) {
  for (const auto& w : ws) add_witness(flag, tag + " " + w);
}

}  // namespace

SectionData section_data(const InstanceBundle& b) {
  return SectionData{b.proj, b.section, b.adj, b.side};
}

ComprehensionStructure build_comprehension(const Functor& p, const Functor& comp,
                                           const NatTrans& iota, const ArrowBundle& arrows) {
  if (!same_category(comp.source(), p.source()) || !same_category(comp.target(), p.target()))
    throw StructuralError("build_comprehension: [-] and p are not parallel");
  if (!same_category(arrows.base(), p.target()))
    throw StructuralError("build_comprehension: arrow bundle over the wrong base");
  if (!(iota.source() == comp) || !(iota.target() == p))
    throw StructuralError("build_comprehension: ι is not typed [-] ⇒ p");
  require_natural(iota, "build_comprehension");
  Functor path = arrows.factorize(iota);
  const Functor id_b = identity_functor(p.target());
  LaxMorphism lax = make_lax(arrow_object(p), arrow_object(id_b), comp, id_b, iota.components());
  ComprehensionStructure cs{p, comp, iota, std::move(path), std::move(lax)};
  if (!check_comprehension(cs, arrows).passed())
    throw StructuralError("build_comprehension: factorization does not reproduce ι");
  return cs;
}

QuotientStructure build_quotient(const Functor& p, const Functor& quot, const NatTrans& pi,
                                 const ArrowBundle& arrows) {
  if (!same_category(quot.source(), p.source()) || !same_category(quot.target(), p.target()))
    throw StructuralError("build_quotient: ⦃-⦄ and p are not parallel");
  if (!same_category(arrows.base(), p.target()))
    throw StructuralError("build_quotient: arrow bundle over the wrong base");
  if (!(pi.source() == p) || !(pi.target() == quot))
    throw StructuralError("build_quotient: π is not typed p ⇒ ⦃-⦄");
  require_natural(pi, "build_quotient");
  QuotientStructure qs{p, quot, pi, arrows.factorize(pi)};
  if (!check_quotient(qs, arrows).passed())
    throw StructuralError("build_quotient: factorization does not reproduce π");
  return qs;
}

LawReport check_comprehension(const ComprehensionStructure& cs, const ArrowBundle& arrows) {
  LawReport r;
  if (!(compose(arrows.cod(), cs.path) == cs.proj)) r.fail("comprehension.cod", "cod∘P ≠ p");
  if (!(compose(arrows.dom(), cs.path) == cs.comp)) r.fail("comprehension.dom", "dom∘P ≠ [-]");
  const NatTrans h = whisker(arrows.hom(), cs.path);
  const Category& e = *cs.proj.source();
  for (Obj x = 0; x < e.object_count(); ++x) {
    if (h.at(x) != cs.iota.at(x)) r.fail("comprehension.hom", e.object_label(x));
  }
  return r;
}

LawReport check_quotient(const QuotientStructure& qs, const ArrowBundle& arrows) {
  LawReport r;
  if (!(compose(arrows.dom(), qs.path) == qs.proj)) r.fail("quotient.dom", "dom∘Q ≠ p");
  if (!(compose(arrows.cod(), qs.path) == qs.quot)) r.fail("quotient.cod", "cod∘Q ≠ ⦃-⦄");
  const NatTrans h = whisker(arrows.hom(), qs.path);
  const Category& e = *qs.proj.source();
  for (Obj x = 0; x < e.object_count(); ++x) {
    if (h.at(x) != qs.pi.at(x)) r.fail("quotient.hom", e.object_label(x));
  }
  return r;
}

LiftData section_lift_data(const SectionData& sd, const NatTrans& iota) {
  const Functor& p = sd.proj;
  const Functor id_b = identity_functor(p.target());
  std::vector<Mor> ids;
  for (Obj a = 0; a < p.target()->object_count(); ++a) ids.push_back(p.target()->identity(a));
  NatTrans phi(compose(p, sd.adj.left), compose(id_b, id_b), std::move(ids));
  NatTrans psi(compose(id_b, sd.adj.right), compose(id_b, p), iota.components());
  return LiftData{arrow_object(id_b), arrow_object(p), identity_adjunction(p.target()), sd.adj,
                  std::move(phi), std::move(psi)};
}

ComprehensionStructure derive_comprehension_from_section(const SectionData& sd,
                                                         const ArrowBundle& arrows,
                                                         const std::optional<NatTrans>& supplied) {
  if (sd.side != StructureSide::comprehension)
    throw StructuralError("derive_comprehension_from_section: quotient-side data");
  require_strict_section(sd.proj, sd.section, "derive_comprehension_from_section");
  if (!(sd.adj.left == sd.section))
    throw StructuralError("derive_comprehension_from_section: ⋆ is not the left adjoint");
  require_adjunction(sd.adj, "derive_comprehension_from_section");
  const Functor& comp = sd.adj.right;
  const NatTrans iota = retype(whisker(sd.proj, sd.adj.counit), comp, sd.proj);
  if (supplied && !same_components(*supplied, iota))
    throw StructuralError("derive_comprehension_from_section: supplied ι disagrees with p·ε");
  ComprehensionStructure cs = build_comprehension(sd.proj, comp, iota, arrows);
  if (lift_adjunction(section_lift_data(sd, iota)).diagnosis != LiftDiagnosis::lifted)
    throw StructuralError("derive_comprehension_from_section: ⋆ ⊣ [-] does not lift");
  return cs;
}

QuotientStructure derive_quotient_from_section(const SectionData& sd, const ArrowBundle& arrows) {
  if (sd.side != StructureSide::quotient)
    throw StructuralError("derive_quotient_from_section: comprehension-side data");
  require_strict_section(sd.proj, sd.section, "derive_quotient_from_section");
  if (!(sd.adj.right == sd.section))
    throw StructuralError("derive_quotient_from_section: ⋆ is not the right adjoint");
  require_adjunction(sd.adj, "derive_quotient_from_section");
  const NatTrans pi = retype(whisker(sd.proj, sd.adj.unit), sd.proj, sd.adj.left);
  return build_quotient(sd.proj, sd.adj.left, pi, arrows);
}

ImageAdjunction comprehension_with_image(const ImageStructure& s, const SectionData& sd,
                                         const ArrowBundle& arrows) {
  if (!(s.section == sd.section) || !(s.proj == sd.proj))
    throw StructuralError("comprehension_with_image: image structure and section data differ");
  const ComprehensionStructure cs = derive_comprehension_from_section(sd, arrows);
  Functor image = image_functor(s, arrows);
  const Category& b = *sd.proj.target();
  const Category& e = *sd.proj.source();
  const Functor& comp = cs.comp;

  std::vector<Mor> unit;
  unit.reserve(b.morphism_count());
  for (Mor u = 0; u < b.morphism_count(); ++u) {
    const Obj x = s.pushforward[u];
    const Mor w = b.compose(comp.mor(s.lift[u]), sd.adj.unit.at(b.dom(u)));
    const Mor sq = arrows.square(u, cs.path.obj(x), w, b.identity(b.cod(u)));
    if (sq == no_mor)
      throw StructuralError("comprehension_with_image: no unit square at " + b.morphism_label(u));
    unit.push_back(sq);
  }

  std::vector<Mor> counit;
  counit.reserve(e.object_count());
  for (Obj x = 0; x < e.object_count(); ++x) {
    const Mor u = cs.iota.at(x);
    const Mor lam = s.lift[u];
    const Mor target = sd.adj.counit.at(x);
    const Mor over = b.identity(sd.proj.obj(x));
    Mor found = no_mor;
    for (Mor g : e.hom(s.pushforward[u], x)) {
      if (sd.proj.mor(g) == over && e.compose(g, lam) == target) {
        found = g;
        break;
      }
    }
    if (found == no_mor)
      throw StructuralError("comprehension_with_image: no vertical counit at " + e.object_label(x));
    counit.push_back(found);
  }
  Adjunction adj = make_adjunction(image, cs.path, std::move(unit), std::move(counit));
  return ImageAdjunction{cs.path, std::move(image), std::move(adj)};
}

LawReport check_comprehension_with_image(const ImageAdjunction& ia, const ImageStructure& s,
                                         const ArrowBundle& arrows) {
  LawReport r;
  r.merge(check_adjunction(ia.adj), "adjunction.");
  if (!(compose(arrows.cod(), ia.path) == s.proj)) r.fail("slice.cod", "cod∘P ≠ p");
  if (!(compose(s.proj, ia.image) == arrows.cod())) r.fail("slice.image", "p∘image ≠ cod");
  const Category& b = *s.proj.target();
  const Category& e = *s.proj.source();
  for (Mor u = 0; u < b.morphism_count(); ++u) {
    if (!b.is_identity(arrows.bottom(ia.adj.unit.at(u))))
      r.fail("vertical.unit", b.morphism_label(u));
  }
  for (Obj x = 0; x < e.object_count(); ++x) {
    if (!b.is_identity(s.proj.mor(ia.adj.counit.at(x))))
      r.fail("vertical.counit", e.object_label(x));
  }
  return r;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    case Verdict::undetermined: return "undetermined";
  }
  return "?";
}

bool is_pullback(const Category& c, Mor top, Mor left, Mor right, Mor bottom) {
  if (c.compose(bottom, left) != c.compose(right, top)) return false;
  const Obj corner = c.dom(top);
  const Obj x = c.cod(left);
  const Obj y = c.dom(right);
  for (Obj z = 0; z < c.object_count(); ++z) {
    // Cones over the cospan, counted by matching composites.
    std::unordered_map<Mor, std::size_t> by_base;
    for (Mor a : c.hom(z, x)) ++by_base[c.compose(bottom, a)];
    std::size_t cones = 0;
    for (Mor b : c.hom(z, y)) {
      const auto it = by_base.find(c.compose(right, b));
      if (it != by_base.end()) cones += it->second;
    }
    const auto mediators = c.hom(z, corner);
    if (mediators.size() != cones) return false;
    std::vector<std::pair<Mor, Mor>> legs;
    legs.reserve(mediators.size());
    for (Mor m : mediators) legs.emplace_back(c.compose(left, m), c.compose(top, m));
    std::sort(legs.begin(), legs.end());
    if (std::adjacent_find(legs.begin(), legs.end()) != legs.end()) return false;
  }
  return true;
}

bool is_fully_faithful(const Functor& f) {
  const Category& s = *f.source();
  const Category& t = *f.target();
  for (Obj a = 0; a < s.object_count(); ++a)
    for (Obj b = 0; b < s.object_count(); ++b) {
      const auto src = s.hom(a, b);
      if (src.size() != t.hom(f.obj(a), f.obj(b)).size()) return false;
      std::vector<Mor> images;
      images.reserve(src.size());
      for (Mor g : src) images.push_back(f.mor(g));
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    }
  return true;
}

std::vector<std::string> fiberwise_terminal_failures(const Functor& p, const Functor& section) {
  std::vector<std::string> out;
  const Category& b = *p.target();
  for (Obj a = 0; a < b.object_count(); ++a) {
    const Fiber fb = fiber(p, a);
    const auto it = std::find(fb.objects.begin(), fb.objects.end(), section.obj(a));
    if (it == fb.objects.end()) {
      out.push_back(b.object_label(a));
      continue;
    }
    const Obj top = static_cast<Obj>(it - fb.objects.begin());
    for (Obj x = 0; x < fb.objects.size(); ++x) {
      if (fb.category->hom(x, top).size() != 1) {
        out.push_back(b.object_label(a));
        break;
      }
    }
  }
  return out;
}

namespace {

// p ⊣ ⋆ with counit the identity and unit the unique vertical map X → ⋆pX.
std::optional<Adjunction> projection_left_of_section(const Functor& p, const Functor& section) {
  const Category& e = *p.source();
  const Category& b = *p.target();
  std::vector<Mor> unit;
  for (Obj x = 0; x < e.object_count(); ++x) {
    const Mor over = b.identity(p.obj(x));
    Mor found = no_mor;
    for (Mor g : e.hom(x, section.obj(p.obj(x)))) {
      if (p.mor(g) == over) {
        found = g;
        break;
      }
    }
    if (found == no_mor) return std::nullopt;
    unit.push_back(found);
  }
  std::vector<Mor> counit;
  for (Obj a = 0; a < b.object_count(); ++a) counit.push_back(b.identity(a));
  return make_adjunction(p, section, std::move(unit), std::move(counit));
}

NotionFlag decide_jacobs(const Functor& p, const FibrationClass& fc,
                         const std::optional<ComprehensionStructure>& cs) {
  NotionFlag flag;
  if (!cs) {
    add_witness(flag, "no comprehension structure");
    return flag;
  }
  if (!fc.is_fibration) {
    flag.verdict = Verdict::no;
    copy_witnesses(flag, fc.missing_cartesian, "no cartesian lift");
    return flag;
  }
  const Category& e = *p.source();
  const Category& b = *p.target();
  flag.verdict = Verdict::yes;
  for (Mor g = 0; g < e.morphism_count(); ++g) {
    if (!is_cartesian(p, g)) continue;
    const Obj x = e.dom(g);
    const Obj y = e.cod(g);
    if (!is_pullback(b, cs->comp.mor(g), cs->iota.at(x), cs->iota.at(y), p.mor(g))) {
      flag.verdict = Verdict::no;
      add_witness(flag, "P(" + e.morphism_label(g) + ") is not a pullback");
    }
  }
  return flag;
}

NotionFlag decide_d_category(const Functor& p, const FibrationClass& fc,
                             const std::optional<SectionData>& sd) {
  NotionFlag flag;
  if (!sd) {
    add_witness(flag, "no section");
    return flag;
  }
  flag.verdict = Verdict::yes;
  if (!fc.is_fibration) {
    flag.verdict = Verdict::no;
    copy_witnesses(flag, fc.missing_cartesian, "no cartesian lift");
  }
  const auto terminal = fiberwise_terminal_failures(p, sd->section);
  if (!terminal.empty()) {
    flag.verdict = Verdict::no;
    copy_witnesses(flag, terminal, "⋆ not terminal over");
    return flag;
  }
  if (!is_fully_faithful(sd->section)) {
    flag.verdict = Verdict::no;
    add_witness(flag, "⋆ not fully faithful");
  }
  const auto adj = projection_left_of_section(p, sd->section);
  if (!adj || !check_adjunction(*adj).passed()) {
    flag.verdict = Verdict::no;
    add_witness(flag, "p ⊣ ⋆ fails");
  }
  return flag;
}

NotionFlag decide_tc(const FibrationClass& fc, const std::optional<SectionData>& sd) {
  NotionFlag flag;
  if (!sd) {
    add_witness(flag, "no section");
    return flag;
  }
  if (sd->side != StructureSide::comprehension) {
    add_witness(flag, "no right adjoint of ⋆ supplied");
    return flag;
  }
  flag.verdict = Verdict::yes;
  if (!fc.is_opfibration) {
    flag.verdict = Verdict::no;
    copy_witnesses(flag, fc.missing_opcartesian, "no opcartesian lift");
  }
  if (!is_fully_faithful(sd->section)) {
    flag.verdict = Verdict::no;
    add_witness(flag, "⋆ not fully faithful");
  }
  if (!(sd->adj.left == sd->section) || !check_adjunction(sd->adj).passed()) {
    flag.verdict = Verdict::no;
    add_witness(flag, "⋆ ⊣ [-] fails");
  }
  return flag;
}

NotionFlag decide_lawvere(const Functor& p, const FibrationClass& fc,
                          const std::optional<SectionData>& sd,
                          const std::optional<ComprehensionStructure>& cs) {
  NotionFlag flag;
  if (!sd || !cs || sd->side != StructureSide::comprehension) {
    add_witness(flag, "needs a comprehension section and structure");
    return flag;
  }
  if (!fc.is_bifibration) {
    flag.verdict = Verdict::no;
    copy_witnesses(flag, fc.missing_cartesian, "no cartesian lift");
    copy_witnesses(flag, fc.missing_opcartesian, "no opcartesian lift");
    return flag;
  }
  const auto terminal = fiberwise_terminal_failures(p, sd->section);
  if (!terminal.empty()) {
    flag.verdict = Verdict::no;
    copy_witnesses(flag, terminal, "⋆ not terminal over");
    return flag;
  }
  const auto s = build_image_structure(p, sd->section);
  if (!s) {
    flag.verdict = Verdict::no;
    add_witness(flag, "no image structure");
    return flag;
  }
  const ArrowBundle arrows = arrow_category(p.target());
  try {
    const ImageAdjunction ia = comprehension_with_image(*s, *sd, arrows);
    const LawReport r = check_comprehension_with_image(ia, *s, arrows);
    flag.verdict = r.passed() ? Verdict::yes : Verdict::no;
    for (const auto& v : r.violations()) add_witness(flag, v.law + " " + v.witness);
    if (!(ia.path == cs->path)) {
      flag.verdict = Verdict::no;
      add_witness(flag, "P differs from the supplied comprehension");
    }
  } catch (const StructuralError& err) {
    flag.verdict = Verdict::no;
    add_witness(flag, err.what());
  }
  return flag;
}

}  // namespace

NotionClassification classify_notion(const Functor& p, const std::optional<SectionData>& sd,
                                     const std::optional<ComprehensionStructure>& cs) {
  if (sd && !(sd->proj == p)) throw StructuralError("classify_notion: section data over another functor");
  if (cs && !(cs->proj == p)) throw StructuralError("classify_notion: comprehension over another functor");
  if (sd) require_strict_section(p, sd->section, "classify_notion");
  const FibrationClass fc = classify_functor(p);
  NotionClassification out;
  out.jacobs = decide_jacobs(p, fc, cs);
  out.d_category = decide_d_category(p, fc, sd);
  out.tc_opfibration = decide_tc(fc, sd);
  out.lawvere = decide_lawvere(p, fc, sd, cs);
  return out;
}

}  // namespace compcat
