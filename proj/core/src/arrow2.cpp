#include "compcat/arrow2.hpp"

namespace compcat {

namespace {

void require_projection(const ArrowObject& a) {
  if (!same_category(a.proj.source(), a.total) || !same_category(a.proj.target(), a.base))
    throw StructuralError("arrow object: projection does not match its categories");
}

void require_lax_shape(const LaxMorphism& m) {
  require_projection(m.from);
  require_projection(m.to);
  if (!same_category(m.on_total.source(), m.from.total) ||
      !same_category(m.on_total.target(), m.to.total) ||
      !same_category(m.on_base.source(), m.from.base) ||
      !same_category(m.on_base.target(), m.to.base))
    throw StructuralError("lax morphism: component functors do not match the endpoints");
  if (!(m.phi.source() == compose(m.to.proj, m.on_total)) ||
      !(m.phi.target() == compose(m.on_base, m.from.proj)))
    throw StructuralError("lax morphism: phi must go p2.f_E => f_B.p1");
}

void translate(LawReport& out, const LawReport& in, const std::string& prefix) {
  for (const auto& v : in.violations()) {
    const std::string law = prefix + (v.law == "nat.typing" ? "typing" : "naturality");
    if (v.structural)
      out.structural(law, v.witness);
    else
      out.fail(law, v.witness);
  }
}

}  // namespace

ArrowObject arrow_object(const Functor& p) { return ArrowObject{p.source(), p.target(), p}; }

bool same_arrow_object(const ArrowObject& a, const ArrowObject& b) {
  return same_category(a.total, b.total) && same_category(a.base, b.base) && a.proj == b.proj;
}

bool is_identity_transformation(const NatTrans& a) {
  const Category& t = *a.source().target();
  for (Mor c : a.components()) {
    if (!t.is_identity(c)) return false;
  }
  return true;
}

LaxMorphism make_lax(const ArrowObject& from, const ArrowObject& to, Functor on_total,
                     Functor on_base, std::vector<Mor> phi) {
  NatTrans cell(compose(to.proj, on_total), compose(on_base, from.proj), std::move(phi));
  const bool strict = is_identity_transformation(cell);
  LaxMorphism m{from, to, std::move(on_total), std::move(on_base), std::move(cell), strict};
  require_lax_shape(m);
  return m;
}

LaxMorphism identity_lax(const ArrowObject& a) {
  return make_lax(a, a, identity_functor(a.total), identity_functor(a.base),
                  identity_transformation(a.proj).components());
}

LawReport check_lax_morphism(const LaxMorphism& m) {
  require_lax_shape(m);
  LawReport report;
  translate(report, validate_nat_trans(m.phi), "lax.phi.");
  if (m.strict != is_identity_transformation(m.phi))
    report.fail("lax.strict_flag", m.strict ? "flagged strict, phi not identity"
                                            : "phi is identity, not flagged strict");
  return report;
}

LaxMorphism compose_lax(const LaxMorphism& outer, const LaxMorphism& inner) {
  if (!same_arrow_object(inner.to, outer.from))
    throw StructuralError("compose_lax: inner codomain differs from outer domain");
  require_lax_shape(inner);
  require_lax_shape(outer);
  const Category& b3 = *outer.to.base;
  std::vector<Mor> comps(inner.from.total->object_count());
  for (Obj e = 0; e < comps.size(); ++e) {
    const Mor first = outer.phi.at(inner.on_total.obj(e));
    const Mor second = outer.on_base.mor(inner.phi.at(e));
    comps[e] = b3.compose(second, first);
  }
  return make_lax(inner.from, outer.to, compose(outer.on_total, inner.on_total),
                  compose(outer.on_base, inner.on_base), std::move(comps));
}

ArrowTwoCell identity_two_cell(const LaxMorphism& m) {
  return ArrowTwoCell{identity_transformation(m.on_base), identity_transformation(m.on_total)};
}

LawReport check_two_cell(const ArrowTwoCell& t, const LaxMorphism& m1, const LaxMorphism& m2) {
  if (!same_arrow_object(m1.from, m2.from) || !same_arrow_object(m1.to, m2.to))
    throw StructuralError("check_two_cell: lax morphisms are not parallel");
  if (!(t.theta_base.source() == m1.on_base) || !(t.theta_base.target() == m2.on_base) ||
      !(t.theta_total.source() == m1.on_total) || !(t.theta_total.target() == m2.on_total))
    throw StructuralError("check_two_cell: components do not go between the given morphisms");

  LawReport report;
  translate(report, validate_nat_trans(t.theta_base), "two_cell.base.");
  translate(report, validate_nat_trans(t.theta_total), "two_cell.total.");
  for (const auto& v : report.violations()) {
    if (v.structural) return report;
  }

  const Category& e1 = *m1.from.total;
  const Category& b2 = *m1.to.base;
  const Functor& p1 = m1.from.proj;
  const Functor& p2 = m1.to.proj;
  for (Obj e = 0; e < e1.object_count(); ++e) {
    const Mor left = b2.compose(t.theta_base.at(p1.obj(e)), m1.phi.at(e));
    const Mor right = b2.compose(m2.phi.at(e), p2.mor(t.theta_total.at(e)));
    if (left != right) report.fail("two_cell.pasting", "object " + e1.object_label(e));
  }
  return report;
}

Adjunction project_base(const ArrowAdjunction& a) {
  return Adjunction{a.left.on_base, a.right.on_base, a.unit.theta_base, a.counit.theta_base};
}

Adjunction project_total(const ArrowAdjunction& a) {
  return Adjunction{a.left.on_total, a.right.on_total, a.unit.theta_total, a.counit.theta_total};
}

const char* to_string(LiftDiagnosis d) {
  switch (d) {
    case LiftDiagnosis::lifted:
      return "lifted";
    case LiftDiagnosis::phi_not_invertible:
      return "phi-not-invertible";
    case LiftDiagnosis::psi_not_mate:
      return "psi-not-mate";
  }
  return "unknown";
}

namespace {

ArrowAdjunction assemble(const LiftData& d) {
  LaxMorphism left = make_lax(d.lower, d.upper, d.total.left, d.base.left, d.phi.components());
  LaxMorphism right = make_lax(d.upper, d.lower, d.total.right, d.base.right, d.psi.components());
  return ArrowAdjunction{std::move(left), std::move(right), ArrowTwoCell{d.base.unit, d.total.unit},
                         ArrowTwoCell{d.base.counit, d.total.counit}};
}

}  // namespace

LiftResult lift_adjunction(const LiftData& d) {
  if (!check_adjunction(d.base).passed())
    throw StructuralError("lift_adjunction: base adjunction fails its laws");
  if (!check_adjunction(d.total).passed())
    throw StructuralError("lift_adjunction: total adjunction fails its laws");
  if (!validate_nat_trans(d.phi).passed())
    throw StructuralError("lift_adjunction: phi is not natural");
  ArrowAdjunction candidate = assemble(d);

  const auto inverse = invert(d.phi);
  if (!inverse) return LiftResult{LiftDiagnosis::phi_not_invertible, std::nullopt};
  const NatTrans expected = mate_inverse(d.lower.proj, d.upper.proj, d.base, d.total, *inverse);
  if (expected.components() != d.psi.components())
    return LiftResult{LiftDiagnosis::psi_not_mate, std::nullopt};
  return LiftResult{LiftDiagnosis::lifted, std::move(candidate)};
}

LawReport check_arrow_adjunction(const ArrowAdjunction& a) {
  LawReport report;
  report.merge(check_lax_morphism(a.left), "left.");
  report.merge(check_lax_morphism(a.right), "right.");
  report.merge(check_adjunction(project_base(a)), "base.");
  report.merge(check_adjunction(project_total(a)), "total.");
  report.merge(check_two_cell(a.unit, identity_lax(a.left.from), compose_lax(a.right, a.left)),
               "arrow.unit.");
  report.merge(check_two_cell(a.counit, compose_lax(a.left, a.right), identity_lax(a.left.to)),
               "arrow.counit.");
  return report;
}

LawReport check_arrow_adjunction(const LiftData& d) { return check_arrow_adjunction(assemble(d)); }

}  // namespace compcat
