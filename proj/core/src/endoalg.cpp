#include "compcat/endoalg.hpp"

#include <algorithm>
#include <unordered_map>

namespace compcat {

namespace {

bool is_endofunctor(const Functor& f) { return same_category(f.source(), f.target()); }

Functor require_endo(const Functor& f, const char* what) {
  if (!is_endofunctor(f)) throw StructuralError(std::string(what) + ": not an endofunctor");
  return f;
}

void require_typed(const NatTrans& a, const Functor& source, const Functor& target, const char* what) {
  if (!(a.source() == source) || !(a.target() == target))
    throw StructuralError(std::string(what) + ": transformation has the wrong endpoints");
}

std::string first_violation(const LawReport& r) {
  if (r.passed()) return {};
  const Violation& v = r.violations().front();
  return v.law + " at " + v.witness;
}

std::vector<Mor> identities_at(const Category& c, const Functor& f) {
  std::vector<Mor> out;
  out.reserve(f.source()->object_count());
  for (Obj x = 0; x < f.source()->object_count(); ++x) out.push_back(c.identity(f.obj(x)));
  return out;
}

// Shared between an algebra category and its composition rule.
struct AlgebraTable {
  const Category* base = nullptr;
  std::vector<Obj> carrier;
  std::vector<Mor> structure;
  std::vector<Mor> underlying;
  std::vector<Arrow> arrows;
  std::unordered_map<std::uint64_t, std::pair<Mor, Mor>> ranges;  // (x, y) → [begin, end)

  static std::uint64_t key(Obj x, Obj y) { return (std::uint64_t{x} << 32) | y; }

  Mor find(Obj x, Obj y, Mor h) const {
    const auto it = ranges.find(key(x, y));
    if (it == ranges.end()) return no_mor;
    const auto first = underlying.begin() + it->second.first;
    const auto last = underlying.begin() + it->second.second;
    const auto hit = std::lower_bound(first, last, h);
    return hit != last && *hit == h ? static_cast<Mor>(hit - underlying.begin()) : no_mor;
  }
};

// The lift of f: C → D between (co)algebra categories, with the structure
// of the image of algebra i given by `structure_of(i)`.
template <class StructureOf>
Functor lift_between(const Functor& f, const AlgebraBundle& src, const AlgebraBundle& tgt,
                     StructureOf structure_of, const char* what) {
  std::vector<Obj> objs;
  objs.reserve(src.carrier.size());
  for (Obj i = 0; i < src.carrier.size(); ++i) {
    const Obj j = tgt.find(f.obj(src.carrier[i]), structure_of(i));
    if (j == no_obj)
      throw StructuralError(std::string(what) + ": no image of " + src.alg->object_label(i));
    objs.push_back(j);
  }
  std::vector<Mor> mors;
  mors.reserve(src.underlying.size());
  for (Mor m = 0; m < src.underlying.size(); ++m) {
    const Mor k = tgt.find_morphism(objs[src.alg->dom(m)], objs[src.alg->cod(m)], f.mor(src.underlying[m]));
    if (k == no_mor)
      throw StructuralError(std::string(what) + ": no image of " + src.alg->morphism_label(m));
    mors.push_back(k);
  }
  return Functor(src.alg, tgt.alg, std::move(objs), std::move(mors));
}

void require_strict_section(const SectionData& sd, const char* what) {
  if (!same_category(sd.section.source(), sd.proj.target()) ||
      !same_category(sd.section.target(), sd.proj.source()) ||
      !(compose(sd.proj, sd.section) == identity_functor(sd.proj.target())))
    throw StructuralError(std::string(what) + ": p∘⋆ is not the identity");
}

void require_pair_shape(const SectionData& sd, const DistributivityPair& dp, Direction d,
                        const char* what) {
  const Functor& p = sd.proj;
  const Functor& f = dp.base_endo;
  const Functor& g = dp.total_endo;
  if (!is_endofunctor(f) || !same_category(f.source(), p.target()))
    throw StructuralError(std::string(what) + ": F is not an endofunctor of the base");
  if (!is_endofunctor(g) || !same_category(g.source(), p.source()))
    throw StructuralError(std::string(what) + ": G is not an endofunctor of the total category");
  if (d == Direction::algebra) {
    require_typed(dp.delta, compose(f, p), compose(p, g), what);
    require_typed(dp.sigma, compose(g, sd.section), compose(sd.section, f), what);
  } else {
    require_typed(dp.delta, compose(p, g), compose(f, p), what);
    require_typed(dp.sigma, compose(sd.section, f), compose(g, sd.section), what);
  }
}

// Conditions (1) and (2) for either direction.
LawReport criterion_laws(const SectionData& sd, const DistributivityPair& dp, Direction d) {
  LawReport r;
  r.merge(validate_nat_trans(dp.delta), "criterion.delta.");
  r.merge(validate_nat_trans(dp.sigma), "criterion.sigma.");
  if (!r.passed()) return r;
  const Category& b = *sd.proj.target();
  const Category& e = *sd.proj.source();
  for (Obj a = 0; a < b.object_count(); ++a) {
    const Mor ps = sd.proj.mor(dp.sigma.at(a));
    const Mor dl = dp.delta.at(sd.section.obj(a));
    const Mor composite = d == Direction::algebra ? b.compose(ps, dl) : b.compose(dl, ps);
    if (composite != b.identity(dp.base_endo.obj(a))) r.fail("criterion.composite", b.object_label(a));
  }
  for (Obj a = 0; a < b.object_count(); ++a) {
    if (inverse_of(e, dp.sigma.at(a)) == no_mor) r.fail("criterion.sigma_invertible", b.object_label(a));
  }
  return r;
}

}  // namespace

EndoObject endo_object(Functor endo) {
  require_endo(endo, "endo_object");
  CategoryPtr c = endo.source();
  return EndoObject{std::move(c), std::move(endo)};
}

EndoMorphism identity_endo_morphism(const EndoObject& e) {
  const Functor id = identity_functor(e.carrier);
  return EndoMorphism{e, e, id, identity_transformation(e.endo)};
}

EndoMorphism compose_endo(const EndoMorphism& outer, const EndoMorphism& inner) {
  if (!same_category(outer.from.carrier, inner.to.carrier) || !(outer.from.endo == inner.to.endo))
    throw StructuralError("compose_endo: endo-morphisms do not compose");
  const Functor on = compose(outer.on_carrier, inner.on_carrier);
  const Category& z = *outer.to.carrier;
  std::vector<Mor> comps;
  for (Obj c = 0; c < inner.from.carrier->object_count(); ++c) {
    comps.push_back(z.compose(outer.on_carrier.mor(inner.dist.at(c)),
                              outer.dist.at(inner.on_carrier.obj(c))));
  }
  NatTrans dist(compose(outer.to.endo, on), compose(on, inner.from.endo), std::move(comps));
  return EndoMorphism{inner.from, outer.to, on, std::move(dist)};
}

LawReport check_endo_morphism(const EndoMorphism& m) {
  if (!same_category(m.on_carrier.source(), m.from.carrier) ||
      !same_category(m.on_carrier.target(), m.to.carrier))
    throw StructuralError("check_endo_morphism: functor does not match the endo-objects");
  require_typed(m.dist, compose(m.to.endo, m.on_carrier), compose(m.on_carrier, m.from.endo),
                "check_endo_morphism");
  LawReport r;
  r.merge(validate_nat_trans(m.dist), "endo.dist.");
  return r;
}

LawReport check_endo_two_cell(const NatTrans& alpha, const EndoMorphism& m1, const EndoMorphism& m2) {
  if (!same_category(m1.from.carrier, m2.from.carrier) || !same_category(m1.to.carrier, m2.to.carrier) ||
      !(m1.from.endo == m2.from.endo) || !(m1.to.endo == m2.to.endo))
    throw StructuralError("check_endo_two_cell: endo-morphisms are not parallel");
  require_typed(alpha, m1.on_carrier, m2.on_carrier, "check_endo_two_cell");
  LawReport r;
  r.merge(validate_nat_trans(alpha), "endo.two_cell.");
  if (!r.passed()) return r;
  const Category& x = *m1.from.carrier;
  const Category& y = *m1.to.carrier;
  const Functor& xe = m1.from.endo;
  const Functor& ye = m1.to.endo;
  for (Obj c = 0; c < x.object_count(); ++c) {
    const Mor left = y.find_composite(alpha.at(xe.obj(c)), m1.dist.at(c));
    const Mor right = y.find_composite(m2.dist.at(c), ye.mor(alpha.at(c)));
    if (left == no_mor || left != right) r.fail("endo.two_cell.exchange", x.object_label(c));
  }
  return r;
}

LawReport check_endo_adjunction(const EndoMorphism& l, const EndoMorphism& r, const NatTrans& eta,
                                const NatTrans& eps) {
  if (!same_category(l.from.carrier, r.to.carrier) || !same_category(l.to.carrier, r.from.carrier))
    throw StructuralError("check_endo_adjunction: endo-morphisms are not opposed");
  LawReport report;
  const Adjunction adj{l.on_carrier, r.on_carrier, eta, eps};
  report.merge(check_adjunction(adj), "adjunction.");
  const Category& xc = *l.from.carrier;
  const Category& yc = *l.to.carrier;
  const Functor& x = l.from.endo;
  const Functor& y = l.to.endo;
  const Functor& lf = l.on_carrier;
  const Functor& rf = r.on_carrier;
  for (Obj c = 0; c < xc.object_count(); ++c) {
    const Mor path = xc.find_composite(rf.mor(l.dist.at(c)), r.dist.at(lf.obj(c)));
    const Mor full = path == no_mor ? no_mor : xc.find_composite(path, x.mor(eta.at(c)));
    if (full == no_mor || full != eta.at(x.obj(c))) report.fail("endo.adjunction.unit", xc.object_label(c));
  }
  for (Obj d = 0; d < yc.object_count(); ++d) {
    const Mor path = yc.find_composite(lf.mor(r.dist.at(d)), l.dist.at(rf.obj(d)));
    const Mor full = path == no_mor ? no_mor : yc.find_composite(eps.at(y.obj(d)), path);
    if (full == no_mor || full != y.mor(eps.at(d))) report.fail("endo.adjunction.counit", yc.object_label(d));
  }
  return report;
}

const char* to_string(Direction d) { return d == Direction::algebra ? "algebra" : "coalgebra"; }

Obj AlgebraBundle::find(Obj c, Mor a) const {
  const auto lo = std::lower_bound(carrier.begin(), carrier.end(), c);
  const auto hi = std::upper_bound(lo, carrier.end(), c);
  const auto first = structure.begin() + (lo - carrier.begin());
  const auto last = structure.begin() + (hi - carrier.begin());
  const auto hit = std::lower_bound(first, last, a);
  return hit != last && *hit == a ? static_cast<Obj>(hit - structure.begin()) : no_obj;
}

Mor AlgebraBundle::find_morphism(Obj x, Obj y, Mor h) const {
  const auto hom = alg->hom(x, y);
  const auto hit = std::lower_bound(hom.begin(), hom.end(), h,
                                    [&](Mor m, Mor value) { return underlying[m] < value; });
  return hit != hom.end() && underlying[*hit] == h ? *hit : no_mor;
}

AlgebraBundle algebra_category(const Functor& f, Direction direction, AlgebraLimits limits) {
  require_endo(f, "algebra_category");
  const CategoryPtr& cp = f.source();
  const Category& c = *cp;
  const bool alg = direction == Direction::algebra;
  auto table = std::make_shared<AlgebraTable>();
  table->base = &c;
  for (Obj x = 0; x < c.object_count(); ++x) {
    for (Mor a : alg ? c.hom(f.obj(x), x) : c.hom(x, f.obj(x))) {
      table->carrier.push_back(x);
      table->structure.push_back(a);
    }
  }
  const std::size_t n = table->carrier.size();
  std::size_t widest = 0;
  for (Obj x = 0; x < c.object_count(); ++x)
    for (Obj y = 0; y < c.object_count(); ++y) widest = std::max(widest, c.hom(x, y).size());
  if (n * widest > limits.max_cells)
    throw ResourceError("algebra_category: " + std::to_string(n) + " algebras with homs up to " +
                        std::to_string(widest) + " exceed the bound");

  std::vector<std::string> labels;
  std::vector<Mor> identities(n, no_mor);
  for (Obj i = 0; i < n; ++i) {
    labels.push_back("(" + c.object_label(table->carrier[i]) + ", " +
                     c.morphism_label(table->structure[i]) + ")");
    for (Obj j = 0; j < n; ++j) {
      const Mor begin = static_cast<Mor>(table->underlying.size());
      const Mor a = table->structure[i];
      const Mor b = table->structure[j];
      for (Mor h : c.hom(table->carrier[i], table->carrier[j])) {
        const bool square = alg ? c.compose(h, a) == c.compose(b, f.mor(h))
                                : c.compose(b, h) == c.compose(f.mor(h), a);
        if (!square) continue;
        if (i == j && c.is_identity(h)) identities[i] = static_cast<Mor>(table->underlying.size());
        table->underlying.push_back(h);
        table->arrows.push_back({i, j});
      }
      const Mor end = static_cast<Mor>(table->underlying.size());
      if (end > begin) table->ranges.emplace(AlgebraTable::key(i, j), std::make_pair(begin, end));
    }
  }
  auto rule = [table](Mor g, Mor h) {
    const Mor u = table->base->compose(table->underlying[g], table->underlying[h]);
    return table->find(table->arrows[h].dom, table->arrows[g].cod, u);
  };
  auto namer = [table](Mor m) { return table->base->morphism_label(table->underlying[m]); };
  auto category = share(Category::computed(std::move(labels), table->arrows, std::move(identities),
                                           std::move(rule), std::move(namer)));
  Functor forgetful(category, cp, table->carrier, table->underlying);
  return AlgebraBundle{category, std::move(forgetful), f, direction, table->carrier,
                       table->structure, table->underlying};
}

Functor beck_lift(const Functor& p, const NatTrans& delta, const AlgebraBundle& total,
                  const AlgebraBundle& base) {
  if (total.direction != base.direction)
    throw StructuralError("beck_lift: algebra and coalgebra bundles mixed");
  if (!same_category(total.endo.source(), p.source()) || !same_category(base.endo.source(), p.target()))
    throw StructuralError("beck_lift: bundles do not match p");
  const bool alg = base.direction == Direction::algebra;
  if (alg)
    require_typed(delta, compose(base.endo, p), compose(p, total.endo), "beck_lift");
  else
    require_typed(delta, compose(p, total.endo), compose(base.endo, p), "beck_lift");
  const Category& b = *p.target();
  Functor lifted = lift_between(
      p, total, base,
      [&](Obj i) {
        const Mor pg = p.mor(total.structure[i]);
        const Mor d = delta.at(total.carrier[i]);
        return alg ? b.compose(pg, d) : b.compose(d, pg);
      },
      "beck_lift");
  if (!(compose(base.forgetful, lifted) == compose(p, total.forgetful)))
    throw StructuralError("beck_lift: U∘p′ differs from p∘U");
  return lifted;
}

DistributivityPair distributivity_pair(const EndoData& d) {
  return DistributivityPair{d.base_endo, d.total_endo, d.delta, d.sigma};
}

CriterionResult check_lifting_criterion(const SectionData& sd, const DistributivityPair& dp) {
  if (sd.side != StructureSide::comprehension || !(sd.adj.left == sd.section))
    throw StructuralError("check_lifting_criterion: needs ⋆ ⊣ [-] data");
  require_strict_section(sd, "check_lifting_criterion");
  require_pair_shape(sd, dp, Direction::algebra, "check_lifting_criterion");
  CriterionResult out;
  out.report = criterion_laws(sd, dp, Direction::algebra);
  if (!out.report.passed()) return out;
  out.sigma_inverse = invert(dp.sigma);
  NatTrans tilde = mate_inverse(dp.base_endo, dp.total_endo, sd.adj, sd.adj, *out.sigma_inverse);
  const EndoMorphism comp{endo_object(dp.total_endo), endo_object(dp.base_endo), sd.adj.right, tilde};
  out.report.merge(check_endo_morphism(comp), "lifted.");
  out.sigma_tilde = std::move(tilde);
  return out;
}

LiftedComprehension lift_comprehension_to_algebras(const SectionData& sd, const DistributivityPair& dp,
                                                   AlgebraLimits limits) {
  const CriterionResult crit = check_lifting_criterion(sd, dp);
  if (!crit.report.passed())
    throw StructuralError("lift_comprehension_to_algebras: refused, " + first_violation(crit.report));
  const Category& b = *sd.proj.target();
  const Category& e = *sd.proj.source();
  const Functor& star = sd.section;
  const Functor& comp = sd.adj.right;
  const NatTrans& tilde = *crit.sigma_tilde;

  AlgebraBundle base = algebra_category(dp.base_endo, Direction::algebra, limits);
  AlgebraBundle total = algebra_category(dp.total_endo, Direction::algebra, limits);
  Functor proj = beck_lift(sd.proj, dp.delta, total, base);
  Functor section = lift_between(
      star, base, total,
      [&](Obj i) { return e.compose(star.mor(base.structure[i]), dp.sigma.at(base.carrier[i])); },
      "lifted section");
  Functor lifted_comp = lift_between(
      comp, total, base,
      [&](Obj j) { return b.compose(comp.mor(total.structure[j]), tilde.at(total.carrier[j])); },
      "lifted comprehension");
  if (!(compose(proj, section) == identity_functor(base.alg)))
    throw StructuralError("lift_comprehension_to_algebras: lifted section is not strict");

  std::vector<Mor> unit;
  for (Obj i = 0; i < base.carrier.size(); ++i) {
    const Mor m = base.find_morphism(i, lifted_comp.obj(section.obj(i)), sd.adj.unit.at(base.carrier[i]));
    if (m == no_mor)
      throw StructuralError("lift_comprehension_to_algebras: unit is not an algebra morphism at " +
                            base.alg->object_label(i));
    unit.push_back(m);
  }
  std::vector<Mor> counit;
  for (Obj j = 0; j < total.carrier.size(); ++j) {
    const Mor m = total.find_morphism(section.obj(lifted_comp.obj(j)), j, sd.adj.counit.at(total.carrier[j]));
    if (m == no_mor)
      throw StructuralError("lift_comprehension_to_algebras: counit is not an algebra morphism at " +
                            total.alg->object_label(j));
    counit.push_back(m);
  }
  Adjunction adj = make_adjunction(section, lifted_comp, std::move(unit), std::move(counit));
  if (!check_adjunction(adj).passed())
    throw StructuralError("lift_comprehension_to_algebras: lifted adjunction fails");

  const EndoObject eb = endo_object(dp.base_endo);
  const EndoObject ee = endo_object(dp.total_endo);
  EndoMorphism sm{eb, ee, star, dp.sigma};
  EndoMorphism cm{ee, eb, comp, tilde};
  if (!check_endo_adjunction(sm, cm, sd.adj.unit, sd.adj.counit).passed())
    throw StructuralError("lift_comprehension_to_algebras: unit or counit is not an endo 2-cell");
  SectionData lifted{std::move(proj), std::move(section), std::move(adj), StructureSide::comprehension};
  return LiftedComprehension{std::move(base), std::move(total), tilde, std::move(sm), std::move(cm),
                             std::move(lifted)};
}

ExtremeObject extreme_object(const Category& c, Extremity which) {
  ExtremeObject out;
  for (Obj x = 0; x < c.object_count(); ++x) {
    bool ok = true;
    for (Obj y = 0; y < c.object_count() && ok; ++y) {
      ok = (which == Extremity::initial ? c.hom(x, y) : c.hom(y, x)).size() == 1;
    }
    if (!ok) continue;
    if (!out.object) out.object = x;
    ++out.count;
  }
  return out;
}

TransportVerdict check_transport(const SectionData& sd, const DistributivityPair& dp, Direction direction,
                                 AlgebraLimits limits) {
  TransportVerdict out;
  out.direction = direction;
  std::optional<LiftedComprehension> lc;
  std::optional<AlgebraBundle> base;
  std::optional<AlgebraBundle> total;
  Functor section;
  if (direction == Direction::algebra) {
    lc = lift_comprehension_to_algebras(sd, dp, limits);
    section = lc->lifted.section;
  } else {
    if (sd.side != StructureSide::quotient || !(sd.adj.right == sd.section))
      throw StructuralError("check_transport: coalgebras need ⦃-⦄ ⊣ ⋆ data");
    require_strict_section(sd, "check_transport");
    require_pair_shape(sd, dp, direction, "check_transport");
    const LawReport crit = criterion_laws(sd, dp, direction);
    if (!crit.passed()) throw StructuralError("check_transport: refused, " + first_violation(crit));
    if (!check_adjunction(sd.adj).passed()) throw StructuralError("check_transport: adjunction fails");
    base = algebra_category(dp.base_endo, direction, limits);
    total = algebra_category(dp.total_endo, direction, limits);
    const Category& e = *sd.proj.source();
    section = lift_between(
        sd.section, *base, *total,
        [&](Obj i) { return e.compose(dp.sigma.at(base->carrier[i]), sd.section.mor(base->structure[i])); },
        "lifted section");
    const Functor proj = beck_lift(sd.proj, dp.delta, *total, *base);
    if (!(compose(proj, section) == identity_functor(base->alg)))
      throw StructuralError("check_transport: lifted section is not strict");
  }
  const AlgebraBundle& bb = lc ? lc->base_algebras : *base;
  const AlgebraBundle& tb = lc ? lc->total_algebras : *total;
  const Extremity which = direction == Direction::algebra ? Extremity::initial : Extremity::terminal;
  const ExtremeObject mu = extreme_object(*bb.alg, which);
  out.mu_base_count = mu.count;
  out.mu_total = extreme_object(*tb.alg, which).object;
  if (!mu.object) return out;
  out.mu_base = mu.object;
  out.mu_base_label = bb.alg->object_label(*mu.object);
  const Obj t = section.obj(*mu.object);
  out.transported = t;
  out.transported_label = tb.alg->object_label(t);
  bool extreme = true;
  for (Obj y = 0; y < tb.alg->object_count(); ++y) {
    const std::size_t k = (which == Extremity::initial ? tb.alg->hom(t, y) : tb.alg->hom(y, t)).size();
    out.certificate.push_back(k);
    extreme = extreme && k == 1;
  }
  out.verdict = extreme ? Verdict::yes : Verdict::no;
  return out;
}

TransportVerdict check_dual_transport(const SectionData& sd, const DistributivityPair& dp,
                                      AlgebraLimits limits) {
  if (sd.side != StructureSide::comprehension)
    throw StructuralError("check_dual_transport: needs ⋆ ⊣ [-] data");
  const auto e_op = opposite(sd.proj.source());
  const auto b_op = opposite(sd.proj.target());
  const Functor p_op = opposite(sd.proj, e_op, b_op);
  const Functor star_op = opposite(sd.section, b_op, e_op);
  const Functor f_op = opposite(dp.base_endo, b_op, b_op);
  const Functor g_op = opposite(dp.total_endo, e_op, e_op);
  const SectionData dual{p_op, star_op, opposite(sd.adj, b_op, e_op), StructureSide::quotient};
  const DistributivityPair dual_pair{
      f_op, g_op, NatTrans(compose(p_op, g_op), compose(f_op, p_op), dp.delta.components()),
      NatTrans(compose(star_op, f_op), compose(g_op, star_op), dp.sigma.components())};
  return check_transport(dual, dual_pair, Direction::coalgebra, limits);
}

EndoMorphism EndoPathObject::factorize(const NatTrans& alpha, const EndoMorphism& m1,
                                       const EndoMorphism& m2) const {
  if (!same_category(m1.to.carrier, bundle.base()) || !(m1.to.endo == dom.to.endo))
    throw StructuralError("factorize: endo-morphisms do not land in the base endo-object");
  const LawReport r = check_endo_two_cell(alpha, m1, m2);
  if (!r.passed()) throw StructuralError("factorize: not a 2-cell, " + first_violation(r));
  Functor a = bundle.factorize(alpha);
  const Functor& x = m1.from.endo;
  const Functor& b = m1.to.endo;
  std::vector<Mor> comps;
  for (Obj c = 0; c < m1.from.carrier->object_count(); ++c) {
    const Mor sq = bundle.square(b.mor(alpha.at(c)), alpha.at(x.obj(c)), m1.dist.at(c), m2.dist.at(c));
    if (sq == no_mor)
      throw StructuralError("factorize: missing square at " + m1.from.carrier->object_label(c));
    comps.push_back(sq);
  }
  NatTrans dist(compose(path.endo, a), compose(a, x), std::move(comps));
  return EndoMorphism{m1.from, path, std::move(a), std::move(dist)};
}

EndoPathObject endo_arrow_path_object(const EndoObject& e) {
  ArrowBundle bundle = arrow_category(e.carrier);
  const Category& arrows = *bundle.arrows();
  const Functor& b = e.endo;
  std::vector<Obj> objs;
  for (Obj f = 0; f < arrows.object_count(); ++f) objs.push_back(b.mor(f));
  std::vector<Mor> mors;
  for (Mor s = 0; s < arrows.morphism_count(); ++s) {
    const Mor m = bundle.square(objs[arrows.dom(s)], objs[arrows.cod(s)], b.mor(bundle.top(s)),
                                b.mor(bundle.bottom(s)));
    if (m == no_mor) throw StructuralError("endo_arrow_path_object: endofunctor breaks a square");
    mors.push_back(m);
  }
  EndoObject path = endo_object(Functor(bundle.arrows(), bundle.arrows(), std::move(objs), std::move(mors)));
  const Category& base = *e.carrier;
  auto projection = [&](const Functor& side) {
    NatTrans dist(compose(b, side), compose(side, path.endo), identities_at(base, compose(b, side)));
    return EndoMorphism{path, e, side, std::move(dist)};
  };
  EndoMorphism dom = projection(bundle.dom());
  EndoMorphism cod = projection(bundle.cod());
  NatTrans hom = bundle.hom();
  return EndoPathObject{std::move(bundle), std::move(path), std::move(dom), std::move(cod), std::move(hom)};
}

}  // namespace compcat
