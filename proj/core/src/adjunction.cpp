#include "compcat/adjunction.hpp"

#include <algorithm>

namespace compcat {

namespace {

void translate(LawReport& out, const LawReport& in, const std::string& prefix) {
  for (const auto& v : in.violations()) {
    const std::string law = v.law == "nat.typing" ? prefix + ".typing" : prefix + ".naturality";
    if (v.structural)
      out.structural(law, v.witness);
    else
      out.fail(law, v.witness);
  }
}

bool is_bijection(std::vector<Mor> images, std::size_t codomain_size) {
  if (images.size() != codomain_size) return false;
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) == images.end();
}

}  // namespace

Adjunction identity_adjunction(const CategoryPtr& c) {
  const Functor id = identity_functor(c);
  return Adjunction{id, id, identity_transformation(id), identity_transformation(id)};
}

Adjunction make_adjunction(Functor left, Functor right, std::vector<Mor> unit,
                           std::vector<Mor> counit) {
  NatTrans eta(identity_functor(left.source()), compose(right, left), std::move(unit));
  NatTrans eps(compose(left, right), identity_functor(left.target()), std::move(counit));
  return Adjunction{std::move(left), std::move(right), std::move(eta), std::move(eps)};
}

LawReport check_adjunction(const Adjunction& adj) {
  const Functor& l = adj.left;
  const Functor& r = adj.right;
  if (!same_category(l.source(), r.target()) || !same_category(l.target(), r.source()))
    throw StructuralError("adjunction: left and right functors are not opposed");
  if (!(adj.unit.source() == identity_functor(l.source())) ||
      !(adj.unit.target() == compose(r, l)))
    throw StructuralError("adjunction: unit must go Id => R.L");
  if (!(adj.counit.source() == compose(l, r)) ||
      !(adj.counit.target() == identity_functor(l.target())))
    throw StructuralError("adjunction: counit must go L.R => Id");

  LawReport report;
  translate(report, validate_nat_trans(adj.unit), "unit");
  translate(report, validate_nat_trans(adj.counit), "counit");
  if (!report.passed()) return report;

  const Category& a = *l.source();
  const Category& b = *l.target();
  for (Obj x = 0; x < a.object_count(); ++x) {
    const Mor composite = b.compose(adj.counit.at(l.obj(x)), l.mor(adj.unit.at(x)));
    if (composite != b.identity(l.obj(x))) report.fail("triangle.left", "object " + a.object_label(x));
  }
  for (Obj y = 0; y < b.object_count(); ++y) {
    const Mor composite = a.compose(r.mor(adj.counit.at(y)), adj.unit.at(r.obj(y)));
    if (composite != a.identity(r.obj(y))) report.fail("triangle.right", "object " + b.object_label(y));
  }
  return report;
}

LawReport check_hom_bijection(const Adjunction& adj) {
  const Functor& l = adj.left;
  const Functor& r = adj.right;
  const Category& a = *l.source();
  const Category& b = *l.target();
  LawReport report;
  for (Obj x = 0; x < a.object_count(); ++x) {
    for (Obj y = 0; y < b.object_count(); ++y) {
      const auto left_side = b.hom(l.obj(x), y);
      const auto right_side = a.hom(x, r.obj(y));
      const std::string witness = "(" + a.object_label(x) + ", " + b.object_label(y) + ")";

      std::vector<Mor> forward;
      forward.reserve(left_side.size());
      for (Mor g : left_side) forward.push_back(a.compose(r.mor(g), adj.unit.at(x)));
      if (!is_bijection(std::move(forward), right_side.size())) report.fail("hom_bijection.unit", witness);

      std::vector<Mor> backward;
      backward.reserve(right_side.size());
      for (Mor h : right_side) backward.push_back(b.compose(adj.counit.at(y), l.mor(h)));
      if (!is_bijection(std::move(backward), left_side.size()))
        report.fail("hom_bijection.counit", witness);
    }
  }
  return report;
}

std::optional<Adjunction> find_right_adjoint(const Functor& l, SearchBudget budget) {
  const Category& a = *l.source();
  const Category& b = *l.target();
  if (b.morphism_count() > budget.max_morphisms || a.morphism_count() > budget.max_morphisms)
    throw ResourceError("find_right_adjoint: category exceeds the search budget of " +
                        std::to_string(budget.max_morphisms) + " morphisms");

  struct CommaObject {
    Obj x;
    Mor k;
  };

  std::vector<Obj> r_obj(b.object_count());
  std::vector<Mor> counit(b.object_count());
  for (Obj y = 0; y < b.object_count(); ++y) {
    std::vector<CommaObject> comma;
    for (Obj x = 0; x < a.object_count(); ++x) {
      for (Mor k : b.hom(l.obj(x), y)) comma.push_back({x, k});
    }
    std::sort(comma.begin(), comma.end(), [](const CommaObject& p, const CommaObject& q) {
      return std::tie(p.x, p.k) < std::tie(q.x, q.k);
    });
    auto terminal = std::find_if(comma.begin(), comma.end(), [&](const CommaObject& t) {
      return std::all_of(comma.begin(), comma.end(), [&](const CommaObject& s) {
        std::size_t mediating = 0;
        for (Mor h : a.hom(s.x, t.x)) {
          if (b.compose(t.k, l.mor(h)) == s.k) ++mediating;
        }
        return mediating == 1;
      });
    });
    if (terminal == comma.end()) return std::nullopt;
    r_obj[y] = terminal->x;
    counit[y] = terminal->k;
  }

  // R on morphisms and the unit both come from the universal property of ε.
  auto universal = [&](Obj from, Obj y, Mor g) {
    for (Mor h : a.hom(from, r_obj[y])) {
      if (b.compose(counit[y], l.mor(h)) == g) return h;
    }
    throw StructuralError("find_right_adjoint: universal arrow has no mediating morphism");
  };

  std::vector<Mor> r_mor(b.morphism_count());
  for (Mor g = 0; g < b.morphism_count(); ++g) {
    const Obj y = b.dom(g);
    r_mor[g] = universal(r_obj[y], b.cod(g), b.compose(g, counit[y]));
  }
  std::vector<Mor> unit(a.object_count());
  for (Obj x = 0; x < a.object_count(); ++x)
    unit[x] = universal(x, l.obj(x), b.identity(l.obj(x)));

  Functor r(l.target(), l.source(), std::move(r_obj), std::move(r_mor));
  return make_adjunction(l, std::move(r), std::move(unit), std::move(counit));
}

NatTrans mate(const MateSquare& sq) {
  const Functor& l_b = sq.base.left;
  const Functor& r_b = sq.base.right;
  const Functor& l_e = sq.total.left;
  const Functor& r_e = sq.total.right;
  if (!(sq.psi.source() == compose(sq.p1, r_e)) || !(sq.psi.target() == compose(r_b, sq.p2)))
    throw StructuralError("mate: psi must go p1.R_E => R_B.p2");
  const Category& e1 = *sq.p1.source();
  const Category& b2 = *sq.p2.target();
  std::vector<Mor> comps(e1.object_count());
  for (Obj e = 0; e < comps.size(); ++e) {
    const Mor first = l_b.mor(sq.p1.mor(sq.total.unit.at(e)));
    const Mor second = l_b.mor(sq.psi.at(l_e.obj(e)));
    const Mor third = sq.base.counit.at(sq.p2.obj(l_e.obj(e)));
    comps[e] = b2.compose(third, b2.compose(second, first));
  }
  return NatTrans(compose(l_b, sq.p1), compose(sq.p2, l_e), std::move(comps));
}

NatTrans mate_inverse(const Functor& p1, const Functor& p2, const Adjunction& base,
                      const Adjunction& total, const NatTrans& chi) {
  const Functor& l_b = base.left;
  const Functor& r_b = base.right;
  const Functor& l_e = total.left;
  const Functor& r_e = total.right;
  if (!(chi.source() == compose(l_b, p1)) || !(chi.target() == compose(p2, l_e)))
    throw StructuralError("mate_inverse: transformation must go L_B.p1 => p2.L_E");
  const Category& e2 = *p2.source();
  const Category& b1 = *p1.target();
  std::vector<Mor> comps(e2.object_count());
  for (Obj e = 0; e < comps.size(); ++e) {
    const Mor first = base.unit.at(p1.obj(r_e.obj(e)));
    const Mor second = r_b.mor(chi.at(r_e.obj(e)));
    const Mor third = r_b.mor(p2.mor(total.counit.at(e)));
    comps[e] = b1.compose(third, b1.compose(second, first));
  }
  return NatTrans(compose(p1, r_e), compose(r_b, p2), std::move(comps));
}

Adjunction opposite(const Adjunction& adj, const CategoryPtr& a_op, const CategoryPtr& b_op) {
  Functor left = opposite(adj.right, b_op, a_op);
  Functor right = opposite(adj.left, a_op, b_op);
  return make_adjunction(std::move(left), std::move(right), adj.counit.components(),
                         adj.unit.components());
}

PathAdjunctions path_adjunctions(const CategoryPtr& b) { return path_adjunctions(arrow_category(b)); }

PathAdjunctions path_adjunctions(const ArrowBundle& bundle) {
  const Category& base = *bundle.base();
  const Category& arrows = *bundle.arrows();

  std::vector<Mor> cod_unit(arrows.object_count());
  for (Obj f = 0; f < cod_unit.size(); ++f) {
    const Obj c = base.cod(f);
    cod_unit[f] = bundle.square(f, base.identity(c), f, base.identity(c));
  }
  std::vector<Mor> cod_counit(base.object_count());
  for (Obj x = 0; x < cod_counit.size(); ++x) cod_counit[x] = base.identity(x);

  std::vector<Mor> dom_unit(base.object_count());
  for (Obj x = 0; x < dom_unit.size(); ++x) dom_unit[x] = base.identity(x);
  std::vector<Mor> dom_counit(arrows.object_count());
  for (Obj f = 0; f < dom_counit.size(); ++f) {
    const Obj d = base.dom(f);
    dom_counit[f] = bundle.square(base.identity(d), f, base.identity(d), f);
  }

  return PathAdjunctions{bundle,
                         make_adjunction(bundle.cod(), bundle.id(), std::move(cod_unit),
                                         std::move(cod_counit)),
                         make_adjunction(bundle.id(), bundle.dom(), std::move(dom_unit),
                                         std::move(dom_counit))};
}

LawReport verify_cod_id_dom(const CategoryPtr& b) {
  const PathAdjunctions path = path_adjunctions(b);
  LawReport report;
  report.merge(check_adjunction(path.cod_id), "cod_id.");
  report.merge(check_adjunction(path.id_dom), "id_dom.");
  const Functor id_b = identity_functor(b);
  if (!(compose(path.bundle.dom(), path.bundle.id()) == id_b))
    report.fail("path.dom_id", "dom.id differs from the identity functor");
  if (!(compose(path.bundle.cod(), path.bundle.id()) == id_b))
    report.fail("path.cod_id", "cod.id differs from the identity functor");
  return report;
}

}  // namespace compcat
