#pragma once

// Hand-built fixtures shared by the unit tests and the acceptance binary.

#include <utility>
#include <vector>

#include "compcat/endoalg.hpp"

namespace fixture {

using namespace compcat;

// One object with a non-identity idempotent e.
inline CategoryPtr idempotent() {
  CategoryBuilder b;
  const Obj x = b.add_object("*");
  b.ensure_identities();
  const Mor e = b.add_morphism("e", x, x);
  b.set_compose(e, e, e);
  b.infer_identity_composites();
  return share(b.build());
}

// Two objects joined by an isomorphism.
inline CategoryPtr iso_pair() {
  CategoryBuilder b;
  const Obj x = b.add_object("a");
  const Obj y = b.add_object("b");
  b.ensure_identities();
  const Mor f = b.add_morphism("f", x, y);
  const Mor g = b.add_morphism("g", y, x);
  b.set_compose(g, f, 0);
  b.set_compose(f, g, 1);
  b.infer_identity_composites();
  return share(b.build());
}

inline Subset step(Subset s, const std::vector<std::pair<int, int>>& edges) {
  Subset out = 0;
  for (const auto& [from, to] : edges)
    if (s >> from & 1u) out |= 1u << to;
  return out;
}

inline Subset mask_of(const std::vector<int>& elements) {
  Subset s = 0;
  for (int e : elements) s |= 1u << e;
  return s;
}

inline Mor thin_arrow(const Category& c, Obj x, Obj y) {
  const auto hom = c.hom(x, y);
  if (hom.size() != 1) throw StructuralError("thin_arrow: no unique morphism");
  return hom[0];
}

inline Functor thin_functor(const CategoryPtr& c, std::vector<Obj> objs) {
  std::vector<Mor> mors;
  for (Mor m = 0; m < c->morphism_count(); ++m)
    mors.push_back(thin_arrow(*c, objs[c->dom(m)], objs[c->cod(m)]));
  return Functor(c, c, std::move(objs), std::move(mors));
}

// POW over the universe {0, .., n-1} (elements equal positions) with G
// replaced by (A, R) ↦ (F A, step(R) ∪ (base ∩ R)).  δ stays the identity
// and σ: G∘⋆ ⇒ ⋆∘F is the inclusion, strict wherever base ⊄ A.
inline DistributivityPair weakened_pow_pair(const InstanceBundle& pow, const std::vector<int>& base_set,
                                            const std::vector<std::pair<int, int>>& edges) {
  const Subset base = mask_of(base_set);
  const Functor& f = pow.endo->base_endo;
  std::vector<Obj> objs;
  for (Obj x = 0; x < pow.total->object_count(); ++x) {
    const Subset a = pow.total_carrier[x];
    const Subset r = pow.total_structure[x];
    objs.push_back(pow.total_object(base | step(a, edges), step(r, edges) | (base & r)));
  }
  Functor g = thin_functor(pow.total, std::move(objs));
  std::vector<Mor> delta;
  for (Obj x = 0; x < pow.total->object_count(); ++x) delta.push_back(pow.base->identity(f.obj(pow.proj.obj(x))));
  std::vector<Mor> sigma;
  for (Obj a = 0; a < pow.base->object_count(); ++a)
    sigma.push_back(thin_arrow(*pow.total, g.obj(pow.section.obj(a)), pow.section.obj(f.obj(a))));
  NatTrans d(compose(f, pow.proj), compose(pow.proj, g), std::move(delta));
  NatTrans s(compose(g, pow.section), compose(pow.section, f), std::move(sigma));
  return DistributivityPair{f, std::move(g), std::move(d), std::move(s)};
}

// p ⊣ ⋆ on a POW instance: ⦃(A, R)⦄ = A.
inline SectionData pow_quotient_data(const InstanceBundle& pow) {
  std::vector<Mor> unit;
  for (Obj x = 0; x < pow.total->object_count(); ++x)
    unit.push_back(thin_arrow(*pow.total, x, pow.section.obj(pow.proj.obj(x))));
  std::vector<Mor> counit;
  for (Obj a = 0; a < pow.base->object_count(); ++a) counit.push_back(pow.base->identity(a));
  return SectionData{pow.proj, pow.section, make_adjunction(pow.proj, pow.section, unit, counit),
                     StructureSide::quotient};
}

// The same pair retyped for coalgebras over p ⊣ ⋆ (all components identities).
inline DistributivityPair pow_coalgebra_pair(const InstanceBundle& pow) {
  const EndoData& d = *pow.endo;
  NatTrans delta(compose(pow.proj, d.total_endo), compose(d.base_endo, pow.proj), d.delta.components());
  NatTrans sigma(compose(pow.section, d.base_endo), compose(d.total_endo, pow.section), d.sigma.components());
  return DistributivityPair{d.base_endo, d.total_endo, std::move(delta), std::move(sigma)};
}

// Least fixed point of A ↦ base ∪ step(A) by Kleene iteration from ∅, and
// the greatest one from the full universe.
inline Subset kleene_least(Subset base, const std::vector<std::pair<int, int>>& edges) {
  Subset a = 0;
  for (;;) {
    const Subset next = base | step(a, edges);
    if (next == a) return a;
    a = next;
  }
}

inline Subset kleene_greatest(Subset universe, Subset base, const std::vector<std::pair<int, int>>& edges) {
  Subset a = universe;
  for (;;) {
    const Subset next = (base | step(a, edges)) & universe;
    if (next == a) return a;
    a = next;
  }
}

}  // namespace fixture
