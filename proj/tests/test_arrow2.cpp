#include <doctest.h>

#include "compcat/arrow2.hpp"
#include "oracles.hpp"

using namespace compcat;

namespace {

CategoryPtr idempotent() {
  CategoryBuilder b;
  const Obj x = b.add_object("*");
  b.ensure_identities();
  const Mor e = b.add_morphism("e", x, x);
  b.set_compose(e, e, e);
  b.infer_identity_composites();
  return share(b.build());
}

ArrowObject identity_object(const CategoryPtr& c) { return arrow_object(identity_functor(c)); }

// cod ⊣ id taken as both the base and the total adjunction between
// (C^→, C^→, Id) and (C, C, Id).
struct PathFixture {
  PathAdjunctions path;
  ArrowObject lower;
  ArrowObject upper;
};

PathFixture path_fixture(const CategoryPtr& c) {
  auto path = path_adjunctions(c);
  const ArrowObject lower = identity_object(path.bundle.arrows());
  const ArrowObject upper = identity_object(c);
  return {std::move(path), lower, upper};
}

LiftData lift_data(const PathFixture& fx, std::vector<Mor> phi, std::vector<Mor> psi) {
  const Adjunction& adj = fx.path.cod_id;
  NatTrans phi_cell(compose(fx.upper.proj, adj.left), compose(adj.left, fx.lower.proj),
                    std::move(phi));
  NatTrans psi_cell(compose(fx.lower.proj, adj.right), compose(adj.right, fx.upper.proj),
                    std::move(psi));
  return LiftData{fx.lower, fx.upper, adj, adj, std::move(phi_cell), std::move(psi_cell)};
}

}  // namespace

TEST_CASE("identity lax morphism is lawful and strict") {
  for (auto c : {terminal_category(), walking_arrow(), idempotent()}) {
    const auto bundle = arrow_category(c);
    const ArrowObject a = arrow_object(bundle.cod());
    const LaxMorphism id = identity_lax(a);
    CHECK(id.strict);
    CHECK(check_lax_morphism(id).passed());
    CHECK(check_two_cell(identity_two_cell(id), id, id).passed());
  }
}

TEST_CASE("lax morphism with non-identity phi") {
  // (cod, Id) from (C^→, C, dom) to (C, C, Id): φ_f = f : dom f → cod f.
  auto walk = walking_arrow();
  const auto bundle = arrow_category(walk);
  const ArrowObject src = arrow_object(bundle.dom());
  const ArrowObject dst = identity_object(walk);
  std::vector<Mor> phi = bundle.hom().components();
  // φ must go p2∘f_E ⇒ f_B∘p1, here cod ⇒ dom, so the component at u is mistyped.
  const auto mistyped = check_lax_morphism(make_lax(src, dst, bundle.cod(), identity_functor(walk), phi));
  REQUIRE(mistyped.has("lax.phi.typing"));
  CHECK(mistyped.violations().front().structural);

  // (dom, Id) from (C^→, C, cod): φ: dom ⇒ cod is hom itself.
  const ArrowObject over_cod = arrow_object(bundle.cod());
  const LaxMorphism m =
      make_lax(over_cod, dst, bundle.dom(), identity_functor(walk), std::move(phi));
  CHECK_FALSE(m.strict);
  CHECK(check_lax_morphism(m).passed());

  LaxMorphism lying = m;
  lying.strict = true;
  CHECK(check_lax_morphism(lying).has("lax.strict_flag"));
}

TEST_CASE("composition of lax morphisms") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto c = generate_category(seed, 3, 6);
    const auto bundle = arrow_category(c);
    const ArrowObject over_cod = arrow_object(bundle.cod());
    const ArrowObject plain = identity_object(c);
    const LaxMorphism m = make_lax(over_cod, plain, bundle.dom(), identity_functor(c),
                                   bundle.hom().components());
    const LaxMorphism id_src = identity_lax(over_cod);
    const LaxMorphism id_dst = identity_lax(plain);

    const LaxMorphism left_unit = compose_lax(id_dst, m);
    const LaxMorphism right_unit = compose_lax(m, id_src);
    CHECK(left_unit.phi == m.phi);
    CHECK(right_unit.phi == m.phi);
    CHECK(compose_lax(id_dst, id_dst).strict);

    // (C, C, Id) → (C, C, Id) via an endofunctor with an identity cell.
    const LaxMorphism k = identity_lax(plain);
    const LaxMorphism a1 = compose_lax(k, compose_lax(k, m));
    const LaxMorphism a2 = compose_lax(compose_lax(k, k), m);
    CHECK(a1.phi.components() == a2.phi.components());
    CHECK(a1.on_total == a2.on_total);
    CHECK(check_lax_morphism(a1).passed());

    // (id, id) into (C^→, C, cod) then out: strict∘lax keeps phi.
    const LaxMorphism into = make_lax(plain, over_cod, bundle.id(), identity_functor(c),
                                      identity_transformation(identity_functor(c)).components());
    CHECK(into.strict);
    const LaxMorphism round = compose_lax(m, into);
    CHECK(check_lax_morphism(round).passed());
    CHECK(round.strict);  // hom·id is the identity 2-cell

    if (!same_arrow_object(m.to, m.from)) CHECK_THROWS_AS(compose_lax(m, m), StructuralError);
  }
}

TEST_CASE("two-cell pasting detects a perturbed component") {
  auto c = idempotent();
  const auto fx = path_fixture(c);
  const auto lifted = lift_adjunction(lift_data(fx, {0, 0}, {0}));
  REQUIRE(lifted.adjunction);
  const ArrowAdjunction& adj = *lifted.adjunction;
  CHECK(check_arrow_adjunction(adj).passed());

  // Unit at object e of C^→: the square (e, id). Replace θ_E there by the identity.
  const LaxMorphism source = identity_lax(adj.left.from);
  const LaxMorphism target = compose_lax(adj.right, adj.left);
  auto comps = adj.unit.theta_total.components();
  const Mor e_obj = 1;
  REQUIRE(comps[e_obj] != fx.path.bundle.arrows()->identity(e_obj));
  bool caught = false;
  for (Mor alt : fx.path.bundle.arrows()->hom(e_obj, target.on_total.obj(e_obj))) {
    if (alt == comps[e_obj]) continue;
    auto bent = comps;
    bent[e_obj] = alt;
    ArrowTwoCell t{adj.unit.theta_base,
                   NatTrans(adj.unit.theta_total.source(), adj.unit.theta_total.target(), bent)};
    const auto report = check_two_cell(t, source, target);
    CHECK_FALSE(report.passed());
    caught = true;
  }
  CHECK(caught);
}

TEST_CASE("two-cell check rejects non-parallel morphisms") {
  auto walk = walking_arrow();
  const auto bundle = arrow_category(walk);
  const LaxMorphism a = identity_lax(identity_object(walk));
  const LaxMorphism b = identity_lax(arrow_object(bundle.cod()));
  CHECK_THROWS_AS(check_two_cell(identity_two_cell(a), a, b), StructuralError);
}

TEST_CASE("all-identity lifting") {
  for (auto c : {terminal_category(), walking_arrow(), idempotent()}) {
    const ArrowObject a = identity_object(c);
    const Adjunction id = identity_adjunction(c);
    const auto cell = identity_transformation(identity_functor(c));
    const LiftData d{a, a, id, id, cell, cell};
    const auto result = lift_adjunction(d);
    CHECK(result.diagnosis == LiftDiagnosis::lifted);
    REQUIRE(result.adjunction);
    CHECK(result.adjunction->left.strict);
    CHECK(check_arrow_adjunction(*result.adjunction).passed());
    CHECK(check_adjunction(project_base(*result.adjunction)).passed());
    CHECK(check_adjunction(project_total(*result.adjunction)).passed());
  }
}

TEST_CASE("lifting criterion agrees with the direct check on path fixtures") {
  std::vector<CategoryPtr> corpus{terminal_category(), walking_arrow(), idempotent()};
  for (std::uint64_t seed = 0; seed < 25; ++seed) corpus.push_back(generate_category(seed, 3, 5));

  std::size_t lifted = 0;
  std::size_t not_invertible = 0;
  std::size_t not_mate = 0;
  for (const auto& c : corpus) {
    const auto fx = path_fixture(c);
    const Adjunction& adj = fx.path.cod_id;
    const auto phis = oracle::natural_transformations(compose(fx.upper.proj, adj.left),
                                                      compose(adj.left, fx.lower.proj));
    const auto psis = oracle::natural_transformations(compose(fx.lower.proj, adj.right),
                                                      compose(adj.right, fx.upper.proj));
    for (const auto& phi : phis) {
      for (const auto& psi : psis) {
        const LiftData d = lift_data(fx, phi, psi);
        const auto result = lift_adjunction(d);
        const bool direct = check_arrow_adjunction(d).passed();
        CHECK(direct == (result.diagnosis == LiftDiagnosis::lifted));
        switch (result.diagnosis) {
          case LiftDiagnosis::lifted:
            ++lifted;
            REQUIRE(result.adjunction);
            CHECK(check_arrow_adjunction(*result.adjunction).passed());
            break;
          case LiftDiagnosis::phi_not_invertible:
            ++not_invertible;
            CHECK_FALSE(result.adjunction);
            break;
          case LiftDiagnosis::psi_not_mate:
            ++not_mate;
            CHECK_FALSE(result.adjunction);
            break;
        }
      }
    }
  }
  CHECK(lifted == corpus.size());
  CHECK(not_invertible > 0);
  CHECK(not_mate > 0);
}

TEST_CASE("idempotent fixture diagnoses") {
  const auto fx = path_fixture(idempotent());
  const Mor e = 1;
  // C^→ has objects id (0) and e (1); φ: cod ⇒ cod, ψ: id ⇒ id.
  const auto e_square = fx.path.bundle.square(0, 0, e, e);
  REQUIRE(e_square != no_mor);

  CHECK(lift_adjunction(lift_data(fx, {0, 0}, {0})).diagnosis == LiftDiagnosis::lifted);
  CHECK(lift_adjunction(lift_data(fx, {e, e}, {0})).diagnosis ==
        LiftDiagnosis::phi_not_invertible);
  CHECK(lift_adjunction(lift_data(fx, {0, 0}, {e_square})).diagnosis ==
        LiftDiagnosis::psi_not_mate);
  CHECK(check_arrow_adjunction(lift_data(fx, {0, 0}, {e_square})).has("arrow.unit.two_cell.pasting"));
}

TEST_CASE("broken component adjunction is structural") {
  auto c = idempotent();
  const auto fx = path_fixture(c);
  auto counit = fx.path.cod_id.counit.components();
  counit[0] = 1;
  const Adjunction broken = make_adjunction(fx.path.cod_id.left, fx.path.cod_id.right,
                                            fx.path.cod_id.unit.components(), counit);
  LiftData d = lift_data(fx, {0, 0}, {0});
  d.base = broken;
  CHECK_THROWS_AS(lift_adjunction(d), StructuralError);
  CHECK_FALSE(check_arrow_adjunction(d).passed());
}

TEST_CASE("diagnosis names") {
  CHECK(std::string(to_string(LiftDiagnosis::lifted)) == "lifted");
  CHECK(std::string(to_string(LiftDiagnosis::phi_not_invertible)) == "phi-not-invertible");
  CHECK(std::string(to_string(LiftDiagnosis::psi_not_mate)) == "psi-not-mate");
}

TEST_CASE("non-natural phi is structural") {
  const auto fx = path_fixture(idempotent());
  const Adjunction& adj = fx.path.cod_id;
  const Functor from = compose(fx.upper.proj, adj.left);
  const Functor to = compose(adj.left, fx.lower.proj);
  std::size_t seen = 0;
  oracle::for_each_assignment(from, to, [&](const std::vector<Mor>& phi) {
    if (oracle::is_natural(from, to, phi)) return;
    const LiftData d = lift_data(fx, phi, {0});
    CHECK_THROWS_AS(lift_adjunction(d), StructuralError);
    CHECK_FALSE(check_arrow_adjunction(d).passed());
    ++seen;
  });
  CHECK(seen > 0);
}
