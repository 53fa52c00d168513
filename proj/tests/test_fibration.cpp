#include <doctest.h>

#include <algorithm>

#include "compcat/fibration.hpp"
#include "compcat/instances.hpp"
#include "oracles.hpp"

using namespace compcat;

namespace {

Functor selector(const CategoryPtr& target, Obj x) {
  auto term = terminal_category();
  return Functor(term, target, {x}, {target->identity(x)});
}

CategoryPtr idempotent() {
  CategoryBuilder b;
  const Obj x = b.add_object("*");
  b.ensure_identities();
  const Mor e = b.add_morphism("e", x, x);
  b.set_compose(e, e, e);
  b.infer_identity_composites();
  return share(b.build());
}

// a over 0, b and c over 1, with s: a → b and t: a → c both over u and
// nothing between b and c: neither lift of u is opcartesian.
struct NoLift {
  Functor proj;
  Functor section;
};

NoLift no_lift_fixture() {
  auto walk = walking_arrow();
  CategoryBuilder b;
  const Obj a = b.add_object("a");
  const Obj bo = b.add_object("b");
  const Obj c = b.add_object("c");
  b.ensure_identities();
  const Mor s = b.add_morphism("s", a, bo);
  b.add_morphism("t", a, c);
  b.infer_identity_composites();
  auto e = share(b.build());
  const Mor u = 2;
  Functor p(e, walk, {0, 1, 1}, {0, 1, 1, u, u});
  Functor section(walk, e, {a, bo}, {e->identity(a), e->identity(bo), s});
  return {p, section};
}

Subset image_of(const std::vector<int>& map, Subset s) {
  Subset out = 0;
  for (int p : positions(s)) out |= 1u << map[p];
  return out;
}

Subset preimage_of(const std::vector<int>& map, Subset dom, Subset s) {
  Subset out = 0;
  for (int p : positions(dom))
    if (s >> map[p] & 1u) out |= 1u << p;
  return out;
}

}  // namespace

TEST_CASE("identities are cartesian and opcartesian") {
  const auto pred = pred_instance({0, 1});
  for (Obj x = 0; x < pred.total->object_count(); ++x) {
    const auto st = cartesian_status(pred.proj, pred.total->identity(x));
    CHECK(st.is_cartesian);
    CHECK(st.is_opcartesian);
  }
  auto walk = walking_arrow();
  for (Obj x = 0; x < 2; ++x) {
    const auto st = cartesian_status(identity_functor(walk), walk->identity(x));
    CHECK(st.is_cartesian);
    CHECK(st.is_opcartesian);
  }
}

TEST_CASE("Pred: cartesian iff pullback, opcartesian iff pushforward") {
  const auto pred = pred_instance({0, 1});
  for (Mor g = 0; g < pred.total->morphism_count(); ++g) {
    const Obj x = pred.total->dom(g);
    const Obj y = pred.total->cod(g);
    const auto map = total_element_map(pred, g);
    const bool push = image_of(map, pred.total_structure[x]) == pred.total_structure[y];
    const bool pull =
        preimage_of(map, pred.total_carrier[x], pred.total_structure[y]) == pred.total_structure[x];
    const auto st = cartesian_status(pred.proj, g);
    CHECK(st.is_opcartesian == push);
    CHECK(st.is_cartesian == pull);
    CHECK(st.is_cartesian == st.cartesian_witnesses.empty());
  }
  // ∅ ⊆ {0} over the identity of {0} is not cartesian.
  const Obj empty = pred.total_object(0b01, 0);
  const Obj full = pred.total_object(0b01, 0b01);
  const auto hom = pred.total->hom(empty, full);
  REQUIRE(hom.size() == 1);
  const auto st = cartesian_status(pred.proj, hom[0]);
  CHECK_FALSE(st.is_cartesian);
  CHECK_FALSE(st.cartesian_witnesses.empty());
}

TEST_CASE("classification") {
  auto walk = walking_arrow();
  const auto id_class = classify_functor(identity_functor(walk));
  CHECK(id_class.is_bifibration);

  const auto pred = pred_instance({0, 1});
  const auto pc = classify_functor(pred.proj);
  CHECK(pc.is_fibration);
  CHECK(pc.is_opfibration);
  CHECK(pc.is_bifibration);

  const auto sel = classify_functor(selector(walk, 0));
  CHECK_FALSE(sel.is_opfibration);
  CHECK_FALSE(sel.is_bifibration);
  REQUIRE_FALSE(sel.missing_opcartesian.empty());
  CHECK(sel.missing_opcartesian.front() == "(u, *)");
}

TEST_CASE("fibers") {
  auto walk = walking_arrow();
  const Fiber f = fiber(identity_functor(walk), 1);
  CHECK(f.category->object_count() == 1);
  CHECK(f.category->morphism_count() == 1);

  const auto pred = pred_instance({0, 1});
  const Fiber top = fiber(pred.proj, pred.base_object(0b11));
  CHECK(top.category->object_count() == 4);
  CHECK(top.category->morphism_count() == 9);
  CHECK(validate_category(*top.category).passed());

  const Fiber none = fiber(selector(walk, 0), 1);
  CHECK(none.category->object_count() == 0);
  CHECK(validate_category(*none.category).passed());
}

TEST_CASE("Pred image structure") {
  for (const std::vector<int> u : {std::vector<int>{0, 1}, std::vector<int>{0, 1, 2}}) {
    const auto pred = pred_instance(u);
    const auto s = build_image_structure(pred.proj, pred.section);
    REQUIRE(s);
    for (Mor f = 0; f < pred.base->morphism_count(); ++f) {
      const Obj a = pred.base->dom(f);
      const Obj target = s->pushforward[f];
      const Subset carrier = pred.base_carrier[pred.base->cod(f)];
      const Subset expected = image_of(element_map(pred, f), pred.base_carrier[a]);
      CHECK(pred.total_carrier[target] == carrier);
      CHECK(pred.total_structure[target] == expected);
      if (pred.base->is_identity(f)) CHECK(s->lift[f] == pred.total->identity(pred.section.obj(a)));
    }
    if (u.size() == 2) {
      for (Mor l : s->lift) CHECK(cartesian_status(pred.proj, l).is_opcartesian);
    }
    CHECK(check_image_coherence(*s).passed());
  }
}

TEST_CASE("image structure preconditions and absence") {
  const auto nl = no_lift_fixture();
  CHECK(validate_functor(nl.proj).passed());
  CHECK_FALSE(build_image_structure(nl.proj, nl.section));
  CHECK_FALSE(classify_functor(nl.proj).is_opfibration);

  const auto pred = pred_instance({0, 1});
  const Functor twisted = compose(pred.section, pred.proj);
  CHECK_THROWS_AS(build_image_structure(pred.proj, twisted), StructuralError);
}

TEST_CASE("corrupted identity lifts are detected") {
  auto c = idempotent();
  auto term = terminal_category();
  const Functor p(c, term, {0}, {0, 0});
  const auto s = build_image_structure(p, selector(c, 0));
  REQUIRE(s);
  CHECK(check_image_coherence(*s).passed());
  ImageStructure bent = *s;
  bent.lift[0] = 1;  // e
  CHECK(check_image_coherence(bent).has("image.identity.lambda"));
  CHECK_FALSE(is_opcartesian(p, 1));

  const auto pred = pred_instance({0, 1});
  auto ps = build_image_structure(pred.proj, pred.section);
  REQUIRE(ps);
  // Rebind λ at id_{0,1} to the swap, an endomorphism of ⋆{0,1}.
  const Obj full = pred.base_object(0b11);
  const Obj star = pred.section.obj(full);
  Mor swap = no_mor;
  for (Mor g : pred.total->hom(star, star)) {
    if (total_element_map(pred, g) == std::vector<int>{1, 0}) swap = g;
  }
  REQUIRE(swap != no_mor);
  ImageStructure broken = *ps;
  broken.lift[pred.base->identity(full)] = swap;
  const auto report = check_image_coherence(broken);
  CHECK(report.has("image.identity.lambda"));
  CHECK(report.has("image.lambda.over"));
}

TEST_CASE("image functor on Pred") {
  const auto pred = pred_instance({0, 1});
  const auto s = build_image_structure(pred.proj, pred.section);
  REQUIRE(s);
  const auto arrows = arrow_category(pred.base);
  const Functor image = image_functor(*s, arrows);
  CHECK(validate_functor(image).passed());
  CHECK(compose(pred.proj, image) == arrows.cod());
  CHECK(compose(image, arrows.id()) == pred.section);
  for (Mor f = 0; f < pred.base->morphism_count(); ++f) {
    const Obj x = image.obj(f);
    CHECK(pred.total_structure[x] ==
          image_of(element_map(pred, f), pred.base_carrier[pred.base->dom(f)]));
  }
}

TEST_CASE("image functor over WALK-shaped data") {
  auto walk = walking_arrow();
  const Functor id = identity_functor(walk);
  const auto s = build_image_structure(id, id);
  REQUIRE(s);
  const auto arrows = arrow_category(walk);
  CHECK(arrows.arrows()->morphism_count() == 6);
  const Functor image = image_functor(*s, arrows);
  CHECK(validate_functor(image).passed());
  CHECK(image == arrows.cod());
}

TEST_CASE("breaking an action breaks functoriality of the image functor") {
  // cod: B^→ → B is a non-faithful opfibration, so actions have same-typed
  // alternatives over the same base arrow.
  std::vector<CategoryPtr> corpus{idempotent(), walking_arrow()};
  for (std::uint64_t seed = 0; seed < 30; ++seed) corpus.push_back(generate_category(seed, 3, 6));
  std::size_t tried = 0;
  std::size_t unseen_by_functor = 0;
  for (const auto& b : corpus) {
    const auto bundle = arrow_category(b);
    const auto s = build_image_structure(bundle.cod(), bundle.id());
    REQUIRE(s);
    REQUIRE(check_image_coherence(*s).passed());
    CHECK(validate_functor(image_functor(*s, bundle)).passed());
    const Category& e = *bundle.arrows();
    for (const bool post : {true, false}) {
      const auto& table = post ? s->post : s->pre;
      for (const auto& [key, g] : table) {
        const Mor u = static_cast<Mor>(key >> 32);
        const Mor over = post ? static_cast<Mor>(key & 0xffffffffu) : b->identity(b->cod(u));
        for (Mor alt : e.hom(e.dom(g), e.cod(g))) {
          if (alt == g || bundle.cod().mor(alt) != over) continue;
          ImageStructure bent = *s;
          (post ? bent.post : bent.pre)[key] = alt;
          ++tried;
          CHECK_FALSE(check_image_coherence(bent).passed());
          CHECK_THROWS_AS(image_functor(bent, bundle), StructuralError);
          const bool broken = !validate_functor(assemble_image_functor(bent, bundle)).passed();
          // v▷ at u = id is never a composite of other squares, so only the
          // coherence check sees it.
          if (post && b->is_identity(u)) {
            unseen_by_functor += !broken;
          } else {
            CHECK(broken);
          }
        }
      }
    }
  }
  CHECK(tried > 0);
  CHECK(unseen_by_functor > 0);
}
