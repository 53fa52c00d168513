#include <doctest.h>

#include <algorithm>
#include <map>

#include "compcat/instances.hpp"
#include "oracles.hpp"

using namespace compcat;

namespace {

// All functions from positions `dom` to positions `cod`, as position maps.
std::vector<std::map<int, int>> all_functions(const std::vector<int>& dom, const std::vector<int>& cod) {
  std::vector<std::map<int, int>> out{{}};
  for (int a : dom) {
    std::vector<std::map<int, int>> next;
    for (const auto& partial : out)
      for (int b : cod) {
        auto f = partial;
        f[a] = b;
        next.push_back(std::move(f));
      }
    out = std::move(next);
  }
  return out;
}

Subset mask(std::initializer_list<int> ps) {
  Subset s = 0;
  for (int p : ps) s |= 1u << p;
  return s;
}

}  // namespace

TEST_CASE("equivalence closure") {
  const std::vector<int> carrier{0, 1, 2};
  CHECK(equivalence_closure(carrier, {}) == Partition{{{0}, {1}, {2}}});
  const std::vector<std::pair<int, int>> chain{{0, 1}, {1, 2}};
  CHECK(equivalence_closure(carrier, chain) == Partition{{{0, 1, 2}}});
  const std::vector<std::pair<int, int>> one{{0, 1}};
  CHECK(equivalence_closure(carrier, one) == Partition{{{0, 1}, {2}}});
  const std::vector<std::pair<int, int>> equiv{{0, 0}, {1, 1}, {2, 2}, {0, 2}, {2, 0}};
  const Partition fixed = equivalence_closure(carrier, equiv);
  CHECK(fixed == Partition{{{0, 2}, {1}}});
  const std::vector<std::pair<int, int>> stray{{0, 7}};
  CHECK_THROWS_AS(equivalence_closure(carrier, stray), StructuralError);
}

TEST_CASE("Pred sizes agree with function counting") {
  for (const std::vector<int> u : {std::vector<int>{0, 1}, std::vector<int>{0, 1, 2}}) {
    const auto pred = pred_instance(u);
    const int n = static_cast<int>(u.size());
    CHECK(pred.base->object_count() == (1u << n));
    std::size_t base_count = 0;
    std::size_t total_count = 0;
    for (Subset a = 0; a < (1u << n); ++a)
      for (Subset b = 0; b < (1u << n); ++b) {
        const auto fs = all_functions(positions(a), positions(b));
        base_count += fs.size();
        CHECK(pred.base->hom(a, b).size() == fs.size());
        for (Subset r = 0; r < (1u << n); ++r) {
          if (r & ~a) continue;
          for (Subset s = 0; s < (1u << n); ++s) {
            if (s & ~b) continue;
            for (const auto& f : fs) {
              bool ok = true;
              for (int p : positions(r)) ok = ok && (s >> f.at(p) & 1u);
              total_count += ok;
            }
          }
        }
      }
    CHECK(pred.base->morphism_count() == base_count);
    CHECK(pred.total->morphism_count() == total_count);
  }
  const auto two = pred_instance({0, 1});
  CHECK(two.base->hom(3, 3).size() == 4);
  CHECK(two.total->object_count() == 9);
}

TEST_CASE("Pred comprehension and inclusions") {
  const auto pred = pred_instance({0, 1});
  const Obj x = pred.total_object(mask({0, 1}), mask({0}));
  CHECK(pred.total->object_label(x) == "({0,1},{0})");
  CHECK(pred.structure.obj(x) == mask({0}));
  const NatTrans iota = whisker(pred.proj, pred.adj.counit);
  const auto incl = element_map(pred, iota.at(x));
  CHECK(incl == std::vector<int>{0, -1});
  CHECK(pred.base->dom(iota.at(x)) == mask({0}));
  CHECK(pred.base->cod(iota.at(x)) == mask({0, 1}));

  // p(f) ∘ ι = ι ∘ [f], evaluated on elements for every total morphism.
  for (Mor f = 0; f < pred.total->morphism_count(); ++f) {
    const Obj s = pred.total->dom(f);
    const auto fmap = total_element_map(pred, f);
    const auto restricted = element_map(pred, pred.structure.mor(f));
    for (int p : positions(pred.total_structure[s])) CHECK(restricted[p] == fmap[p]);
  }
  CHECK(validate_nat_trans(iota).passed());
}

TEST_CASE("instances pass their validators") {
  CHECK(validate_instance(pred_instance({0, 1})).passed());
  CHECK(validate_instance(pred_instance({0, 1, 2})).passed());
  CHECK(validate_instance(rel_instance({0, 1})).passed());
  CHECK(validate_instance(powerset_instance({0, 1, 2}, {0}, {{0, 1}, {1, 2}})).passed());
  CHECK(validate_instance(powerset_instance({0, 1}, {}, {})).passed());
  CHECK(validate_instance(pred_instance({})).passed());
}

TEST_CASE("size bounds") {
  CHECK_THROWS_AS(pred_instance({0, 1, 2, 3, 4}), ResourceError);
  CHECK_THROWS_AS(rel_instance({0, 1, 2, 3}), ResourceError);
  CHECK_THROWS_AS(powerset_instance({0, 1, 2, 3}, {}, {}), ResourceError);
  CHECK_THROWS_AS(pred_instance({0, 0}), StructuralError);
  CHECK_THROWS_AS(powerset_instance({0, 1}, {5}, {}), StructuralError);
  InstanceLimits wide;
  wide.pred_universe = 5;
  CHECK_THROWS_AS(pred_instance({0, 1, 2, 3, 4, 5}, wide), ResourceError);
}

TEST_CASE("Rel quotients agree with the closure oracle") {
  for (const std::vector<int> u : {std::vector<int>{0, 1}, std::vector<int>{0, 1, 2}}) {
    const auto rel = rel_instance(u);
    const int n = static_cast<int>(u.size());
    const NatTrans pi = whisker(rel.proj, rel.adj.unit);
    for (Obj x = 0; x < rel.total->object_count(); ++x) {
      const auto minima = oracle::closure_minima(rel.total_carrier[x], rel.total_structure[x], n);
      Subset expected = 0;
      for (int m : minima)
        if (m >= 0) expected |= 1u << m;
      CHECK(rel.base_carrier[rel.structure.obj(x)] == expected);
      const auto proj = element_map(rel, pi.at(x));
      CHECK(proj == minima);
    }
    // ⦃f⦄ ∘ π = π ∘ p(f) on elements, for every morphism.
    for (Mor f = 0; f < rel.total->morphism_count(); ++f) {
      const Obj s = rel.total->dom(f);
      const Obj t = rel.total->cod(f);
      const auto fmap = total_element_map(rel, f);
      const auto q = element_map(rel, rel.structure.mor(f));
      const auto ps = oracle::closure_minima(rel.total_carrier[s], rel.total_structure[s], n);
      const auto pt = oracle::closure_minima(rel.total_carrier[t], rel.total_structure[t], n);
      for (int p : positions(rel.total_carrier[s])) {
        if (q[ps[p]] != pt[fmap[p]]) {
          FAIL("quotient square fails at " << rel.total->morphism_label(f));
        }
      }
    }
    CHECK(check_adjunction(rel.adj).passed());
  }
  const auto rel = rel_instance({0, 1, 2});
  const Obj x = rel.total_object(mask({0, 1, 2}), 1u << (0 * 3 + 1));
  CHECK(rel.total->object_label(x) == "({0,1,2},{(0,1)})");
  CHECK(rel.base->object_label(rel.structure.obj(x)) == "{0,2}");
  const Obj discrete = rel.total_object(mask({0, 1, 2}), 0);
  CHECK(rel.structure.obj(discrete) == mask({0, 1, 2}));
  CHECK(rel.base->is_identity(whisker(rel.proj, rel.adj.unit).at(discrete)));
}

TEST_CASE("Rel with the empty-relation section has no adjunction") {
  const auto rel = rel_instance({0, 1});
  const Functor empty = empty_relation_section(rel);
  CHECK(compose(rel.proj, empty) == identity_functor(rel.base));
  // Compare |B(⦃x⦄, b)| with |E(x, ⋆b)| for the two candidate sections.
  bool mismatch = false;
  for (Obj x = 0; x < rel.total->object_count(); ++x)
    for (Obj b = 0; b < rel.base->object_count(); ++b) {
      const auto left = rel.base->hom(rel.structure.obj(x), b).size();
      CHECK(left == rel.total->hom(x, rel.section.obj(b)).size());
      mismatch = mismatch || left != rel.total->hom(x, empty.obj(b)).size();
    }
  CHECK(mismatch);
}

TEST_CASE("Pred empty-predicate section") {
  const auto pred = pred_instance({0, 1});
  const Functor empty = empty_predicate_section(pred);
  CHECK(validate_functor(empty).passed());
  CHECK(compose(pred.proj, empty) == identity_functor(pred.base));
  CHECK_THROWS_AS(empty_relation_section(pred), StructuralError);
}

TEST_CASE("powerset instance") {
  const auto pow = powerset_instance({0, 1, 2}, {0}, {{0, 1}, {1, 2}});
  REQUIRE(pow.endo);
  const Functor& f = pow.endo->base_endo;
  CHECK(f.obj(0) == mask({0}));
  CHECK(f.obj(mask({0})) == mask({0, 1}));
  CHECK(f.obj(mask({0, 1})) == mask({0, 1, 2}));
  // Monotone on objects: every morphism A ⊆ B goes to F A ⊆ F B.
  for (Mor m = 0; m < pow.base->morphism_count(); ++m) {
    const Subset a = pow.base->dom(m);
    const Subset b = pow.base->cod(m);
    CHECK((a & ~b) == 0);
    CHECK((f.obj(a) & ~f.obj(b)) == 0);
  }
  for (Mor m = 0; m < pow.total->morphism_count(); ++m) {
    const Obj x = pow.total->dom(m);
    const Obj y = pow.total->cod(m);
    CHECK((pow.total_carrier[x] & ~pow.total_carrier[y]) == 0);
    CHECK((pow.total_structure[x] & ~pow.total_structure[y]) == 0);
  }
  CHECK(compose(pow.proj, pow.endo->total_endo) == compose(f, pow.proj));
  CHECK(std::string(to_string(pow.kind)) == "pow");
}
