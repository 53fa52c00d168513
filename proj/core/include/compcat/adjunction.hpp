#pragma once

#include <optional>

#include "compcat/fincat.hpp"

namespace compcat {

// left: A → B, right: B → A, unit: Id_A ⇒ R∘L, counit: L∘R ⇒ Id_B.
struct Adjunction {
  Functor left;
  Functor right;
  NatTrans unit;
  NatTrans counit;
};

Adjunction identity_adjunction(const CategoryPtr& c);

// Assemble an adjunction from component tables, building the endpoint
// functors of the unit and counit from `left` and `right`.
Adjunction make_adjunction(Functor left, Functor right, std::vector<Mor> unit,
                           std::vector<Mor> counit);

// Naturality of unit and counit plus both triangle identities
// (`triangle.left`: εL∘Lη = id, `triangle.right`: Rε∘ηR = id).
// Throws StructuralError if the unit or counit has the wrong endpoints.
LawReport check_adjunction(const Adjunction& a);

// Exhaustive oracle that does not use the triangle identities: for all a, b
// both g ↦ R(g)∘η_a : B(La, b) → A(a, Rb) and h ↦ ε_b∘L(h) in the other
// direction are bijections.
LawReport check_hom_bijection(const Adjunction& a);

struct SearchBudget {
  std::size_t max_morphisms = 64;
};

// Right adjoint by terminal objects of the comma categories (l ↓ b), lowest
// index first.  Empty when some comma category has no terminal object.
std::optional<Adjunction> find_right_adjoint(const Functor& l, SearchBudget budget = {});

// p1: E1 → B1, p2: E2 → B2, base: L_B ⊣ R_B between B1 and B2, total:
// L_E ⊣ R_E between E1 and E2, psi: p1∘R_E ⇒ R_B∘p2.
struct MateSquare {
  Functor p1;
  Functor p2;
  Adjunction base;
  Adjunction total;
  NatTrans psi;
};

// ψ ↦ ψ̃ : L_B∘p1 ⇒ p2∘L_E, (ε_B·p2·L_E) ∘ (L_B·ψ·L_E) ∘ (L_B·p1·η_E).
NatTrans mate(const MateSquare& sq);

// The inverse transposition: χ : L_B∘p1 ⇒ p2∘L_E ↦ p1∘R_E ⇒ R_B∘p2,
// (R_B·p2·ε_E) ∘ (R_B·χ·R_E) ∘ (η_B·p1·R_E).
NatTrans mate_inverse(const Functor& p1, const Functor& p2, const Adjunction& base,
                      const Adjunction& total, const NatTrans& chi);

// L ⊣ R on A, B becomes R^op ⊣ L^op with unit ε and counit η.
Adjunction opposite(const Adjunction& adj, const CategoryPtr& a_op, const CategoryPtr& b_op);

// cod ⊣ id and id ⊣ dom on the path object of b.
struct PathAdjunctions {
  ArrowBundle bundle;
  Adjunction cod_id;
  Adjunction id_dom;
};

PathAdjunctions path_adjunctions(const CategoryPtr& b);
PathAdjunctions path_adjunctions(const ArrowBundle& bundle);

LawReport verify_cod_id_dom(const CategoryPtr& b);

}  // namespace compcat
