#pragma once

#include <optional>

#include "compcat/adjunction.hpp"

namespace compcat {

// A functor p: E → B viewed as an object of Cat//Cat.
struct ArrowObject {
  CategoryPtr total;
  CategoryPtr base;
  Functor proj;
};

ArrowObject arrow_object(const Functor& p);

bool same_arrow_object(const ArrowObject& a, const ArrowObject& b);

// (f_E, f_B, φ: p2∘f_E ⇒ f_B∘p1) from (E1, B1, p1) to (E2, B2, p2).
struct LaxMorphism {
  ArrowObject from;
  ArrowObject to;
  Functor on_total;
  Functor on_base;
  NatTrans phi;
  bool strict = false;
};

// Builds the morphism and sets `strict` from the components of φ.
LaxMorphism make_lax(const ArrowObject& from, const ArrowObject& to, Functor on_total,
                     Functor on_base, std::vector<Mor> phi);
LaxMorphism identity_lax(const ArrowObject& a);

bool is_identity_transformation(const NatTrans& a);

LawReport check_lax_morphism(const LaxMorphism& m);

// outer ∘ inner, with φ = (f2_B·φ1) ∘ (φ2·f1_E).
LaxMorphism compose_lax(const LaxMorphism& outer, const LaxMorphism& inner);

struct ArrowTwoCell {
  NatTrans theta_base;
  NatTrans theta_total;
};

ArrowTwoCell identity_two_cell(const LaxMorphism& m);

// Naturality of both components, then (θ_B·p1)∘φ1 = φ2∘(p2·θ_E) at every
// object of the source total category.  Throws on non-parallel morphisms.
LawReport check_two_cell(const ArrowTwoCell& t, const LaxMorphism& m1, const LaxMorphism& m2);

struct ArrowAdjunction {
  LaxMorphism left;
  LaxMorphism right;
  ArrowTwoCell unit;
  ArrowTwoCell counit;
};

Adjunction project_base(const ArrowAdjunction& a);
Adjunction project_total(const ArrowAdjunction& a);

enum class LiftDiagnosis {
  lifted,
  phi_not_invertible,
  psi_not_mate,  // ψ is not the transpose of φ⁻¹
};

const char* to_string(LiftDiagnosis d);

struct LiftResult {
  LiftDiagnosis diagnosis = LiftDiagnosis::lifted;
  std::optional<ArrowAdjunction> adjunction;
};

// The data of a candidate adjunction between (E1, B1, p1) = lower and
// (E2, B2, p2) = upper: base L_B ⊣ R_B, total L_E ⊣ R_E,
// φ: p2∘L_E ⇒ L_B∘p1 and ψ: p1∘R_E ⇒ R_B∘p2.
struct LiftData {
  ArrowObject lower;
  ArrowObject upper;
  Adjunction base;
  Adjunction total;
  NatTrans phi;
  NatTrans psi;
};

// Lifts iff φ is invertible and ψ is the transpose of φ⁻¹ across the two
// adjunctions.  Throws StructuralError when a component adjunction fails or
// φ is not natural; ψ is only compared with the transpose.
LiftResult lift_adjunction(const LiftData& d);

// Direct check, independent of invertibility and mates: assemble L and R,
// and check that (η_B, η_E) and (ε_B, ε_E) are 2-cells between the right
// composites, plus both component adjunctions.
LawReport check_arrow_adjunction(const LiftData& d);

// Unit/counit pasting, naturality and projected adjunctions of an assembled value.
LawReport check_arrow_adjunction(const ArrowAdjunction& a);

}  // namespace compcat
