#pragma once

#include <optional>

#include "compcat/comprehension.hpp"

namespace compcat {

// A category with an endofunctor.
struct EndoObject {
  CategoryPtr carrier;
  Functor endo;
};

// Throws StructuralError unless `endo` is an endofunctor.
EndoObject endo_object(Functor endo);

// (P, p̄: y∘P ⇒ P∘x) from (X, x) to (Y, y).
struct EndoMorphism {
  EndoObject from;
  EndoObject to;
  Functor on_carrier;
  NatTrans dist;
};

EndoMorphism identity_endo_morphism(const EndoObject& e);
// outer ∘ inner, with distribution (O·ī) ∘ (ō·I).
EndoMorphism compose_endo(const EndoMorphism& outer, const EndoMorphism& inner);

// endo.dist.* from validate_nat_trans.  Throws on endpoint mismatch.
LawReport check_endo_morphism(const EndoMorphism& m);

// α: P ⇒ Q natural and α·x ∘ p̄ = q̄ ∘ y·α (endo.two_cell.exchange).
LawReport check_endo_two_cell(const NatTrans& alpha, const EndoMorphism& m1, const EndoMorphism& m2);

// The unit and counit as 2-cells of Endo(Cat): endo.adjunction.unit and
// endo.adjunction.counit, plus the underlying adjunction under adjunction.*.
LawReport check_endo_adjunction(const EndoMorphism& l, const EndoMorphism& r, const NatTrans& eta,
                                const NatTrans& eps);

enum class Direction { algebra, coalgebra };
const char* to_string(Direction d);

struct AlgebraLimits {
  std::size_t max_cells = 4'000'000;  // objects × largest hom
};

// Alg_F(C) or CoAlg_F(C).  Objects are (c, a) with a: F c → c (or c → F c),
// ordered by carrier then structure morphism.
struct AlgebraBundle {
  CategoryPtr alg;
  Functor forgetful;
  Functor endo;
  Direction direction = Direction::algebra;
  std::vector<Obj> carrier;
  std::vector<Mor> structure;
  std::vector<Mor> underlying;

  // The algebra with this carrier and structure, or no_obj.
  Obj find(Obj c, Mor a) const;
  // The algebra morphism x → y over h, or no_mor.
  Mor find_morphism(Obj x, Obj y, Mor h) const;
};

AlgebraBundle algebra_category(const Functor& f, Direction direction, AlgebraLimits limits = {});

// Algebras: (e, g) ↦ (p e, p(g)∘δ_e) with δ: F∘p ⇒ p∘G.  Coalgebras:
// (e, g) ↦ (p e, δ_e∘p(g)) with δ: p∘G ⇒ F∘p.  U∘p′ = p∘U holds exactly.
Functor beck_lift(const Functor& p, const NatTrans& delta, const AlgebraBundle& total,
                  const AlgebraBundle& base);

// δ: F∘p ⇒ p∘G, σ: G∘⋆ ⇒ ⋆∘F (algebra side) or δ: p∘G ⇒ F∘p,
// σ: ⋆∘F ⇒ G∘⋆ (coalgebra side).
struct DistributivityPair {
  Functor base_endo;
  Functor total_endo;
  NatTrans delta;
  NatTrans sigma;
};

DistributivityPair distributivity_pair(const EndoData& d);

struct CriterionResult {
  LawReport report;  // criterion.composite, criterion.sigma_invertible, lifted.*
  std::optional<NatTrans> sigma_inverse;
  std::optional<NatTrans> sigma_tilde;  // F∘[-] ⇒ [-]∘G
};

// p(σ_A)∘δ_{⋆A} = id_{FA} and σ invertible; on success σ̃ is the mate of σ⁻¹
// and ([-], σ̃) is checked as an endo-morphism.  Throws StructuralError for
// quotient-side data or mistyped δ, σ.
CriterionResult check_lifting_criterion(const SectionData& sd, const DistributivityPair& dp);

struct LiftedComprehension {
  AlgebraBundle base_algebras;   // Alg_F(B)
  AlgebraBundle total_algebras;  // Alg_G(E)
  NatTrans sigma_tilde;
  EndoMorphism section_morphism;  // (⋆, σ)
  EndoMorphism comp_morphism;     // ([-], σ̃)
  SectionData lifted;             // over the Beck lift of p
};

// (A, a) ↦ (⋆A, ⋆(a)∘σ_A) and (X, g) ↦ ([X], [g]∘σ̃_X).  Refuses with
// StructuralError when the criterion fails.
LiftedComprehension lift_comprehension_to_algebras(const SectionData& sd,
                                                   const DistributivityPair& dp,
                                                   AlgebraLimits limits = {});

enum class Extremity { initial, terminal };

struct ExtremeObject {
  std::optional<Obj> object;  // lowest index
  std::size_t count = 0;      // all of them are isomorphic
};

ExtremeObject extreme_object(const Category& c, Extremity which);

struct TransportVerdict {
  Direction direction = Direction::algebra;
  std::optional<Obj> mu_base;      // in the base (co)algebra category
  std::size_t mu_base_count = 0;
  std::optional<Obj> mu_total;     // found independently in the total one
  std::optional<Obj> transported;  // ⋆ applied to mu_base
  Verdict verdict = Verdict::undetermined;
  // Morphisms from (or to) `transported` per total (co)algebra.
  std::vector<std::size_t> certificate;
  std::string mu_base_label;
  std::string transported_label;
};

// Algebra direction: ⋆ ⊣ [-] data, initial algebras.  Coalgebra direction:
// ⦃-⦄ ⊣ ⋆ data, terminal coalgebras.  Refuses (StructuralError) when the
// criterion fails.
TransportVerdict check_transport(const SectionData& sd, const DistributivityPair& dp,
                                 Direction direction, AlgebraLimits limits = {});

// The coalgebra run on the opposite presentation of algebra-side data:
// ⋆ ⊣ [-] becomes [-]^op ⊣ ⋆^op and terminal F^op-coalgebras are initial
// F-algebras.  Object indices are shared with the algebra run.
TransportVerdict check_dual_transport(const SectionData& sd, const DistributivityPair& dp,
                                      AlgebraLimits limits = {});

// (B^→, b^→) with (dom, id), (cod, id) and hom.
struct EndoPathObject {
  ArrowBundle bundle;
  EndoObject path;
  EndoMorphism dom;
  EndoMorphism cod;
  NatTrans hom;

  // (a, (p̄, q̄)) with hom·a = α.  Throws StructuralError with a witness when
  // α is not a 2-cell m1 ⇒ m2.
  EndoMorphism factorize(const NatTrans& alpha, const EndoMorphism& m1,
                         const EndoMorphism& m2) const;
};

EndoPathObject endo_arrow_path_object(const EndoObject& e);

}  // namespace compcat
