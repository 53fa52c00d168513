#pragma once

#include <optional>

#include "compcat/arrow2.hpp"
#include "compcat/fibration.hpp"
#include "compcat/instances.hpp"

namespace compcat {

// ([-], ι: [-] ⇒ p) over p: E → B with P: E → B^→ factorizing ι.
struct ComprehensionStructure {
  Functor proj;
  Functor comp;
  NatTrans iota;
  Functor path;
  // ([-], Id_B, ι) from (E, B, p) to (B, B, Id).
  LaxMorphism as_lax;
};

// (⦃-⦄, π: p ⇒ ⦃-⦄) with Q: E → B^→, dom∘Q = p and cod∘Q = ⦃-⦄.
struct QuotientStructure {
  Functor proj;
  Functor quot;
  NatTrans pi;
  Functor path;
};

// A strict section of p with ⋆ ⊣ [-] (comprehension side) or ⦃-⦄ ⊣ ⋆
// (quotient side).
struct SectionData {
  Functor proj;
  Functor section;
  Adjunction adj;
  StructureSide side = StructureSide::comprehension;
};

SectionData section_data(const InstanceBundle& b);

// Throws StructuralError when ι is mistyped or not natural.
ComprehensionStructure build_comprehension(const Functor& p, const Functor& comp,
                                           const NatTrans& iota, const ArrowBundle& arrows);
QuotientStructure build_quotient(const Functor& p, const Functor& quot, const NatTrans& pi,
                                 const ArrowBundle& arrows);

// comprehension.cod / .dom / .hom, and quotient.dom / .cod / .hom.
LawReport check_comprehension(const ComprehensionStructure& cs, const ArrowBundle& arrows);
LawReport check_quotient(const QuotientStructure& qs, const ArrowBundle& arrows);

// ι := p·ε.  Throws unless p∘⋆ = Id and the adjunction holds, and when a
// supplied ι disagrees with the derived one.
ComprehensionStructure derive_comprehension_from_section(
    const SectionData& sd, const ArrowBundle& arrows,
    const std::optional<NatTrans>& supplied = std::nullopt);
// π := p·η for ⦃-⦄ ⊣ ⋆.
QuotientStructure derive_quotient_from_section(const SectionData& sd, const ArrowBundle& arrows);

// ⋆ ⊣ [-] as an adjunction in Cat//Cat between (B, B, Id) and (E, B, p),
// with ψ = ι.
LiftData section_lift_data(const SectionData& sd, const NatTrans& iota);

struct ImageAdjunction {
  Functor path;        // P: E → B^→
  Functor image;       // B^→ → E
  Adjunction adj;      // image ⊣ P
};

// Unit at u is (transpose of λ_u, id); counit at X is the vertical map
// ∃_{ι_X}[⋆[X]] → X through which ε_X factors.  Throws StructuralError on
// mismatched sections or when a mediating map is missing.
ImageAdjunction comprehension_with_image(const ImageStructure& s, const SectionData& sd,
                                         const ArrowBundle& arrows);

// image ⊣ P laws plus slice.cod (cod∘P = p), slice.image (p∘image = cod),
// vertical.unit and vertical.counit.
LawReport check_comprehension_with_image(const ImageAdjunction& ia, const ImageStructure& s,
                                         const ArrowBundle& arrows);

enum class Verdict { yes, no, undetermined };
const char* to_string(Verdict v);

struct NotionFlag {
  Verdict verdict = Verdict::undetermined;
  std::vector<std::string> witnesses;
};

struct NotionClassification {
  NotionFlag jacobs;
  NotionFlag d_category;
  NotionFlag tc_opfibration;
  NotionFlag lawvere;
};

// Four independent decision procedures; a flag whose data is absent is
// undetermined.  jacobs needs `cs`, the others need `sd`, lawvere both.
NotionClassification classify_notion(const Functor& p, const std::optional<SectionData>& sd,
                                     const std::optional<ComprehensionStructure>& cs);

// Exhaustive cone check of the square bottom∘left = right∘top.
bool is_pullback(const Category& c, Mor top, Mor left, Mor right, Mor bottom);

bool is_fully_faithful(const Functor& f);

// ⋆A terminal in the fiber over A for every A; witnesses name the objects.
std::vector<std::string> fiberwise_terminal_failures(const Functor& p, const Functor& section);

}  // namespace compcat
