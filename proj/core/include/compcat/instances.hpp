#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "compcat/adjunction.hpp"

namespace compcat {

// Subsets of the universe as bit masks over element positions.
using Subset = std::uint32_t;

struct Partition {
  std::vector<std::vector<int>> blocks;  // each sorted, ordered by least element

  bool operator==(const Partition&) const = default;
};

// Smallest equivalence relation on `carrier` containing `pairs`.
Partition equivalence_closure(std::span<const int> carrier,
                              std::span<const std::pair<int, int>> pairs);

struct InstanceLimits {
  std::size_t pred_universe = 4;
  std::size_t rel_universe = 3;
  std::size_t pow_universe = 3;
};

enum class InstanceKind { pred, rel, pow };

// ⋆ ⊣ [-] for comprehension, ⦃-⦄ ⊣ ⋆ for quotient.
enum class StructureSide { comprehension, quotient };

// Endofunctors F on the base and G on the total category with
// δ: F∘p ⇒ p∘G and σ: G∘⋆ ⇒ ⋆∘F.
struct EndoData {
  Functor base_endo;
  Functor total_endo;
  NatTrans delta;
  NatTrans sigma;
};

struct InstanceBundle {
  InstanceKind kind = InstanceKind::pred;
  StructureSide side = StructureSide::comprehension;
  std::vector<int> universe;  // sorted
  CategoryPtr base;
  CategoryPtr total;
  Functor proj;
  Functor section;
  Functor structure;  // [-] or ⦃-⦄
  Adjunction adj;
  // Underlying subset of each base object, and carrier plus predicate or
  // relation bits of each total object.
  std::vector<Subset> base_carrier;
  std::vector<Subset> total_carrier;
  std::vector<std::uint32_t> total_structure;
  // Function code of each base morphism (digits over the domain positions).
  std::vector<std::uint32_t> base_code;
  std::optional<EndoData> endo;

  Obj base_object(Subset carrier) const;
  Obj total_object(Subset carrier, std::uint32_t structure) const;
};

// Base: subsets of `universe` and all functions.  Total: (A, R ⊆ A) with f
// such that f(R) ⊆ S.  ⋆A = (A, A), [(A, R)] = R.
InstanceBundle pred_instance(std::vector<int> universe, InstanceLimits limits = {});

// Total: (A, R ⊆ A×A) with relation-preserving functions.  ⦃(A, R)⦄ is the
// set of least elements of the blocks of the equivalence generated by R;
// ⋆A = (A, equality on A).
InstanceBundle rel_instance(std::vector<int> universe, InstanceLimits limits = {});

// Base: the powerset of `universe` ordered by inclusion.  Total: pairs
// (A, R ⊆ A) ordered componentwise.  F(A) = base ∪ step(A) and
// G(A, R) = (F A, base ∪ step(R)) with δ and σ identities.
InstanceBundle powerset_instance(std::vector<int> universe, std::vector<int> base_set,
                                 std::vector<std::pair<int, int>> edges,
                                 InstanceLimits limits = {});

// Pred with the section A ↦ (A, ∅).
Functor empty_predicate_section(const InstanceBundle& pred);
// Rel with the section A ↦ (A, ∅).
Functor empty_relation_section(const InstanceBundle& rel);

// For a base morphism of a Pred or Rel instance, the image position of
// every universe position in its domain, -1 elsewhere.
std::vector<int> element_map(const InstanceBundle& b, Mor base_morphism);
// Same for a total morphism.
std::vector<int> total_element_map(const InstanceBundle& b, Mor total_morphism);

// Universe positions in a subset, ascending.
std::vector<int> positions(Subset s);

// Validators of the category, functor and adjunction layers.  Throws
// ResourceError when the total category is too large to check exhaustively.
LawReport validate_instance(const InstanceBundle& b, ValidationLimits limits = {});

const char* to_string(InstanceKind k);

}  // namespace compcat
