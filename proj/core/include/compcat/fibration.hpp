#pragma once

#include <optional>
#include <unordered_map>

#include "compcat/fincat.hpp"

namespace compcat {

struct CartesianStatus {
  bool is_cartesian = true;
  bool is_opcartesian = true;
  // "(v, S')" pairs where the comparison map is not a bijection.
  std::vector<std::string> cartesian_witnesses;
  std::vector<std::string> opcartesian_witnesses;
};

// Exhaustive check of both universal properties of f with respect to p.
CartesianStatus cartesian_status(const Functor& p, Mor f);
bool is_opcartesian(const Functor& p, Mor f);
bool is_cartesian(const Functor& p, Mor f);

struct FibrationClass {
  bool is_fibration = true;
  bool is_opfibration = true;
  bool is_bifibration = true;
  // "(u, R)" with no cartesian lift of u at R, or no opcartesian lift from R.
  std::vector<std::string> missing_cartesian;
  std::vector<std::string> missing_opcartesian;
};

FibrationClass classify_functor(const Functor& p);

// The subcategory over b and id_b, with its embedding into the total category.
struct Fiber {
  CategoryPtr category;
  std::vector<Obj> objects;
  std::vector<Mor> morphisms;
};

Fiber fiber(const Functor& p, Obj b);

// Chosen opcartesian lifts λ_u out of ⋆(dom u), with the derived actions
// v▷ : ∃_u → ∃_{v∘u} (post) and ◁w : ∃_{u∘w} → ∃_u (pre).
struct ImageStructure {
  Functor proj;
  Functor section;
  std::vector<Mor> lift;         // λ_u per base morphism
  std::vector<Obj> pushforward;  // ∃_u[⋆A] = cod λ_u
  std::unordered_map<std::uint64_t, Mor> post;  // key (u, v)
  std::unordered_map<std::uint64_t, Mor> pre;   // key (u, w)

  static std::uint64_t key(Mor a, Mor b) { return (std::uint64_t{a} << 32) | b; }
  Mor post_at(Mor u, Mor v) const;
  Mor pre_at(Mor u, Mor w) const;
};

// Lowest-index opcartesian lift of every base morphism with identities on
// identities.  Empty if some lift does not exist.  Throws StructuralError
// unless p∘section is the identity.
std::optional<ImageStructure> build_image_structure(const Functor& p, const Functor& section);

// Recompute post and pre from `lift` by the universal property (lowest index
// where several candidates fit).  Throws StructuralError when none fits.
void derive_actions(ImageStructure& s);

// Laws: image.lambda.over, image.identity.lambda, image.coherence.a/b/c,
// image.compositionality.post/pre, image.identity.post/pre.
LawReport check_image_coherence(const ImageStructure& s);

// B^→ → E, u ↦ ∃_u[⋆A], (w, v) ↦ ◁w ∘ v▷.  Refuses (StructuralError) when
// the coherence check fails.
Functor image_functor(const ImageStructure& s, const ArrowBundle& arrows);
// The same table without the coherence precondition.
Functor assemble_image_functor(const ImageStructure& s, const ArrowBundle& arrows);

}  // namespace compcat
