#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace compcat {

using Obj = std::uint32_t;
using Mor = std::uint32_t;

inline constexpr Mor no_mor = std::numeric_limits<Mor>::max();
inline constexpr Obj no_obj = std::numeric_limits<Obj>::max();

// Malformed data: out-of-range indices, non-composable lookups, mistyped or
// non-parallel inputs.  Never used for a failed law.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search or enumeration would exceed its configured bound.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string law;
  std::string witness;
  bool structural = false;

  bool operator==(const Violation&) const = default;
};

// Outcome of a law check.  Only the first few violations per law are kept;
// `dropped` counts the rest.
class LawReport {
 public:
  static constexpr std::size_t kept_per_law = 8;

  bool passed() const noexcept { return violations_.empty(); }
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  std::size_t dropped() const noexcept { return dropped_; }

  void fail(std::string law, std::string witness);
  void structural(std::string law, std::string witness);
  void merge(const LawReport& other, const std::string& prefix = {});

  bool has(std::string_view law) const;
  std::size_t count(std::string_view law) const;

 private:
  void add(Violation v);

  std::vector<Violation> violations_;
  std::size_t dropped_ = 0;
};

struct Arrow {
  Obj dom;
  Obj cod;
};

// An explicit finite strict category.  Small presentations keep a dense
// composition table; derived categories (instances, arrow categories,
// algebra categories) compute composites by rule and look the result up.
class Category {
 public:
  using Rule = std::function<Mor(Mor g, Mor f)>;
  using Namer = std::function<std::string(Mor)>;

  struct Composite {
    Mor g;
    Mor f;
    Mor h;
  };

  // Dense-table presentation.  Pairs missing from `compose` stay undefined
  // and are reported by validate_category.
  static Category presented(std::vector<std::string> objects,
                            std::vector<std::string> morphism_labels,
                            std::vector<Arrow> arrows,
                            std::vector<Mor> identities,
                            std::span<const Composite> compose);

  // Rule presentation.  `rule(g, f)` is only called on composable pairs and
  // returns no_mor when the composite is missing.
  static Category computed(std::vector<std::string> objects,
                           std::vector<Arrow> arrows,
                           std::vector<Mor> identities,
                           Rule rule,
                           Namer namer = {});

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return arrows_.size(); }

  Obj dom(Mor f) const { return arrow(f).dom; }
  Obj cod(Mor f) const { return arrow(f).cod; }
  const Arrow& arrow(Mor f) const;
  Mor identity(Obj x) const;
  bool is_identity(Mor f) const { return identity(dom(f)) == f; }

  // Throws StructuralError unless dom g == cod f and the composite exists.
  Mor compose(Mor g, Mor f) const;
  // Raw lookup for validators: no_mor when undefined.  Ranges still checked.
  Mor find_composite(Mor g, Mor f) const;

  std::span<const Mor> hom(Obj x, Obj y) const;
  std::span<const Mor> outgoing(Obj x) const;
  std::span<const Mor> incoming(Obj y) const;

  const std::string& object_label(Obj x) const;
  std::string morphism_label(Mor f) const;

  bool has_table() const noexcept { return !table_.empty() || arrows_.empty(); }

  // Same object count, morphism typing and identities.
  bool same_shape(const Category& other) const;

 private:
  Category() = default;
  void index();
  void check_obj(Obj x) const;
  void check_mor(Mor f) const;

  std::vector<std::string> objects_;
  std::vector<std::string> morphism_labels_;
  std::vector<Arrow> arrows_;
  std::vector<Mor> identities_;
  std::vector<Mor> table_;
  Rule rule_;
  Namer namer_;

  std::vector<std::uint32_t> hom_offsets_;
  std::vector<Mor> by_dom_;
  std::vector<std::uint32_t> in_offsets_;
  std::vector<Mor> by_cod_;
};

using CategoryPtr = std::shared_ptr<const Category>;

inline CategoryPtr share(Category c) { return std::make_shared<const Category>(std::move(c)); }

bool same_category(const CategoryPtr& a, const CategoryPtr& b);

// Incremental construction of presented categories (parser, tests).
class CategoryBuilder {
 public:
  Obj add_object(std::string label);
  Mor add_morphism(std::string label, Obj dom, Obj cod);
  void set_identity(Obj x, Mor f);
  void set_compose(Mor g, Mor f, Mor h);
  // Adds an `id_<label>` morphism for every object lacking an identity.
  void ensure_identities();
  // Fills composites with identities that were not declared.
  void infer_identity_composites();

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return arrows_.size(); }

  Category build() const;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> labels_;
  std::vector<Arrow> arrows_;
  std::vector<Mor> identities_;
  std::vector<Category::Composite> compose_;
};

struct ValidationLimits {
  std::size_t max_triples = 200'000'000;
};

LawReport validate_category(const Category& c, ValidationLimits limits = {});

class Functor {
 public:
  Functor() = default;
  Functor(CategoryPtr source, CategoryPtr target, std::vector<Obj> obj_map,
          std::vector<Mor> mor_map);

  const CategoryPtr& source() const noexcept { return source_; }
  const CategoryPtr& target() const noexcept { return target_; }
  const std::vector<Obj>& obj_map() const noexcept { return obj_map_; }
  const std::vector<Mor>& mor_map() const noexcept { return mor_map_; }

  Obj obj(Obj x) const { return obj_map_.at(x); }
  Mor mor(Mor f) const { return mor_map_.at(f); }

  // Same endpoints and equal tables.
  bool operator==(const Functor& other) const;

 private:
  CategoryPtr source_;
  CategoryPtr target_;
  std::vector<Obj> obj_map_;
  std::vector<Mor> mor_map_;
};

Functor identity_functor(const CategoryPtr& c);
// g ∘ f
Functor compose(const Functor& g, const Functor& f);
// The functor from `c` picking out object `x` of `target` (all morphisms to its identity).
Functor constant_functor(const CategoryPtr& c, const CategoryPtr& target, Obj x);

struct FunctorLimits {
  std::size_t max_pairs = 100'000'000;
};

LawReport validate_functor(const Functor& f, FunctorLimits limits = {});

class NatTrans {
 public:
  NatTrans() = default;
  NatTrans(Functor source, Functor target, std::vector<Mor> components);

  const Functor& source() const noexcept { return source_; }
  const Functor& target() const noexcept { return target_; }
  const std::vector<Mor>& components() const noexcept { return components_; }
  Mor at(Obj x) const { return components_.at(x); }

  bool operator==(const NatTrans& other) const;

 private:
  Functor source_;
  Functor target_;
  std::vector<Mor> components_;
};

NatTrans identity_transformation(const Functor& f);
// beta ∘ alpha (vertical)
NatTrans vertical(const NatTrans& beta, const NatTrans& alpha);
// H·α : H∘F ⇒ H∘G
NatTrans whisker(const Functor& h, const NatTrans& alpha);
// α·K : F∘K ⇒ G∘K
NatTrans whisker(const NatTrans& alpha, const Functor& k);
// Reuse the components of `alpha` with endpoints replaced by functors with
// equal tables (e.g. p∘⋆∘[-] and [-] when p∘⋆ = Id).
NatTrans retype(const NatTrans& alpha, Functor source, Functor target);

LawReport validate_nat_trans(const NatTrans& a);

// Two-sided inverse of every component, or empty if some component has none.
std::optional<NatTrans> invert(const NatTrans& a);
// Two-sided inverse of f in its category, or no_mor.
Mor inverse_of(const Category& c, Mor f);

// Opposites.  Objects and morphisms keep their indices; dom and cod swap.
CategoryPtr opposite(const CategoryPtr& c);
Functor opposite(const Functor& f, const CategoryPtr& source_op, const CategoryPtr& target_op);
// α: F ⇒ G becomes α^op: G^op ⇒ F^op with the same components.
NatTrans opposite(const NatTrans& a, const Functor& source_op, const Functor& target_op);

// The path object B^→.  Objects are morphisms of B; morphisms are commuting
// squares (w, v) from f to f′ with v∘f = f′∘w, ordered by (source, w, v, target).
class ArrowBundle {
 public:
  explicit ArrowBundle(CategoryPtr base);

  const CategoryPtr& base() const noexcept { return base_; }
  const CategoryPtr& arrows() const noexcept { return arrows_; }
  const Functor& dom() const noexcept { return dom_; }
  const Functor& cod() const noexcept { return cod_; }
  const Functor& id() const noexcept { return id_; }
  const NatTrans& hom() const noexcept { return hom_; }

  Mor top(Mor square) const { return squares_->at(square).w; }
  Mor bottom(Mor square) const { return squares_->at(square).v; }
  // The square (w, v) from object f to object f′, or no_mor.
  Mor square(Obj f, Obj f2, Mor w, Mor v) const;

  // The functor a into B^→ with dom∘a = α.source, cod∘a = α.target, hom·a = α.
  // Throws StructuralError if α is not natural (a square is missing).
  Functor factorize(const NatTrans& alpha) const;

  struct Square {
    Mor w;
    Mor v;
  };

 private:
  struct Index;

  CategoryPtr base_;
  CategoryPtr arrows_;
  std::shared_ptr<const std::vector<Square>> squares_;
  std::shared_ptr<const Index> index_;
  Functor dom_;
  Functor cod_;
  Functor id_;
  NatTrans hom_;
};

ArrowBundle arrow_category(const CategoryPtr& b);

// Free category on a random acyclic graph, keeping at most `max_morphisms`
// morphisms (identities included).  Deterministic in the seed.
CategoryPtr generate_category(std::uint64_t seed, std::size_t max_objects,
                              std::size_t max_morphisms);

// Small named categories.
CategoryPtr terminal_category();
CategoryPtr walking_arrow();
CategoryPtr empty_category();

}  // namespace compcat
