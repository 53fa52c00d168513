#pragma once

// Text presentations: categories, functors, transformations, adjunctions,
// lax morphisms, arrow two-cells, lift data, instance descriptors and
// pipelines.  Every block ends with `end` except the one-line `instance`.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "compcat/fincat.hpp"

namespace compcat::text {

// Parse and reference errors, always tied to a line (1-based).
class DocumentError : public StructuralError {
 public:
  DocumentError(std::size_t line, const std::string& message, const std::string& file = {});
  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

struct MapEntry {
  std::string from;
  std::string to;
  std::size_t line = 0;
};

struct CategoryDoc {
  struct Object {
    std::string name;
    std::size_t line = 0;
  };
  struct Morphism {
    std::string name;
    std::string dom;
    std::string cod;
    std::size_t line = 0;
  };
  struct Composite {
    std::string g;
    std::string f;
    std::string h;
    std::size_t line = 0;
  };

  std::string name;
  std::size_t line = 0;
  std::vector<Object> objects;
  std::vector<Morphism> morphisms;  // as declared, implicit identities excluded
  std::vector<MapEntry> identities;  // object → morphism
  std::vector<Composite> compose;
};

struct FunctorDoc {
  std::string name;
  std::string source;
  std::string target;
  std::size_t line = 0;
  std::vector<MapEntry> objects;
  std::vector<MapEntry> morphisms;
};

struct NatTransDoc {
  std::string name;
  std::string source;  // functor names
  std::string target;
  std::size_t line = 0;
  std::vector<MapEntry> components;
};

struct AdjunctionDoc {
  std::string name;
  std::size_t line = 0;
  std::string left;
  std::string right;
  std::vector<MapEntry> unit;
  std::vector<MapEntry> counit;
};

// (on_total, on_base, φ: to∘total ⇒ base∘from) between functors `from`, `to`.
struct LaxDoc {
  std::string name;
  std::size_t line = 0;
  std::string from;
  std::string to;
  std::string total;
  std::string base;
  std::vector<MapEntry> phi;
};

struct TwoCellDoc {
  std::string name;
  std::size_t line = 0;
  std::string from;  // lax names
  std::string to;
  std::vector<MapEntry> base;
  std::vector<MapEntry> total;
};

// φ: upper∘L_E ⇒ L_B∘lower and ψ: lower∘R_E ⇒ R_B∘upper.
struct LiftDoc {
  std::string name;
  std::size_t line = 0;
  std::string lower;
  std::string upper;
  std::string base;  // adjunction names
  std::string total;
  std::vector<MapEntry> phi;
  std::vector<MapEntry> psi;
};

struct InstanceDoc {
  std::string kind;  // pred, rel or pow
  std::vector<int> universe;
  std::vector<int> base;
  std::vector<std::pair<int, int>> edges;
  std::size_t line = 0;
};

struct PipelineDoc {
  std::string name;
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::size_t>> commands;
};

using Block = std::variant<CategoryDoc, FunctorDoc, NatTransDoc, AdjunctionDoc, LaxDoc, TwoCellDoc,
                           LiftDoc, InstanceDoc, PipelineDoc>;

const char* block_kind(const Block& b);
const std::string& block_name(const Block& b);

struct Document {
  std::vector<Block> blocks;

  template <class T>
  const T* find(std::string_view name) const {
    for (const Block& b : blocks)
      if (const T* t = std::get_if<T>(&b); t && block_name(b) == name) return t;
    return nullptr;
  }
  template <class T>
  std::vector<const T*> all() const {
    std::vector<const T*> out;
    for (const Block& b : blocks)
      if (const T* t = std::get_if<T>(&b)) out.push_back(t);
    return out;
  }
  const InstanceDoc* instance() const;

  // Appends the blocks of `other`; a duplicate name is a DocumentError.
  void merge(Document other);
};

// Parses and checks every reference.  Throws DocumentError.
Document parse_document(std::string_view text);
// Canonical form: blocks by kind then name, sections in fixed order,
// entries by index.
std::string serialize(const Document& doc);

// `pred universe=0,1`, tokens already split.
InstanceDoc parse_instance(const std::vector<std::string>& tokens, std::size_t line = 0);
std::string serialize(const InstanceDoc& inst);

// Indices of a category block: objects in declaration order, morphisms in
// declaration order followed by implicit `id_<object>` identities.
struct CategoryNames {
  std::map<std::string, Obj, std::less<>> objects;
  std::map<std::string, Mor, std::less<>> morphisms;
  std::vector<Obj> dom;
  std::vector<Obj> cod;
  std::vector<Mor> identity;
};

CategoryNames category_names(const CategoryDoc& c);
CategoryPtr build_category(const CategoryDoc& c);

}  // namespace compcat::text
