#include "compcat/instances.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <unordered_map>

namespace compcat {

namespace {

constexpr std::size_t max_positions = 5;

using Digits = std::array<int, max_positions>;

std::uint32_t power(std::uint32_t base, std::uint32_t exp) {
  std::uint32_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

int size_of(Subset s) { return std::popcount(s); }

Digits decode(std::uint32_t code, int a, int b) {
  Digits d{};
  for (int i = 0; i < a; ++i) {
    d[i] = static_cast<int>(code % b);
    code /= b;
  }
  return d;
}

std::uint32_t encode(const Digits& d, int a, int b) {
  std::uint32_t code = 0;
  for (int i = a - 1; i >= 0; --i) code = code * b + static_cast<std::uint32_t>(d[i]);
  return code;
}

std::uint32_t identity_code(int a) {
  Digits d{};
  for (int i = 0; i < a; ++i) d[i] = i;
  return encode(d, a, a);
}

// Position-level map of the function with the given code from A to B.
std::array<int, max_positions> position_map(std::uint32_t code, Subset a, Subset b) {
  std::array<int, max_positions> out;
  out.fill(-1);
  const auto pa = positions(a);
  const auto pb = positions(b);
  const Digits d = decode(code, static_cast<int>(pa.size()), static_cast<int>(pb.size()));
  for (std::size_t i = 0; i < pa.size(); ++i) out[pa[i]] = pb[d[i]];
  return out;
}

std::uint32_t code_of(const std::array<int, max_positions>& map, Subset a, Subset b) {
  const auto pa = positions(a);
  const auto pb = positions(b);
  Digits d{};
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const auto it = std::find(pb.begin(), pb.end(), map[pa[i]]);
    if (it == pb.end()) throw StructuralError("function leaves its codomain");
    d[i] = static_cast<int>(it - pb.begin());
  }
  return encode(d, static_cast<int>(pa.size()), static_cast<int>(pb.size()));
}

// Morphisms of a concrete category ordered by (dom, cod, code) with a
// direct offset table per (dom, cod) pair.
struct Concrete {
  std::size_t objects = 0;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> codes;
  std::vector<Arrow> arrows;
  std::vector<Mor> identities;

  Mor find(Obj x, Obj y, std::uint32_t code) const {
    const std::size_t cell = static_cast<std::size_t>(x) * objects + y;
    const auto first = codes.begin() + offsets[cell];
    const auto last = codes.begin() + offsets[cell + 1];
    const auto it = std::lower_bound(first, last, code);
    if (it == last || *it != code) return no_mor;
    return static_cast<Mor>(it - codes.begin());
  }
};

template <class HomSize, class Admit, class IdCode>
std::shared_ptr<Concrete> enumerate(std::size_t objects, HomSize hom_size, Admit admit,
                                    IdCode id_code) {
  auto c = std::make_shared<Concrete>();
  c->objects = objects;
  c->offsets.reserve(objects * objects + 1);
  for (Obj x = 0; x < objects; ++x) {
    for (Obj y = 0; y < objects; ++y) {
      c->offsets.push_back(static_cast<std::uint32_t>(c->codes.size()));
      const std::uint32_t n = hom_size(x, y);
      for (std::uint32_t code = 0; code < n; ++code) {
        if (!admit(x, y, code)) continue;
        c->codes.push_back(code);
        c->arrows.push_back({x, y});
      }
    }
  }
  c->offsets.push_back(static_cast<std::uint32_t>(c->codes.size()));
  c->identities.resize(objects);
  for (Obj x = 0; x < objects; ++x) {
    c->identities[x] = c->find(x, x, id_code(x));
    if (c->identities[x] == no_mor) throw StructuralError("concrete category: missing identity");
  }
  return c;
}

std::string show_subset(const std::vector<int>& universe, Subset s) {
  std::string out = "{";
  bool first = true;
  for (int p : positions(s)) {
    if (!first) out += ",";
    out += std::to_string(universe[p]);
    first = false;
  }
  return out + "}";
}

std::string show_relation(const std::vector<int>& universe, std::uint32_t r) {
  const int n = static_cast<int>(universe.size());
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(r >> (i * n + j) & 1u)) continue;
      if (!first) out += ",";
      out += "(" + std::to_string(universe[i]) + "," + std::to_string(universe[j]) + ")";
      first = false;
    }
  }
  return out + "}";
}

std::string show_map(const std::vector<int>& universe, const std::array<int, max_positions>& m) {
  std::string out;
  for (std::size_t p = 0; p < universe.size(); ++p) {
    if (m[p] < 0) continue;
    if (!out.empty()) out += ",";
    out += std::to_string(universe[p]) + ">" + std::to_string(universe[m[p]]);
  }
  return out;
}

// A category whose morphisms are functions between carriers.
CategoryPtr function_category(const std::shared_ptr<const Concrete>& data,
                              std::shared_ptr<const std::vector<Subset>> carrier,
                              std::vector<std::string> labels,
                              std::shared_ptr<const std::vector<int>> universe) {
  auto rule = [data, carrier](Mor g, Mor f) -> Mor {
    const Obj x = data->arrows[f].dom;
    const Obj y = data->arrows[f].cod;
    const Obj z = data->arrows[g].cod;
    const int a = size_of((*carrier)[x]);
    const int b = size_of((*carrier)[y]);
    const int c = size_of((*carrier)[z]);
    const Digits df = decode(data->codes[f], a, b);
    const Digits dg = decode(data->codes[g], b, c);
    Digits out{};
    for (int i = 0; i < a; ++i) out[i] = dg[df[i]];
    return data->find(x, z, encode(out, a, c));
  };
  auto object_labels = std::make_shared<const std::vector<std::string>>(labels);
  auto namer = [data, carrier, universe, object_labels](Mor f) {
    const Arrow a = data->arrows[f];
    return (*object_labels)[a.dom] + "->" + (*object_labels)[a.cod] + ":" +
           show_map(*universe, position_map(data->codes[f], (*carrier)[a.dom], (*carrier)[a.cod]));
  };
  return share(Category::computed(std::move(labels), data->arrows, data->identities,
                                  std::move(rule), std::move(namer)));
}

// A thin category: one morphism per related pair.
CategoryPtr thin_category(const std::shared_ptr<const Concrete>& data,
                          std::vector<std::string> labels) {
  auto rule = [data](Mor g, Mor f) { return data->find(data->arrows[f].dom, data->arrows[g].cod, 0); };
  auto object_labels = std::make_shared<const std::vector<std::string>>(labels);
  auto namer = [data, object_labels](Mor f) {
    const Arrow a = data->arrows[f];
    return (*object_labels)[a.dom] + "<=" + (*object_labels)[a.cod];
  };
  return share(Category::computed(std::move(labels), data->arrows, data->identities,
                                  std::move(rule), std::move(namer)));
}

std::vector<int> normalize_universe(std::vector<int> universe, std::size_t bound) {
  std::sort(universe.begin(), universe.end());
  if (std::adjacent_find(universe.begin(), universe.end()) != universe.end())
    throw StructuralError("universe has repeated elements");
  if (universe.size() > bound)
    throw ResourceError("universe of " + std::to_string(universe.size()) +
                        " elements exceeds the bound " + std::to_string(bound));
  if (universe.size() > max_positions) throw ResourceError("universe too large");
  return universe;
}

int position_of(const std::vector<int>& universe, int element) {
  const auto it = std::lower_bound(universe.begin(), universe.end(), element);
  if (it == universe.end() || *it != element)
    throw StructuralError("element " + std::to_string(element) + " is not in the universe");
  return static_cast<int>(it - universe.begin());
}

std::uint64_t total_key(Subset carrier, std::uint32_t structure) {
  return (static_cast<std::uint64_t>(carrier) << 32) | structure;
}

// Subsets of a universe with all functions between them.
struct SetBase {
  std::shared_ptr<const Concrete> data;
  CategoryPtr category;
};

SetBase set_base(const std::shared_ptr<const std::vector<int>>& universe) {
  const Subset full = (1u << universe->size()) - 1;
  auto carrier = std::make_shared<std::vector<Subset>>();
  std::vector<std::string> labels;
  for (Subset s = 0; s <= full; ++s) {
    carrier->push_back(s);
    labels.push_back(show_subset(*universe, s));
  }
  auto data = enumerate(
      carrier->size(),
      [&](Obj x, Obj y) { return power(size_of((*carrier)[y]), size_of((*carrier)[x])); },
      [](Obj, Obj, std::uint32_t) { return true; },
      [&](Obj x) { return identity_code(size_of((*carrier)[x])); });
  auto category = function_category(data, carrier, std::move(labels), universe);
  return {data, category};
}

// Shared state behind Pred and Rel.
struct FunctionInstance {
  SetBase base;
  std::shared_ptr<const Concrete> total_data;
  std::vector<Subset> carrier;
  std::vector<std::uint32_t> structure;
  std::unordered_map<std::uint64_t, Obj> index;
};

Mor base_morphism(const SetBase& b, Subset dom, Subset cod, std::uint32_t code) {
  const Mor m = b.data->find(dom, cod, code);
  if (m == no_mor) throw StructuralError("base morphism missing");
  return m;
}

Functor projection(const InstanceBundle& out, const FunctionInstance& fi) {
  std::vector<Obj> objs(fi.carrier.begin(), fi.carrier.end());
  std::vector<Mor> mors(fi.total_data->arrows.size());
  for (Mor f = 0; f < mors.size(); ++f) {
    const Arrow a = fi.total_data->arrows[f];
    mors[f] = base_morphism(fi.base, fi.carrier[a.dom], fi.carrier[a.cod], fi.total_data->codes[f]);
  }
  return Functor(out.total, out.base, std::move(objs), std::move(mors));
}

// Section A ↦ (A, structure(A)), acting as the identity on functions.
Functor function_section(const InstanceBundle& out, const FunctionInstance& fi,
                         const std::function<std::uint32_t(Subset)>& structure) {
  const std::size_t n = out.base->object_count();
  std::vector<Obj> objs(n);
  for (Obj a = 0; a < n; ++a) {
    const auto it = fi.index.find(total_key(a, structure(a)));
    if (it == fi.index.end()) throw StructuralError("section object missing");
    objs[a] = it->second;
  }
  std::vector<Mor> mors(out.base->morphism_count());
  for (Mor f = 0; f < mors.size(); ++f) {
    const Arrow a = out.base->arrow(f);
    mors[f] = fi.total_data->find(objs[a.dom], objs[a.cod], fi.base.data->codes[f]);
    if (mors[f] == no_mor)
      throw StructuralError("section does not act on " + out.base->morphism_label(f));
  }
  return Functor(out.base, out.total, std::move(objs), std::move(mors));
}

template <class Admit, class Label>
FunctionInstance build_function_instance(InstanceBundle& out,
                                         const std::shared_ptr<const std::vector<int>>& universe,
                                         const std::vector<std::pair<Subset, std::uint32_t>>& objs,
                                         Admit admit, Label label) {
  FunctionInstance fi{set_base(universe), {}, {}, {}, {}};
  std::vector<std::string> labels;
  for (const auto& [a, r] : objs) {
    fi.index.emplace(total_key(a, r), static_cast<Obj>(fi.carrier.size()));
    fi.carrier.push_back(a);
    fi.structure.push_back(r);
    labels.push_back(label(a, r));
  }
  const auto& carrier = fi.carrier;
  fi.total_data = enumerate(
      objs.size(),
      [&](Obj x, Obj y) { return power(size_of(carrier[y]), size_of(carrier[x])); },
      [&](Obj x, Obj y, std::uint32_t code) {
        return admit(carrier[x], fi.structure[x], carrier[y], fi.structure[y],
                     position_map(code, carrier[x], carrier[y]));
      },
      [&](Obj x) { return identity_code(size_of(carrier[x])); });
  out.universe = *universe;
  out.base = fi.base.category;
  out.total = function_category(fi.total_data, std::make_shared<const std::vector<Subset>>(carrier),
                                std::move(labels), universe);
  out.base_carrier.assign(fi.base.data->identities.size(), 0);
  std::iota(out.base_carrier.begin(), out.base_carrier.end(), Subset{0});
  out.total_carrier = fi.carrier;
  out.total_structure = fi.structure;
  out.base_code = fi.base.data->codes;
  return fi;
}

// Equivalence classes of a relation on A as a map position → least position.
std::array<int, max_positions> block_minima(Subset a, std::uint32_t r, int n) {
  std::array<int, max_positions> parent;
  parent.fill(-1);
  for (int p : positions(a)) parent[p] = p;
  auto root = [&](int p) {
    while (parent[p] != p) p = parent[p] = parent[parent[p]];
    return p;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(r >> (i * n + j) & 1u)) continue;
      const int x = root(i);
      const int y = root(j);
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  }
  std::array<int, max_positions> out;
  out.fill(-1);
  for (int p : positions(a)) out[p] = root(p);
  return out;
}

Subset image_of(const std::array<int, max_positions>& m) {
  Subset s = 0;
  for (int p : m) {
    if (p >= 0) s |= 1u << p;
  }
  return s;
}

std::uint32_t diagonal(Subset a, int n) {
  std::uint32_t r = 0;
  for (int p : positions(a)) r |= 1u << (p * n + p);
  return r;
}

std::uint32_t square_of(Subset a, int n) {
  std::uint32_t r = 0;
  for (int i : positions(a))
    for (int j : positions(a)) r |= 1u << (i * n + j);
  return r;
}

}  // namespace

std::vector<int> positions(Subset s) {
  std::vector<int> out;
  for (int p = 0; s != 0; ++p, s >>= 1) {
    if (s & 1u) out.push_back(p);
  }
  return out;
}

Partition equivalence_closure(std::span<const int> carrier,
                              std::span<const std::pair<int, int>> pairs) {
  std::vector<int> elems(carrier.begin(), carrier.end());
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  auto index = [&](int e) {
    const auto it = std::lower_bound(elems.begin(), elems.end(), e);
    if (it == elems.end() || *it != e)
      throw StructuralError("pair element " + std::to_string(e) + " is outside the carrier");
    return static_cast<std::size_t>(it - elems.begin());
  };
  std::vector<std::size_t> parent(elems.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& [x, y] : pairs) {
    const std::size_t a = root(index(x));
    const std::size_t b = root(index(y));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  Partition out;
  std::vector<std::size_t> slot(elems.size(), elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::size_t r = root(i);
    if (slot[r] == elems.size()) {
      slot[r] = out.blocks.size();
      out.blocks.emplace_back();
    }
    out.blocks[slot[r]].push_back(elems[i]);
  }
  return out;
}

Obj InstanceBundle::base_object(Subset carrier) const {
  const auto it = std::find(base_carrier.begin(), base_carrier.end(), carrier);
  if (it == base_carrier.end()) throw StructuralError("no base object with that carrier");
  return static_cast<Obj>(it - base_carrier.begin());
}

Obj InstanceBundle::total_object(Subset carrier, std::uint32_t structure) const {
  for (Obj x = 0; x < total_carrier.size(); ++x) {
    if (total_carrier[x] == carrier && total_structure[x] == structure) return x;
  }
  throw StructuralError("no total object with that carrier and structure");
}

InstanceBundle pred_instance(std::vector<int> universe_in, InstanceLimits limits) {
  auto universe = std::make_shared<const std::vector<int>>(
      normalize_universe(std::move(universe_in), limits.pred_universe));
  const Subset full = (1u << universe->size()) - 1;
  std::vector<std::pair<Subset, std::uint32_t>> objs;
  for (Subset a = 0; a <= full; ++a)
    for (Subset r = 0; r <= a; ++r)
      if ((r & ~a) == 0) objs.emplace_back(a, r);

  InstanceBundle out;
  out.kind = InstanceKind::pred;
  out.side = StructureSide::comprehension;
  auto fi = build_function_instance(
      out, universe, objs,
      [](Subset, std::uint32_t r, Subset, std::uint32_t s, const auto& map) {
        for (int p : positions(r)) {
          if (!(s >> map[p] & 1u)) return false;
        }
        return true;
      },
      [&](Subset a, std::uint32_t r) {
        return "(" + show_subset(*universe, a) + "," + show_subset(*universe, r) + ")";
      });

  out.proj = projection(out, fi);
  out.section = function_section(out, fi, [](Subset a) { return a; });

  // [(A, R)] = R with f restricted.
  std::vector<Obj> comp_objs(fi.structure.begin(), fi.structure.end());
  std::vector<Mor> comp_mors(out.total->morphism_count());
  for (Mor f = 0; f < comp_mors.size(); ++f) {
    const Arrow a = out.total->arrow(f);
    auto map = position_map(fi.total_data->codes[f], fi.carrier[a.dom], fi.carrier[a.cod]);
    const Subset r = fi.structure[a.dom];
    const Subset s = fi.structure[a.cod];
    for (std::size_t p = 0; p < max_positions; ++p) {
      if (!(r >> p & 1u)) map[p] = -1;
    }
    comp_mors[f] = base_morphism(fi.base, r, s, code_of(map, r, s));
  }
  out.structure = Functor(out.total, out.base, std::move(comp_objs), std::move(comp_mors));

  std::vector<Mor> unit(out.base->object_count());
  for (Obj a = 0; a < unit.size(); ++a) unit[a] = out.base->identity(a);
  std::vector<Mor> counit(out.total->object_count());
  for (Obj x = 0; x < counit.size(); ++x) {
    const Subset r = fi.structure[x];
    std::array<int, max_positions> incl;
    incl.fill(-1);
    for (int p : positions(r)) incl[p] = p;
    counit[x] = fi.total_data->find(out.section.obj(r), x, code_of(incl, r, fi.carrier[x]));
  }
  out.adj = make_adjunction(out.section, out.structure, std::move(unit), std::move(counit));
  return out;
}

InstanceBundle rel_instance(std::vector<int> universe_in, InstanceLimits limits) {
  auto universe = std::make_shared<const std::vector<int>>(
      normalize_universe(std::move(universe_in), limits.rel_universe));
  const int n = static_cast<int>(universe->size());
  const Subset full = (1u << n) - 1;
  std::vector<std::pair<Subset, std::uint32_t>> objs;
  for (Subset a = 0; a <= full; ++a) {
    const std::uint32_t all = square_of(a, n);
    std::uint32_t r = 0;
    do {
      objs.emplace_back(a, r);
      r = (r - all) & all;
    } while (r != 0);
  }

  InstanceBundle out;
  out.kind = InstanceKind::rel;
  out.side = StructureSide::quotient;
  auto fi = build_function_instance(
      out, universe, objs,
      [n](Subset, std::uint32_t r, Subset, std::uint32_t s, const auto& map) {
        for (std::uint32_t bits = r; bits != 0; bits &= bits - 1) {
          const int k = std::countr_zero(bits);
          const int i = map[k / n];
          const int j = map[k % n];
          if (!(s >> (i * n + j) & 1u)) return false;
        }
        return true;
      },
      [&](Subset a, std::uint32_t r) {
        return "(" + show_subset(*universe, a) + "," + show_relation(*universe, r) + ")";
      });

  out.proj = projection(out, fi);
  out.section = function_section(out, fi, [n](Subset a) { return diagonal(a, n); });

  const std::size_t objects = out.total->object_count();
  std::vector<std::array<int, max_positions>> minima(objects);
  std::vector<Obj> quot_objs(objects);
  for (Obj x = 0; x < objects; ++x) {
    minima[x] = block_minima(fi.carrier[x], fi.structure[x], n);
    quot_objs[x] = image_of(minima[x]);
  }
  std::vector<Mor> quot_mors(out.total->morphism_count());
  for (Mor f = 0; f < quot_mors.size(); ++f) {
    const Arrow a = out.total->arrow(f);
    const auto map = position_map(fi.total_data->codes[f], fi.carrier[a.dom], fi.carrier[a.cod]);
    std::array<int, max_positions> induced;
    induced.fill(-1);
    for (int m : positions(quot_objs[a.dom])) induced[m] = minima[a.cod][map[m]];
    quot_mors[f] = base_morphism(fi.base, quot_objs[a.dom], quot_objs[a.cod],
                                 code_of(induced, quot_objs[a.dom], quot_objs[a.cod]));
  }
  out.structure = Functor(out.total, out.base, quot_objs, std::move(quot_mors));

  std::vector<Mor> unit(objects);
  for (Obj x = 0; x < objects; ++x) {
    const Obj target = out.section.obj(quot_objs[x]);
    unit[x] = fi.total_data->find(x, target, code_of(minima[x], fi.carrier[x], quot_objs[x]));
  }
  std::vector<Mor> counit(out.base->object_count());
  for (Obj b = 0; b < counit.size(); ++b) counit[b] = out.base->identity(b);
  out.adj = make_adjunction(out.structure, out.section, std::move(unit), std::move(counit));
  return out;
}

InstanceBundle powerset_instance(std::vector<int> universe_in, std::vector<int> base_set,
                                 std::vector<std::pair<int, int>> edges, InstanceLimits limits) {
  const std::vector<int> universe = normalize_universe(std::move(universe_in), limits.pow_universe);
  const int n = static_cast<int>(universe.size());
  const Subset full = (1u << n) - 1;

  Subset seed = 0;
  for (int e : base_set) seed |= 1u << position_of(universe, e);
  std::vector<std::pair<int, int>> steps;
  for (const auto& [a, b] : edges) steps.emplace_back(position_of(universe, a), position_of(universe, b));
  auto f_of = [&](Subset a) {
    Subset out = seed;
    for (const auto& [x, y] : steps) {
      if (a >> x & 1u) out |= 1u << y;
    }
    return out;
  };

  InstanceBundle out;
  out.kind = InstanceKind::pow;
  out.side = StructureSide::comprehension;
  out.universe = universe;

  std::vector<std::string> base_labels;
  for (Subset s = 0; s <= full; ++s) {
    out.base_carrier.push_back(s);
    base_labels.push_back(show_subset(universe, s));
  }
  auto base_data = enumerate(
      out.base_carrier.size(), [](Obj, Obj) { return 1u; },
      [](Obj x, Obj y, std::uint32_t) { return (x & ~y) == 0; }, [](Obj) { return 0u; });
  out.base = thin_category(base_data, std::move(base_labels));
  out.base_code = base_data->codes;

  std::vector<std::string> total_labels;
  std::unordered_map<std::uint64_t, Obj> index;
  for (Subset a = 0; a <= full; ++a) {
    for (Subset r = 0; r <= a; ++r) {
      if ((r & ~a) != 0) continue;
      index.emplace(total_key(a, r), static_cast<Obj>(out.total_carrier.size()));
      out.total_carrier.push_back(a);
      out.total_structure.push_back(r);
      total_labels.push_back("(" + show_subset(universe, a) + "," + show_subset(universe, r) + ")");
    }
  }
  const auto& tc = out.total_carrier;
  const auto& ts = out.total_structure;
  auto total_data = enumerate(
      tc.size(), [](Obj, Obj) { return 1u; },
      [&](Obj x, Obj y, std::uint32_t) { return (tc[x] & ~tc[y]) == 0 && (ts[x] & ~ts[y]) == 0; },
      [](Obj) { return 0u; });
  out.total = thin_category(total_data, std::move(total_labels));

  auto total_of = [&](Subset a, Subset r) { return index.at(total_key(a, r)); };
  // Functors between thin categories are determined by their object maps.
  auto thin_functor = [](const CategoryPtr& src, const CategoryPtr& dst,
                         const std::shared_ptr<Concrete>& dst_data, std::vector<Obj> objs) {
    std::vector<Mor> mors(src->morphism_count());
    for (Mor f = 0; f < mors.size(); ++f) {
      mors[f] = dst_data->find(objs[src->dom(f)], objs[src->cod(f)], 0);
      if (mors[f] == no_mor) throw StructuralError("object map is not monotone");
    }
    return Functor(src, dst, std::move(objs), std::move(mors));
  };

  std::vector<Obj> p_objs(tc.begin(), tc.end());
  out.proj = thin_functor(out.total, out.base, base_data, p_objs);
  std::vector<Obj> star_objs(out.base->object_count());
  for (Subset a = 0; a <= full; ++a) star_objs[a] = total_of(a, a);
  out.section = thin_functor(out.base, out.total, total_data, star_objs);
  std::vector<Obj> comp_objs(ts.begin(), ts.end());
  out.structure = thin_functor(out.total, out.base, base_data, comp_objs);

  std::vector<Mor> unit(out.base->object_count());
  for (Obj a = 0; a < unit.size(); ++a) unit[a] = out.base->identity(a);
  std::vector<Mor> counit(out.total->object_count());
  for (Obj x = 0; x < counit.size(); ++x) counit[x] = total_data->find(total_of(ts[x], ts[x]), x, 0);
  out.adj = make_adjunction(out.section, out.structure, std::move(unit), std::move(counit));

  std::vector<Obj> f_objs(out.base->object_count());
  for (Subset a = 0; a <= full; ++a) f_objs[a] = f_of(a);
  const Functor big_f = thin_functor(out.base, out.base, base_data, f_objs);
  std::vector<Obj> g_objs(out.total->object_count());
  for (Obj x = 0; x < g_objs.size(); ++x) g_objs[x] = total_of(f_of(tc[x]), f_of(ts[x]));
  const Functor big_g = thin_functor(out.total, out.total, total_data, g_objs);

  const NatTrans delta = identity_transformation(compose(big_f, out.proj));
  const NatTrans sigma = identity_transformation(compose(out.section, big_f));
  out.endo = EndoData{big_f, big_g,
                      retype(delta, compose(big_f, out.proj), compose(out.proj, big_g)),
                      retype(sigma, compose(big_g, out.section), compose(out.section, big_f))};
  return out;
}

namespace {

Functor section_with(const InstanceBundle& b, const std::function<std::uint32_t(Subset)>& structure) {
  const std::size_t n = b.base->object_count();
  std::vector<Obj> objs(n);
  for (Obj a = 0; a < n; ++a) objs[a] = b.total_object(b.base_carrier[a], structure(b.base_carrier[a]));
  std::vector<Mor> mors(b.base->morphism_count());
  for (Mor f = 0; f < mors.size(); ++f) {
    const Arrow a = b.base->arrow(f);
    Mor found = no_mor;
    for (Mor g : b.total->hom(objs[a.dom], objs[a.cod])) {
      if (b.proj.mor(g) == f) {
        found = g;
        break;
      }
    }
    if (found == no_mor) throw StructuralError("section does not act on " + b.base->morphism_label(f));
    mors[f] = found;
  }
  return Functor(b.base, b.total, std::move(objs), std::move(mors));
}

}  // namespace

Functor empty_predicate_section(const InstanceBundle& pred) {
  if (pred.kind != InstanceKind::pred) throw StructuralError("not a Pred instance");
  return section_with(pred, [](Subset) { return 0u; });
}

Functor empty_relation_section(const InstanceBundle& rel) {
  if (rel.kind != InstanceKind::rel) throw StructuralError("not a Rel instance");
  return section_with(rel, [](Subset) { return 0u; });
}

std::vector<int> element_map(const InstanceBundle& b, Mor f) {
  const Arrow a = b.base->arrow(f);
  const Subset dom = b.base_carrier[a.dom];
  std::vector<int> out(b.universe.size(), -1);
  if (b.kind == InstanceKind::pow) {
    for (int p : positions(dom)) out[p] = p;
    return out;
  }
  const auto map = position_map(b.base_code.at(f), dom, b.base_carrier[a.cod]);
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = map[p];
  return out;
}

std::vector<int> total_element_map(const InstanceBundle& b, Mor f) {
  return element_map(b, b.proj.mor(f));
}

LawReport validate_instance(const InstanceBundle& b, ValidationLimits limits) {
  LawReport report;
  report.merge(validate_category(*b.base, limits), "base.");
  report.merge(validate_category(*b.total, limits), "total.");
  report.merge(validate_functor(b.proj), "proj.");
  report.merge(validate_functor(b.section), "section.");
  report.merge(validate_functor(b.structure), "structure.");
  if (!(compose(b.proj, b.section) == identity_functor(b.base)))
    report.fail("section.strict", "p . section differs from the identity");
  report.merge(check_adjunction(b.adj), "adjunction.");
  if (b.endo) {
    report.merge(validate_functor(b.endo->base_endo), "endo.base.");
    report.merge(validate_functor(b.endo->total_endo), "endo.total.");
    report.merge(validate_nat_trans(b.endo->delta), "endo.delta.");
    report.merge(validate_nat_trans(b.endo->sigma), "endo.sigma.");
  }
  return report;
}

const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::pred:
      return "pred";
    case InstanceKind::rel:
      return "rel";
    case InstanceKind::pow:
      return "pow";
  }
  return "unknown";
}

}  // namespace compcat
