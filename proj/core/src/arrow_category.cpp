#include <algorithm>
#include <unordered_map>

#include "compcat/fincat.hpp"

namespace compcat {

namespace {

struct SquareKey {
  std::uint64_t ends;
  std::uint64_t sides;
  bool operator==(const SquareKey&) const = default;
};

struct SquareKeyHash {
  std::size_t operator()(const SquareKey& k) const noexcept {
    return std::hash<std::uint64_t>{}(k.ends * 0x9e3779b97f4a7c15ULL ^ k.sides);
  }
};

SquareKey key_of(Obj f, Obj f2, Mor w, Mor v) {
  return {(std::uint64_t{f} << 32) | f2, (std::uint64_t{w} << 32) | v};
}

std::vector<std::vector<Mor>> sorted_outgoing(const Category& b) {
  std::vector<std::vector<Mor>> out(b.object_count());
  for (Obj x = 0; x < b.object_count(); ++x) {
    auto span = b.outgoing(x);
    out[x].assign(span.begin(), span.end());
    std::sort(out[x].begin(), out[x].end());
  }
  return out;
}

}  // namespace

struct ArrowBundle::Index {
  std::unordered_map<SquareKey, Mor, SquareKeyHash> squares;

  Mor find(Obj f, Obj f2, Mor w, Mor v) const {
    auto it = squares.find(key_of(f, f2, w, v));
    return it == squares.end() ? no_mor : it->second;
  }
};

ArrowBundle::ArrowBundle(CategoryPtr base) : base_(std::move(base)) {
  const Category& b = *base_;
  const auto out = sorted_outgoing(b);

  auto squares = std::make_shared<std::vector<Square>>();
  auto index = std::make_shared<Index>();
  std::vector<Arrow> arrows;

  for (Mor f = 0; f < b.morphism_count(); ++f) {
    for (Mor w : out[b.dom(f)]) {
      for (Mor v : out[b.cod(f)]) {
        const Mor vf = b.compose(v, f);
        for (Mor f2 : b.hom(b.cod(w), b.cod(v))) {
          if (b.compose(f2, w) != vf) continue;
          const auto id = static_cast<Mor>(arrows.size());
          arrows.push_back({f, f2});
          squares->push_back({w, v});
          index->squares.emplace(key_of(f, f2, w, v), id);
        }
      }
    }
  }

  std::vector<std::string> objects(b.morphism_count());
  for (Mor f = 0; f < objects.size(); ++f) objects[f] = b.morphism_label(f);
  std::vector<Mor> ids(b.morphism_count());
  for (Mor f = 0; f < ids.size(); ++f)
    ids[f] = index->find(f, f, b.identity(b.dom(f)), b.identity(b.cod(f)));

  squares_ = squares;
  index_ = index;
  auto arrow_list = std::make_shared<std::vector<Arrow>>(arrows);
  const CategoryPtr bp = base_;
  arrows_ = share(Category::computed(
      std::move(objects), std::move(arrows), std::move(ids),
      [bp, squares, index, arrow_list](Mor g, Mor f) {
        const Square& outer = (*squares)[g];
        const Square& inner = (*squares)[f];
        return index->find((*arrow_list)[f].dom, (*arrow_list)[g].cod,
                           bp->compose(outer.w, inner.w), bp->compose(outer.v, inner.v));
      },
      [bp, squares](Mor s) {
        return "(" + bp->morphism_label((*squares)[s].w) + ", " +
               bp->morphism_label((*squares)[s].v) + ")";
      }));

  const Category& a = *arrows_;
  std::vector<Obj> dom_obj(a.object_count());
  std::vector<Obj> cod_obj(a.object_count());
  for (Obj f = 0; f < a.object_count(); ++f) {
    dom_obj[f] = b.dom(f);
    cod_obj[f] = b.cod(f);
  }
  std::vector<Mor> dom_mor(a.morphism_count());
  std::vector<Mor> cod_mor(a.morphism_count());
  for (Mor s = 0; s < a.morphism_count(); ++s) {
    dom_mor[s] = (*squares)[s].w;
    cod_mor[s] = (*squares)[s].v;
  }
  dom_ = Functor(arrows_, base_, std::move(dom_obj), std::move(dom_mor));
  cod_ = Functor(arrows_, base_, std::move(cod_obj), std::move(cod_mor));

  std::vector<Obj> id_obj(b.object_count());
  for (Obj x = 0; x < id_obj.size(); ++x) id_obj[x] = b.identity(x);
  std::vector<Mor> id_mor(b.morphism_count());
  for (Mor u = 0; u < id_mor.size(); ++u)
    id_mor[u] = index->find(b.identity(b.dom(u)), b.identity(b.cod(u)), u, u);
  id_ = Functor(base_, arrows_, std::move(id_obj), std::move(id_mor));

  std::vector<Mor> hom_comps(a.object_count());
  for (Obj f = 0; f < hom_comps.size(); ++f) hom_comps[f] = f;
  hom_ = NatTrans(dom_, cod_, std::move(hom_comps));
}

Mor ArrowBundle::square(Obj f, Obj f2, Mor w, Mor v) const { return index_->find(f, f2, w, v); }

Functor ArrowBundle::factorize(const NatTrans& alpha) const {
  const Functor& p = alpha.source();
  const Functor& q = alpha.target();
  if (!same_category(p.target(), base_))
    throw StructuralError("factorize: transformation does not land in the base category");
  const Category& x = *p.source();
  std::vector<Obj> objs(x.object_count());
  for (Obj c = 0; c < objs.size(); ++c) objs[c] = alpha.at(c);
  std::vector<Mor> mors(x.morphism_count());
  for (Mor u = 0; u < mors.size(); ++u) {
    mors[u] = square(alpha.at(x.dom(u)), alpha.at(x.cod(u)), p.mor(u), q.mor(u));
    if (mors[u] == no_mor)
      throw StructuralError("factorize: naturality square fails at " + x.morphism_label(u));
  }
  return Functor(p.source(), arrows_, std::move(objs), std::move(mors));
}

ArrowBundle arrow_category(const CategoryPtr& b) { return ArrowBundle(b); }

}  // namespace compcat
