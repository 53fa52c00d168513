#include "compcat/fincat.hpp"

#include <algorithm>
#include <unordered_set>

namespace compcat {

namespace {

std::uint64_t pair_key(Mor g, Mor f) { return (std::uint64_t{g} << 32) | f; }

std::string pair_witness(const Category& c, Mor g, Mor f) {
  return "(" + c.morphism_label(g) + ", " + c.morphism_label(f) + ")";
}

}  // namespace

void LawReport::add(Violation v) {
  if (count(v.law) >= kept_per_law) {
    ++dropped_;
    return;
  }
  violations_.push_back(std::move(v));
}

void LawReport::fail(std::string law, std::string witness) {
  add({std::move(law), std::move(witness), false});
}

void LawReport::structural(std::string law, std::string witness) {
  add({std::move(law), std::move(witness), true});
}

void LawReport::merge(const LawReport& other, const std::string& prefix) {
  for (const auto& v : other.violations_) add({prefix + v.law, v.witness, v.structural});
  dropped_ += other.dropped_;
}

bool LawReport::has(std::string_view law) const { return count(law) > 0; }

std::size_t LawReport::count(std::string_view law) const {
  return static_cast<std::size_t>(std::count_if(violations_.begin(), violations_.end(),
                                                [&](const Violation& v) { return v.law == law; }));
}

Category Category::presented(std::vector<std::string> objects,
                             std::vector<std::string> morphism_labels,
                             std::vector<Arrow> arrows, std::vector<Mor> identities,
                             std::span<const Composite> compose) {
  Category c;
  c.objects_ = std::move(objects);
  c.morphism_labels_ = std::move(morphism_labels);
  c.arrows_ = std::move(arrows);
  c.identities_ = std::move(identities);
  if (c.morphism_labels_.size() != c.arrows_.size())
    throw StructuralError("morphism label count differs from morphism count");
  c.index();
  const std::size_t m = c.arrows_.size();
  c.table_.assign(m * m, no_mor);
  for (const auto& e : compose) {
    c.check_mor(e.g);
    c.check_mor(e.f);
    c.check_mor(e.h);
    if (c.dom(e.g) != c.cod(e.f))
      throw StructuralError("composite declared for non-composable pair " +
                            pair_witness(c, e.g, e.f));
    c.table_[std::size_t{e.g} * m + e.f] = e.h;
  }
  return c;
}

Category Category::computed(std::vector<std::string> objects, std::vector<Arrow> arrows,
                            std::vector<Mor> identities, Rule rule, Namer namer) {
  Category c;
  c.objects_ = std::move(objects);
  c.arrows_ = std::move(arrows);
  c.identities_ = std::move(identities);
  c.rule_ = std::move(rule);
  c.namer_ = std::move(namer);
  c.index();
  return c;
}

void Category::index() {
  const std::size_t n = objects_.size();
  const std::size_t m = arrows_.size();
  if (m >= no_mor || n >= no_obj) throw ResourceError("category too large to index");
  if (identities_.size() != n) throw StructuralError("identity map must cover every object");
  for (const auto& a : arrows_) {
    if (a.dom >= n || a.cod >= n)
      throw StructuralError("morphism endpoint out of range");
  }
  for (Mor id : identities_) {
    if (id >= m) throw StructuralError("identity index out of range");
  }

  hom_offsets_.assign(n * n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const auto& a : arrows_) {
    ++hom_offsets_[std::size_t{a.dom} * n + a.cod + 1];
    ++in_offsets_[a.cod + 1];
  }
  for (std::size_t i = 1; i < hom_offsets_.size(); ++i) hom_offsets_[i] += hom_offsets_[i - 1];
  for (std::size_t i = 1; i < in_offsets_.size(); ++i) in_offsets_[i] += in_offsets_[i - 1];

  by_dom_.resize(m);
  by_cod_.resize(m);
  std::vector<std::uint32_t> fill(hom_offsets_.begin(), hom_offsets_.end() - 1);
  std::vector<std::uint32_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (Mor f = 0; f < m; ++f) {
    const auto& a = arrows_[f];
    by_dom_[fill[std::size_t{a.dom} * n + a.cod]++] = f;
    by_cod_[in_fill[a.cod]++] = f;
  }
}

void Category::check_obj(Obj x) const {
  if (x >= objects_.size())
    throw StructuralError("object index " + std::to_string(x) + " out of range");
}

void Category::check_mor(Mor f) const {
  if (f >= arrows_.size())
    throw StructuralError("morphism index " + std::to_string(f) + " out of range");
}

const Arrow& Category::arrow(Mor f) const {
  check_mor(f);
  return arrows_[f];
}

Mor Category::identity(Obj x) const {
  check_obj(x);
  return identities_[x];
}

Mor Category::find_composite(Mor g, Mor f) const {
  check_mor(g);
  check_mor(f);
  if (arrows_[g].dom != arrows_[f].cod)
    throw StructuralError("non-composable pair " + pair_witness(*this, g, f));
  if (rule_) return rule_(g, f);
  return table_[std::size_t{g} * arrows_.size() + f];
}

Mor Category::compose(Mor g, Mor f) const {
  const Mor h = find_composite(g, f);
  if (h == no_mor) throw StructuralError("composite undefined for " + pair_witness(*this, g, f));
  return h;
}

std::span<const Mor> Category::hom(Obj x, Obj y) const {
  check_obj(x);
  check_obj(y);
  const std::size_t k = std::size_t{x} * objects_.size() + y;
  return {by_dom_.data() + hom_offsets_[k], by_dom_.data() + hom_offsets_[k + 1]};
}

std::span<const Mor> Category::outgoing(Obj x) const {
  check_obj(x);
  const std::size_t n = objects_.size();
  const std::size_t k = std::size_t{x} * n;
  return {by_dom_.data() + hom_offsets_[k], by_dom_.data() + hom_offsets_[k + n]};
}

std::span<const Mor> Category::incoming(Obj y) const {
  check_obj(y);
  return {by_cod_.data() + in_offsets_[y], by_cod_.data() + in_offsets_[y + 1]};
}

const std::string& Category::object_label(Obj x) const {
  check_obj(x);
  return objects_[x];
}

std::string Category::morphism_label(Mor f) const {
  if (f >= arrows_.size()) return "#" + std::to_string(f);
  if (!morphism_labels_.empty()) return morphism_labels_[f];
  if (namer_) return namer_(f);
  return "m" + std::to_string(f);
}

bool Category::same_shape(const Category& other) const {
  if (objects_.size() != other.objects_.size() || arrows_.size() != other.arrows_.size())
    return false;
  if (identities_ != other.identities_) return false;
  return std::equal(arrows_.begin(), arrows_.end(), other.arrows_.begin(),
                    [](const Arrow& a, const Arrow& b) { return a.dom == b.dom && a.cod == b.cod; });
}

bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
  if (a == b) return true;
  return a && b && a->same_shape(*b);
}

Obj CategoryBuilder::add_object(std::string label) {
  objects_.push_back(std::move(label));
  identities_.push_back(no_mor);
  return static_cast<Obj>(objects_.size() - 1);
}

Mor CategoryBuilder::add_morphism(std::string label, Obj dom, Obj cod) {
  if (dom >= objects_.size() || cod >= objects_.size())
    throw StructuralError("morphism '" + label + "' has an endpoint out of range");
  labels_.push_back(std::move(label));
  arrows_.push_back({dom, cod});
  return static_cast<Mor>(arrows_.size() - 1);
}

void CategoryBuilder::set_identity(Obj x, Mor f) {
  if (x >= objects_.size() || f >= arrows_.size())
    throw StructuralError("identity assignment out of range");
  identities_[x] = f;
}

void CategoryBuilder::set_compose(Mor g, Mor f, Mor h) { compose_.push_back({g, f, h}); }

void CategoryBuilder::ensure_identities() {
  for (Obj x = 0; x < objects_.size(); ++x) {
    if (identities_[x] == no_mor) identities_[x] = add_morphism("id_" + objects_[x], x, x);
  }
}

void CategoryBuilder::infer_identity_composites() {
  std::unordered_set<std::uint64_t> declared;
  for (const auto& e : compose_) declared.insert(pair_key(e.g, e.f));
  for (Mor f = 0; f < arrows_.size(); ++f) {
    const Mor left = identities_[arrows_[f].cod];
    const Mor right = identities_[arrows_[f].dom];
    if (left != no_mor && declared.insert(pair_key(left, f)).second) compose_.push_back({left, f, f});
    if (right != no_mor && declared.insert(pair_key(f, right)).second)
      compose_.push_back({f, right, f});
  }
}

Category CategoryBuilder::build() const {
  for (Obj x = 0; x < objects_.size(); ++x) {
    if (identities_[x] == no_mor)
      throw StructuralError("object '" + objects_[x] + "' has no identity");
  }
  return Category::presented(objects_, labels_, arrows_, identities_, compose_);
}

LawReport validate_category(const Category& c, ValidationLimits limits) {
  LawReport report;
  const std::size_t n = c.object_count();
  const std::size_t m = c.morphism_count();

  std::size_t triples = 0;
  for (Mor g = 0; g < m; ++g) {
    triples += c.incoming(c.dom(g)).size() * c.outgoing(c.cod(g)).size();
    if (triples > limits.max_triples)
      throw ResourceError("associativity check exceeds " + std::to_string(limits.max_triples) +
                          " composable triples");
  }

  for (Obj x = 0; x < n; ++x) {
    const Mor id = c.identity(x);
    if (c.dom(id) != x || c.cod(id) != x)
      report.structural("identity.typing", "object " + c.object_label(x));
  }

  auto well_typed = [&](Mor g, Mor f, Mor h) {
    return h != no_mor && c.dom(h) == c.dom(f) && c.cod(h) == c.cod(g);
  };

  for (Mor f = 0; f < m; ++f) {
    for (Mor g : c.outgoing(c.cod(f))) {
      const Mor h = c.find_composite(g, f);
      if (h == no_mor)
        report.structural("composition.total", pair_witness(c, g, f));
      else if (!well_typed(g, f, h))
        report.structural("composition.typing", pair_witness(c, g, f));
    }
  }

  for (Mor f = 0; f < m; ++f) {
    const Mor left = c.identity(c.cod(f));
    const Mor right = c.identity(c.dom(f));
    if (c.dom(left) == c.cod(f) && c.find_composite(left, f) != f)
      report.fail("identity.left", pair_witness(c, left, f));
    if (c.cod(right) == c.dom(f) && c.find_composite(f, right) != f)
      report.fail("identity.right", pair_witness(c, f, right));
  }

  for (Mor f = 0; f < m; ++f) {
    for (Mor g : c.outgoing(c.cod(f))) {
      const Mor gf = c.find_composite(g, f);
      if (!well_typed(g, f, gf)) continue;
      for (Mor h : c.outgoing(c.cod(g))) {
        const Mor hg = c.find_composite(h, g);
        if (!well_typed(h, g, hg)) continue;
        const Mor left = c.find_composite(h, gf);
        const Mor right = c.find_composite(hg, f);
        if (left != right)
          report.fail("associativity", "(" + c.morphism_label(h) + ", " + c.morphism_label(g) +
                                           ", " + c.morphism_label(f) + ")");
      }
    }
  }
  return report;
}

Functor::Functor(CategoryPtr source, CategoryPtr target, std::vector<Obj> obj_map,
                 std::vector<Mor> mor_map)
    : source_(std::move(source)),
      target_(std::move(target)),
      obj_map_(std::move(obj_map)),
      mor_map_(std::move(mor_map)) {
  if (!source_ || !target_) throw StructuralError("functor without source or target");
  if (obj_map_.size() != source_->object_count() || mor_map_.size() != source_->morphism_count())
    throw StructuralError("functor tables do not cover the source category");
  for (Obj y : obj_map_) {
    if (y >= target_->object_count()) throw StructuralError("functor object image out of range");
  }
  for (Mor g : mor_map_) {
    if (g >= target_->morphism_count())
      throw StructuralError("functor morphism image out of range");
  }
}

bool Functor::operator==(const Functor& other) const {
  return same_category(source_, other.source_) && same_category(target_, other.target_) &&
         obj_map_ == other.obj_map_ && mor_map_ == other.mor_map_;
}

Functor identity_functor(const CategoryPtr& c) {
  std::vector<Obj> objs(c->object_count());
  std::vector<Mor> mors(c->morphism_count());
  for (Obj x = 0; x < objs.size(); ++x) objs[x] = x;
  for (Mor f = 0; f < mors.size(); ++f) mors[f] = f;
  return Functor(c, c, std::move(objs), std::move(mors));
}

Functor compose(const Functor& g, const Functor& f) {
  if (!same_category(f.target(), g.source()))
    throw StructuralError("functor composition: target of inner differs from source of outer");
  std::vector<Obj> objs(f.obj_map().size());
  std::vector<Mor> mors(f.mor_map().size());
  for (std::size_t i = 0; i < objs.size(); ++i) objs[i] = g.obj_map()[f.obj_map()[i]];
  for (std::size_t i = 0; i < mors.size(); ++i) mors[i] = g.mor_map()[f.mor_map()[i]];
  return Functor(f.source(), g.target(), std::move(objs), std::move(mors));
}

Functor constant_functor(const CategoryPtr& c, const CategoryPtr& target, Obj x) {
  const Mor id = target->identity(x);
  return Functor(c, target, std::vector<Obj>(c->object_count(), x),
                 std::vector<Mor>(c->morphism_count(), id));
}

LawReport validate_functor(const Functor& fn, FunctorLimits limits) {
  LawReport report;
  const Category& s = *fn.source();
  const Category& t = *fn.target();

  std::size_t pairs = 0;
  for (Obj x = 0; x < s.object_count(); ++x) {
    pairs += s.incoming(x).size() * s.outgoing(x).size();
    if (pairs > limits.max_pairs)
      throw ResourceError("functor check exceeds " + std::to_string(limits.max_pairs) +
                          " composable pairs");
  }

  std::vector<char> typed(s.morphism_count(), 1);
  for (Mor f = 0; f < s.morphism_count(); ++f) {
    const Mor image = fn.mor(f);
    if (t.dom(image) != fn.obj(s.dom(f)) || t.cod(image) != fn.obj(s.cod(f))) {
      typed[f] = 0;
      report.fail("functor.dom_cod", "morphism " + s.morphism_label(f));
    }
  }
  for (Obj x = 0; x < s.object_count(); ++x) {
    if (fn.mor(s.identity(x)) != t.identity(fn.obj(x)))
      report.fail("functor.identity", "object " + s.object_label(x));
  }
  for (Mor f = 0; f < s.morphism_count(); ++f) {
    if (!typed[f]) continue;
    for (Mor g : s.outgoing(s.cod(f))) {
      if (!typed[g]) continue;
      const Mor gf = s.find_composite(g, f);
      if (gf == no_mor) continue;
      if (fn.mor(gf) != t.compose(fn.mor(g), fn.mor(f)))
        report.fail("functor.composition", pair_witness(s, g, f));
    }
  }
  return report;
}

NatTrans::NatTrans(Functor source, Functor target, std::vector<Mor> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (!same_category(source_.source(), target_.source()) ||
      !same_category(source_.target(), target_.target()))
    throw StructuralError("natural transformation between non-parallel functors");
  if (components_.size() != source_.source()->object_count())
    throw StructuralError("natural transformation must have one component per object");
  for (Mor c : components_) {
    if (c >= source_.target()->morphism_count())
      throw StructuralError("component index out of range");
  }
}

bool NatTrans::operator==(const NatTrans& other) const {
  return source_ == other.source_ && target_ == other.target_ && components_ == other.components_;
}

NatTrans identity_transformation(const Functor& f) {
  std::vector<Mor> comps(f.source()->object_count());
  for (Obj x = 0; x < comps.size(); ++x) comps[x] = f.target()->identity(f.obj(x));
  return NatTrans(f, f, std::move(comps));
}

NatTrans vertical(const NatTrans& beta, const NatTrans& alpha) {
  if (!(alpha.target() == beta.source()))
    throw StructuralError("vertical composition of non-matching transformations");
  const Category& t = *alpha.source().target();
  std::vector<Mor> comps(alpha.components().size());
  for (Obj x = 0; x < comps.size(); ++x) comps[x] = t.compose(beta.at(x), alpha.at(x));
  return NatTrans(alpha.source(), beta.target(), std::move(comps));
}

NatTrans whisker(const Functor& h, const NatTrans& alpha) {
  std::vector<Mor> comps(alpha.components().size());
  for (Obj x = 0; x < comps.size(); ++x) comps[x] = h.mor(alpha.at(x));
  return NatTrans(compose(h, alpha.source()), compose(h, alpha.target()), std::move(comps));
}

NatTrans whisker(const NatTrans& alpha, const Functor& k) {
  std::vector<Mor> comps(k.source()->object_count());
  for (Obj x = 0; x < comps.size(); ++x) comps[x] = alpha.at(k.obj(x));
  return NatTrans(compose(alpha.source(), k), compose(alpha.target(), k), std::move(comps));
}

NatTrans retype(const NatTrans& alpha, Functor source, Functor target) {
  if (!(source.obj_map() == alpha.source().obj_map() && source.mor_map() == alpha.source().mor_map() &&
        target.obj_map() == alpha.target().obj_map() && target.mor_map() == alpha.target().mor_map()))
    throw StructuralError("retype: endpoint tables differ");
  return NatTrans(std::move(source), std::move(target), alpha.components());
}

LawReport validate_nat_trans(const NatTrans& a) {
  LawReport report;
  const Functor& f = a.source();
  const Functor& g = a.target();
  const Category& s = *f.source();
  const Category& t = *f.target();
  std::vector<char> typed(s.object_count(), 1);
  for (Obj x = 0; x < s.object_count(); ++x) {
    const Mor c = a.at(x);
    if (t.dom(c) != f.obj(x) || t.cod(c) != g.obj(x)) {
      typed[x] = 0;
      report.structural("nat.typing", "object " + s.object_label(x));
    }
  }
  for (Mor u = 0; u < s.morphism_count(); ++u) {
    const Obj x = s.dom(u);
    const Obj y = s.cod(u);
    if (!typed[x] || !typed[y]) continue;
    const Mor gu = g.mor(u);
    const Mor fu = f.mor(u);
    if (t.dom(gu) != t.cod(a.at(x)) || t.cod(fu) != t.dom(a.at(y))) continue;
    if (t.compose(gu, a.at(x)) != t.compose(a.at(y), fu))
      report.fail("nat.naturality", "morphism " + s.morphism_label(u));
  }
  return report;
}

Mor inverse_of(const Category& c, Mor f) {
  for (Mor g : c.hom(c.cod(f), c.dom(f))) {
    if (c.compose(g, f) == c.identity(c.dom(f)) && c.compose(f, g) == c.identity(c.cod(f)))
      return g;
  }
  return no_mor;
}

std::optional<NatTrans> invert(const NatTrans& a) {
  const Category& t = *a.source().target();
  std::vector<Mor> comps(a.components().size());
  for (Obj x = 0; x < comps.size(); ++x) {
    comps[x] = inverse_of(t, a.at(x));
    if (comps[x] == no_mor) return std::nullopt;
  }
  return NatTrans(a.target(), a.source(), std::move(comps));
}

CategoryPtr opposite(const CategoryPtr& c) {
  std::vector<std::string> objects(c->object_count());
  for (Obj x = 0; x < objects.size(); ++x) objects[x] = c->object_label(x);
  std::vector<Arrow> arrows(c->morphism_count());
  for (Mor f = 0; f < arrows.size(); ++f) arrows[f] = {c->cod(f), c->dom(f)};
  std::vector<Mor> ids(c->object_count());
  for (Obj x = 0; x < ids.size(); ++x) ids[x] = c->identity(x);
  return share(Category::computed(
      std::move(objects), std::move(arrows), std::move(ids),
      [c](Mor g, Mor f) { return c->find_composite(f, g); },
      [c](Mor f) { return c->morphism_label(f); }));
}

Functor opposite(const Functor& f, const CategoryPtr& source_op, const CategoryPtr& target_op) {
  return Functor(source_op, target_op, f.obj_map(), f.mor_map());
}

NatTrans opposite(const NatTrans& a, const Functor& source_op, const Functor& target_op) {
  return NatTrans(target_op, source_op, a.components());
}

CategoryPtr terminal_category() {
  CategoryBuilder b;
  b.add_object("*");
  b.ensure_identities();
  b.infer_identity_composites();
  return share(b.build());
}

CategoryPtr walking_arrow() {
  CategoryBuilder b;
  const Obj x = b.add_object("0");
  const Obj y = b.add_object("1");
  b.ensure_identities();
  b.add_morphism("u", x, y);
  b.infer_identity_composites();
  return share(b.build());
}

CategoryPtr empty_category() { return share(CategoryBuilder{}.build()); }

}  // namespace compcat
