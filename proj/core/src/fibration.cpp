#include "compcat/fibration.hpp"

#include <algorithm>
#include <map>

namespace compcat {

namespace {

constexpr std::size_t witness_cap = 8;

std::string pair_label(const Category& base, Mor v, const Category& total, Obj s) {
  return "(" + base.morphism_label(v) + ", " + total.object_label(s) + ")";
}

// Pre/post-composition with f is a bijection from the group of morphisms
// over one base arrow onto all morphisms over the other.
bool bijective(const Category& e, const std::vector<Mor>& sources, std::size_t target_count,
               Mor f, bool precompose) {
  if (sources.size() != target_count) return false;
  std::vector<Mor> images;
  images.reserve(sources.size());
  for (Mor g : sources) images.push_back(precompose ? e.compose(g, f) : e.compose(f, g));
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) == images.end();
}

template <class OnFailure>
void scan_opcartesian(const Functor& p, Mor f, OnFailure on_failure) {
  const Category& e = *p.source();
  const Category& b = *p.target();
  const Obj s = e.cod(f);
  const Obj r = e.dom(f);
  const Mor u = p.mor(f);
  for (Obj s2 = 0; s2 < e.object_count(); ++s2) {
    std::map<Mor, std::vector<Mor>> over;
    for (Mor g : e.hom(s, s2)) over[p.mor(g)].push_back(g);
    std::map<Mor, std::size_t> targets;
    for (Mor h : e.hom(r, s2)) ++targets[p.mor(h)];
    for (Mor v : b.hom(p.obj(s), p.obj(s2))) {
      const auto it = over.find(v);
      const std::vector<Mor> none;
      const auto& group = it == over.end() ? none : it->second;
      const auto t = targets.find(b.compose(v, u));
      const std::size_t count = t == targets.end() ? 0 : t->second;
      if (!bijective(e, group, count, f, true)) {
        if (!on_failure(v, s2)) return;
      }
    }
  }
}

template <class OnFailure>
void scan_cartesian(const Functor& p, Mor f, OnFailure on_failure) {
  const Category& e = *p.source();
  const Category& b = *p.target();
  const Obj r = e.dom(f);
  const Obj s = e.cod(f);
  const Mor u = p.mor(f);
  for (Obj r2 = 0; r2 < e.object_count(); ++r2) {
    std::map<Mor, std::vector<Mor>> over;
    for (Mor h : e.hom(r2, r)) over[p.mor(h)].push_back(h);
    std::map<Mor, std::size_t> targets;
    for (Mor g : e.hom(r2, s)) ++targets[p.mor(g)];
    for (Mor w : b.hom(p.obj(r2), p.obj(r))) {
      const auto it = over.find(w);
      const std::vector<Mor> none;
      const auto& group = it == over.end() ? none : it->second;
      const auto t = targets.find(b.compose(u, w));
      const std::size_t count = t == targets.end() ? 0 : t->second;
      if (!bijective(e, group, count, f, false)) {
        if (!on_failure(w, r2)) return;
      }
    }
  }
}

std::vector<std::vector<Obj>> objects_over(const Functor& p) {
  std::vector<std::vector<Obj>> over(p.target()->object_count());
  for (Obj x = 0; x < p.source()->object_count(); ++x) over[p.obj(x)].push_back(x);
  return over;
}

Mor checked_compose(const Category& c, Mor g, Mor f) {
  if (g == no_mor || f == no_mor || c.dom(g) != c.cod(f)) return no_mor;
  return c.find_composite(g, f);
}

}  // namespace

CartesianStatus cartesian_status(const Functor& p, Mor f) {
  const Category& e = *p.source();
  const Category& b = *p.target();
  CartesianStatus st;
  scan_opcartesian(p, f, [&](Mor v, Obj s2) {
    st.is_opcartesian = false;
    if (st.opcartesian_witnesses.size() < witness_cap)
      st.opcartesian_witnesses.push_back(pair_label(b, v, e, s2));
    return true;
  });
  scan_cartesian(p, f, [&](Mor w, Obj r2) {
    st.is_cartesian = false;
    if (st.cartesian_witnesses.size() < witness_cap)
      st.cartesian_witnesses.push_back(pair_label(b, w, e, r2));
    return true;
  });
  return st;
}

bool is_opcartesian(const Functor& p, Mor f) {
  bool ok = true;
  scan_opcartesian(p, f, [&](Mor, Obj) { return ok = false; });
  return ok;
}

bool is_cartesian(const Functor& p, Mor f) {
  bool ok = true;
  scan_cartesian(p, f, [&](Mor, Obj) { return ok = false; });
  return ok;
}

FibrationClass classify_functor(const Functor& p) {
  const Category& e = *p.source();
  const Category& b = *p.target();
  const auto over = objects_over(p);
  FibrationClass out;
  for (Mor u = 0; u < b.morphism_count(); ++u) {
    for (Obj r : over[b.dom(u)]) {
      bool found = false;
      for (Mor g : e.outgoing(r)) {
        if (p.mor(g) == u && is_opcartesian(p, g)) {
          found = true;
          break;
        }
      }
      if (!found) {
        out.is_opfibration = false;
        if (out.missing_opcartesian.size() < witness_cap)
          out.missing_opcartesian.push_back(pair_label(b, u, e, r));
      }
    }
    for (Obj s : over[b.cod(u)]) {
      bool found = false;
      for (Mor g : e.incoming(s)) {
        if (p.mor(g) == u && is_cartesian(p, g)) {
          found = true;
          break;
        }
      }
      if (!found) {
        out.is_fibration = false;
        if (out.missing_cartesian.size() < witness_cap)
          out.missing_cartesian.push_back(pair_label(b, u, e, s));
      }
    }
  }
  out.is_bifibration = out.is_fibration && out.is_opfibration;
  return out;
}

Fiber fiber(const Functor& p, Obj b) {
  const Category& e = *p.source();
  const Mor id_b = p.target()->identity(b);
  Fiber out;
  std::vector<Obj> local(e.object_count(), no_obj);
  for (Obj x = 0; x < e.object_count(); ++x) {
    if (p.obj(x) == b) {
      local[x] = static_cast<Obj>(out.objects.size());
      out.objects.push_back(x);
    }
  }
  std::vector<Mor> local_mor;
  std::vector<std::string> labels;
  std::vector<Arrow> arrows;
  std::unordered_map<Mor, Mor> index;
  for (Obj x : out.objects) {
    for (Obj y : out.objects) {
      for (Mor g : e.hom(x, y)) {
        if (p.mor(g) != id_b) continue;
        index.emplace(g, static_cast<Mor>(out.morphisms.size()));
        out.morphisms.push_back(g);
        labels.push_back(e.morphism_label(g));
        arrows.push_back({local[x], local[y]});
      }
    }
  }
  std::vector<std::string> object_labels;
  std::vector<Mor> identities;
  for (Obj x : out.objects) {
    object_labels.push_back(e.object_label(x));
    identities.push_back(index.at(e.identity(x)));
  }
  std::vector<Category::Composite> table;
  for (Mor f = 0; f < out.morphisms.size(); ++f) {
    for (Mor g = 0; g < out.morphisms.size(); ++g) {
      if (arrows[g].dom != arrows[f].cod) continue;
      table.push_back({g, f, index.at(e.compose(out.morphisms[g], out.morphisms[f]))});
    }
  }
  out.category = share(Category::presented(std::move(object_labels), std::move(labels),
                                           std::move(arrows), std::move(identities), table));
  return out;
}

Mor ImageStructure::post_at(Mor u, Mor v) const {
  const auto it = post.find(key(u, v));
  return it == post.end() ? no_mor : it->second;
}

Mor ImageStructure::pre_at(Mor u, Mor w) const {
  const auto it = pre.find(key(u, w));
  return it == pre.end() ? no_mor : it->second;
}

void derive_actions(ImageStructure& s) {
  const Category& e = *s.proj.source();
  const Category& b = *s.proj.target();
  s.post.clear();
  s.pre.clear();
  for (Mor u = 0; u < b.morphism_count(); ++u) {
    for (Mor v : b.outgoing(b.cod(u))) {
      const Mor vu = b.compose(v, u);
      Mor chosen = no_mor;
      for (Mor g : e.hom(s.pushforward[u], s.pushforward[vu])) {
        if (s.proj.mor(g) == v && e.compose(g, s.lift[u]) == s.lift[vu]) {
          chosen = g;
          break;
        }
      }
      if (chosen == no_mor)
        throw StructuralError("no post action for (" + b.morphism_label(u) + ", " +
                              b.morphism_label(v) + ")");
      s.post.emplace(ImageStructure::key(u, v), chosen);
    }
    const Mor id_b = b.identity(b.cod(u));
    for (Mor w : b.incoming(b.dom(u))) {
      const Mor uw = b.compose(u, w);
      const Mor target = e.compose(s.lift[u], s.section.mor(w));
      Mor chosen = no_mor;
      for (Mor g : e.hom(s.pushforward[uw], s.pushforward[u])) {
        if (s.proj.mor(g) == id_b && e.compose(g, s.lift[uw]) == target) {
          chosen = g;
          break;
        }
      }
      if (chosen == no_mor)
        throw StructuralError("no pre action for (" + b.morphism_label(u) + ", " +
                              b.morphism_label(w) + ")");
      s.pre.emplace(ImageStructure::key(u, w), chosen);
    }
  }
}

std::optional<ImageStructure> build_image_structure(const Functor& p, const Functor& section) {
  if (!same_category(section.target(), p.source()) || !same_category(section.source(), p.target()))
    throw StructuralError("section is not a functor from the base into the total category");
  if (!(compose(p, section) == identity_functor(p.target())))
    throw StructuralError("p . section is not the identity");
  const Category& e = *p.source();
  const Category& b = *p.target();
  ImageStructure s{p, section, {}, {}, {}, {}};
  s.lift.resize(b.morphism_count());
  s.pushforward.resize(b.morphism_count());
  for (Mor u = 0; u < b.morphism_count(); ++u) {
    const Obj star = section.obj(b.dom(u));
    if (b.is_identity(u)) {
      s.lift[u] = e.identity(star);
    } else {
      std::vector<Mor> candidates;
      for (Mor g : e.outgoing(star)) {
        if (p.mor(g) == u) candidates.push_back(g);
      }
      std::sort(candidates.begin(), candidates.end());
      const auto it = std::find_if(candidates.begin(), candidates.end(),
                                   [&](Mor g) { return is_opcartesian(p, g); });
      if (it == candidates.end()) return std::nullopt;
      s.lift[u] = *it;
    }
    s.pushforward[u] = e.cod(s.lift[u]);
  }
  derive_actions(s);
  return s;
}

LawReport check_image_coherence(const ImageStructure& s) {
  const Category& e = *s.proj.source();
  const Category& b = *s.proj.target();
  LawReport report;
  if (s.lift.size() != b.morphism_count() || s.pushforward.size() != b.morphism_count()) {
    report.structural("image.typing", "lift table does not cover the base");
    return report;
  }
  auto label = [&](std::initializer_list<Mor> ms) {
    std::string out = "(";
    bool first = true;
    for (Mor m : ms) {
      if (!first) out += ", ";
      out += b.morphism_label(m);
      first = false;
    }
    return out + ")";
  };

  for (Mor u = 0; u < b.morphism_count(); ++u) {
    const Mor l = s.lift[u];
    if (l >= e.morphism_count() || e.dom(l) != s.section.obj(b.dom(u)) ||
        e.cod(l) != s.pushforward[u]) {
      report.structural("image.typing", "lift at " + label({u}));
      return report;
    }
    if (s.proj.mor(l) != u) report.fail("image.lambda.over", label({u}));
    if (b.is_identity(u) && !e.is_identity(l)) report.fail("image.identity.lambda", label({u}));
  }

  for (Mor u = 0; u < b.morphism_count(); ++u) {
    const Obj a = b.dom(u);
    const Obj bb = b.cod(u);
    for (Mor v : b.outgoing(bb)) {
      const Mor vu = b.compose(v, u);
      const Mor post = s.post_at(u, v);
      if (post == no_mor) {
        report.structural("image.typing", "post missing at " + label({u, v}));
        continue;
      }
      if (s.proj.mor(post) != v || checked_compose(e, post, s.lift[u]) != s.lift[vu])
        report.fail("image.coherence.a", label({u, v}));
      if (b.is_identity(v) && !e.is_identity(post)) report.fail("image.identity.post", label({u, v}));
      for (Mor v2 : b.outgoing(b.cod(v))) {
        const Mor lhs = checked_compose(e, s.post_at(vu, v2), post);
        if (lhs == no_mor || lhs != s.post_at(u, b.compose(v2, v)))
          report.fail("image.compositionality.post", label({u, v, v2}));
      }
    }
    for (Mor w : b.incoming(a)) {
      const Mor uw = b.compose(u, w);
      const Mor pre = s.pre_at(u, w);
      if (pre == no_mor) {
        report.structural("image.typing", "pre missing at " + label({w, u}));
        continue;
      }
      const Mor rhs = checked_compose(e, s.lift[u], s.section.mor(w));
      if (s.proj.mor(pre) != b.identity(bb) || checked_compose(e, pre, s.lift[uw]) != rhs)
        report.fail("image.coherence.b", label({w, u}));
      if (b.is_identity(w) && !e.is_identity(pre)) report.fail("image.identity.pre", label({w, u}));
      for (Mor w2 : b.incoming(b.dom(w))) {
        const Mor lhs = checked_compose(e, pre, s.pre_at(uw, w2));
        if (lhs == no_mor || lhs != s.pre_at(u, b.compose(w, w2)))
          report.fail("image.compositionality.pre", label({w2, w, u}));
      }
      for (Mor v : b.outgoing(bb)) {
        const Mor vu = b.compose(v, u);
        const Mor lhs = checked_compose(e, s.post_at(u, v), pre);
        const Mor rhs2 = checked_compose(e, s.pre_at(vu, w), s.post_at(uw, v));
        if (lhs == no_mor || lhs != rhs2) report.fail("image.coherence.c", label({w, u, v}));
      }
    }
  }
  return report;
}

Functor assemble_image_functor(const ImageStructure& s, const ArrowBundle& arrows) {
  if (!same_category(arrows.base(), s.proj.target()))
    throw StructuralError("arrow bundle is not over the base of the image structure");
  const Category& sq = *arrows.arrows();
  std::vector<Obj> objs(s.pushforward.begin(), s.pushforward.end());
  std::vector<Mor> mors(sq.morphism_count());
  const Category& e = *s.proj.source();
  for (Mor m = 0; m < mors.size(); ++m) {
    const Mor u = sq.dom(m);
    const Mor u2 = sq.cod(m);
    const Mor post = s.post_at(u, arrows.bottom(m));
    const Mor pre = s.pre_at(u2, arrows.top(m));
    if (post == no_mor || pre == no_mor) throw StructuralError("image structure lacks an action");
    mors[m] = e.compose(pre, post);
  }
  return Functor(arrows.arrows(), s.proj.source(), std::move(objs), std::move(mors));
}

Functor image_functor(const ImageStructure& s, const ArrowBundle& arrows) {
  const LawReport report = check_image_coherence(s);
  if (!report.passed())
    throw StructuralError("image structure is not coherent: " + report.violations().front().law);
  return assemble_image_functor(s, arrows);
}

}  // namespace compcat
