#pragma once

// Brute-force reference computations.  These loop over raw index ranges and
// never touch the hom-set index or the library's law checkers, so they can
// be used to cross-check both.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <vector>

#include "compcat/fincat.hpp"
#include "compcat/instances.hpp"

namespace oracle {

using compcat::Category;
using compcat::Functor;
using compcat::Mor;
using compcat::NatTrans;
using compcat::Obj;

inline std::vector<Mor> raw_hom(const Category& c, Obj x, Obj y) {
  std::vector<Mor> out;
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    if (c.dom(f) == x && c.cod(f) == y) out.push_back(f);
  }
  return out;
}

inline bool is_category(const Category& c) {
  const std::size_t m = c.morphism_count();
  for (Obj x = 0; x < c.object_count(); ++x) {
    const Mor id = c.identity(x);
    if (c.dom(id) != x || c.cod(id) != x) return false;
  }
  for (Mor f = 0; f < m; ++f) {
    for (Mor g = 0; g < m; ++g) {
      if (c.dom(g) != c.cod(f)) continue;
      const Mor gf = c.find_composite(g, f);
      if (gf == compcat::no_mor || c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g)) return false;
    }
    if (c.find_composite(c.identity(c.cod(f)), f) != f) return false;
    if (c.find_composite(f, c.identity(c.dom(f))) != f) return false;
  }
  for (Mor f = 0; f < m; ++f)
    for (Mor g = 0; g < m; ++g) {
      if (c.dom(g) != c.cod(f)) continue;
      for (Mor h = 0; h < m; ++h) {
        if (c.dom(h) != c.cod(g)) continue;
        if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f)) return false;
      }
    }
  return true;
}

// Number of commuting squares v∘f = f′∘w over all quadruples.
inline std::size_t square_count(const Category& b) {
  const std::size_t m = b.morphism_count();
  std::size_t count = 0;
  for (Mor f = 0; f < m; ++f)
    for (Mor w = 0; w < m; ++w) {
      if (b.dom(w) != b.dom(f)) continue;
      for (Mor v = 0; v < m; ++v) {
        if (b.dom(v) != b.cod(f)) continue;
        for (Mor f2 = 0; f2 < m; ++f2) {
          if (b.dom(f2) != b.cod(w) || b.cod(f2) != b.cod(v)) continue;
          if (b.compose(v, f) == b.compose(f2, w)) ++count;
        }
      }
    }
  return count;
}

inline bool is_natural(const Functor& f, const Functor& g, const std::vector<Mor>& comps) {
  const Category& s = *f.source();
  const Category& t = *f.target();
  for (Obj x = 0; x < s.object_count(); ++x) {
    if (t.dom(comps[x]) != f.obj(x) || t.cod(comps[x]) != g.obj(x)) return false;
  }
  for (Mor u = 0; u < s.morphism_count(); ++u) {
    if (t.compose(g.mor(u), comps[s.dom(u)]) != t.compose(comps[s.cod(u)], f.mor(u))) return false;
  }
  return true;
}

// Visit every componentwise assignment F(x) → G(x) (natural or not).
inline void for_each_assignment(const Functor& f, const Functor& g,
                                const std::function<void(const std::vector<Mor>&)>& visit) {
  const Category& s = *f.source();
  const Category& t = *f.target();
  std::vector<std::vector<Mor>> choices(s.object_count());
  for (Obj x = 0; x < s.object_count(); ++x) choices[x] = raw_hom(t, f.obj(x), g.obj(x));
  if (std::any_of(choices.begin(), choices.end(), [](const auto& v) { return v.empty(); })) return;
  std::vector<std::size_t> at(choices.size(), 0);
  std::vector<Mor> comps(choices.size());
  while (true) {
    for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = choices[i][at[i]];
    visit(comps);
    std::size_t i = 0;
    while (i < at.size() && ++at[i] == choices[i].size()) at[i++] = 0;
    if (i == at.size()) return;
  }
}

inline std::vector<std::vector<Mor>> natural_transformations(const Functor& f, const Functor& g) {
  std::vector<std::vector<Mor>> out;
  for_each_assignment(f, g, [&](const std::vector<Mor>& comps) {
    if (is_natural(f, g, comps)) out.push_back(comps);
  });
  return out;
}

// Functors a: X → B^→ with dom∘a = P, cod∘a = Q, counted by brute force over
// object assignments; returns how many also satisfy hom·a = α.
struct FactorizationCount {
  std::size_t with_projections = 0;
  std::size_t matching_alpha = 0;
};

inline FactorizationCount count_factorizations(const compcat::ArrowBundle& bundle,
                                               const NatTrans& alpha) {
  const Functor& p = alpha.source();
  const Functor& q = alpha.target();
  const Category& x = *p.source();
  const Category& b = *bundle.base();
  FactorizationCount result;
  std::vector<std::vector<Mor>> choices(x.object_count());
  for (Obj c = 0; c < x.object_count(); ++c) choices[c] = raw_hom(b, p.obj(c), q.obj(c));
  if (std::any_of(choices.begin(), choices.end(), [](const auto& v) { return v.empty(); }))
    return result;
  std::vector<std::size_t> at(choices.size(), 0);
  while (true) {
    std::vector<Obj> objs(choices.size());
    for (std::size_t i = 0; i < objs.size(); ++i) objs[i] = choices[i][at[i]];
    bool functorial = true;
    for (Mor u = 0; u < x.morphism_count() && functorial; ++u)
      functorial = bundle.square(objs[x.dom(u)], objs[x.cod(u)], p.mor(u), q.mor(u)) != compcat::no_mor;
    if (functorial) {
      ++result.with_projections;
      bool same = true;
      for (Obj c = 0; c < x.object_count(); ++c) same = same && objs[c] == alpha.at(c);
      if (same) ++result.matching_alpha;
    }
    std::size_t i = 0;
    while (i < at.size() && ++at[i] == choices[i].size()) at[i++] = 0;
    if (i == at.size()) break;
  }
  return result;
}

// Block minimum of every position under the reflexive-symmetric-transitive
// closure, by Floyd-Warshall on a boolean matrix.
inline std::vector<int> closure_minima(compcat::Subset carrier, std::uint32_t rel, int n) {
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    if (carrier >> i & 1u) m[i][i] = true;
    for (int j = 0; j < n; ++j) {
      if (rel >> (i * n + j) & 1u) m[i][j] = m[j][i] = true;
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m[i][k] && m[k][j]) m[i][j] = true;
  std::vector<int> out(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!(carrier >> i & 1u)) continue;
    for (int j = 0; j < n; ++j) {
      if (m[i][j]) {
        out[i] = j;
        break;
      }
    }
  }
  return out;
}

}  // namespace oracle
