#include <algorithm>
#include <map>
#include <random>

#include "compcat/fincat.hpp"

namespace compcat {

namespace {

using Path = std::vector<std::size_t>;  // edge indices, first edge first

struct Edge {
  Obj from;
  Obj to;
};

std::size_t count_paths(std::size_t n, const std::vector<Edge>& edges) {
  // Edges always go from lower to higher index, so a forward sweep suffices.
  std::size_t total = 0;
  for (Obj s = 0; s < n; ++s) {
    std::vector<std::size_t> reach(n, 0);
    reach[s] = 1;
    for (Obj x = s; x < n; ++x) {
      if (reach[x] == 0) continue;
      for (const auto& e : edges) {
        if (e.from == x) reach[e.to] += reach[x];
      }
    }
    for (auto r : reach) total += r;
  }
  return total;
}

void collect_paths(Obj at, const std::vector<Edge>& edges, Path& current, std::vector<Path>& out) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].from != at) continue;
    current.push_back(i);
    out.push_back(current);
    collect_paths(edges[i].to, edges, current, out);
    current.pop_back();
  }
}

}  // namespace

CategoryPtr generate_category(std::uint64_t seed, std::size_t max_objects,
                              std::size_t max_morphisms) {
  if (max_objects == 0 || max_morphisms == 0)
    throw StructuralError("generate_category: bounds must be at least 1");
  std::mt19937_64 rng(seed);
  const std::size_t n = std::min(max_objects, max_morphisms) == 1
                            ? 1
                            : 1 + rng() % std::min(max_objects, max_morphisms);

  std::vector<Edge> candidates;
  for (Obj a = 0; a < n; ++a) {
    for (Obj b = a + 1; b < n; ++b) {
      candidates.push_back({a, b});
      candidates.push_back({a, b});
    }
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);

  std::vector<Edge> edges;
  for (const auto& e : candidates) {
    if (rng() % 3 == 0) continue;
    edges.push_back(e);
    if (count_paths(n, edges) > max_morphisms) edges.pop_back();
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.from, x.to) < std::tie(y.from, y.to); });

  std::vector<Path> paths;
  for (Obj x = 0; x < n; ++x) {
    Path current;
    collect_paths(x, edges, current, paths);
  }
  std::stable_sort(paths.begin(), paths.end(),
                   [](const Path& a, const Path& b) { return a.size() < b.size(); });

  CategoryBuilder builder;
  for (Obj x = 0; x < n; ++x) builder.add_object(std::to_string(x));
  builder.ensure_identities();
  std::map<Path, Mor> index;
  for (const auto& path : paths) {
    std::string label;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      if (!label.empty()) label += ".";
      label += "e" + std::to_string(*it);
    }
    index[path] = builder.add_morphism(label, edges[path.front()].from, edges[path.back()].to);
  }
  builder.infer_identity_composites();
  for (const auto& [f, fi] : index) {
    for (const auto& [g, gi] : index) {
      if (edges[g.front()].from != edges[f.back()].to) continue;
      Path gf = f;
      gf.insert(gf.end(), g.begin(), g.end());
      builder.set_compose(gi, fi, index.at(gf));
    }
  }
  return share(builder.build());
}

}  // namespace compcat
