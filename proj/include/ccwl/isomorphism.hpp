#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ccwl/graph.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

namespace detail {

// Joint 1-dimensional color refinement of two graphs: vertex colors refined by
// (color, sorted multiset of neighbor colors) until stable, with both graphs
// sharing one id space so colors are comparable across them.
inline std::pair<std::vector<int>, std::vector<int>> joint_vertex_refinement(const graph& g1, const graph& g2) {
  std::vector<int> c1(static_cast<std::size_t>(g1.n()), 0), c2(static_cast<std::size_t>(g2.n()), 0);
  int rank = 1;
  for (;;) {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    auto signature = [](const graph& g, const std::vector<int>& col, int u) {
      std::vector<int> ms;
      g.for_each_neighbor(u, [&](int v) { ms.push_back(col[static_cast<std::size_t>(v)]); });
      std::sort(ms.begin(), ms.end());
      return ms;
    };
    std::vector<std::pair<int, std::vector<int>>> s1, s2;
    for (int u = 0; u < g1.n(); ++u) {
      s1.emplace_back(c1[static_cast<std::size_t>(u)], signature(g1, c1, u));
      ids.emplace(s1.back(), 0);
    }
    for (int u = 0; u < g2.n(); ++u) {
      s2.emplace_back(c2[static_cast<std::size_t>(u)], signature(g2, c2, u));
      ids.emplace(s2.back(), 0);
    }
    int next = 0;
    for (auto& kv : ids) kv.second = next++;
    if (next == rank) return {c1, c2};
    rank = next;
    for (int u = 0; u < g1.n(); ++u) c1[static_cast<std::size_t>(u)] = ids[s1[static_cast<std::size_t>(u)]];
    for (int u = 0; u < g2.n(); ++u) c2[static_cast<std::size_t>(u)] = ids[s2[static_cast<std::size_t>(u)]];
  }
}

inline bool extend_mapping(const graph& g1, const graph& g2, const std::vector<int>& c1,
                           const std::vector<int>& c2, std::vector<int>& image, std::vector<char>& used,
                           int depth) {
  int n = g1.n();
  if (depth == n) return true;
  for (int v = 0; v < n; ++v) {
    if (used[static_cast<std::size_t>(v)]) continue;
    if (c1[static_cast<std::size_t>(depth)] != c2[static_cast<std::size_t>(v)]) continue;
    bool ok = true;
    for (int prev = 0; prev < depth; ++prev)
      if (g1.adjacent(prev, depth) != g2.adjacent(image[static_cast<std::size_t>(prev)], v)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    image[static_cast<std::size_t>(depth)] = v;
    used[static_cast<std::size_t>(v)] = 1;
    if (extend_mapping(g1, g2, c1, c2, image, used, depth + 1)) return true;
    used[static_cast<std::size_t>(v)] = 0;
  }
  return false;
}

}  // namespace detail

// Exact isomorphism test: color refinement followed by backtracking over
// color-compatible assignments. Exponential in the worst case, hence the cap.
inline bool graph_isomorphic(const graph& g1, const graph& g2, int size_cap = 12) {
  if (g1.n() != g2.n()) return false;
  if (g1.n() > size_cap)
    throw domain_error("graph_isomorphic: size cap " + std::to_string(size_cap) +
                       " exceeded (n = " + std::to_string(g1.n()) + "); raise the cap to proceed");
  if (g1.edge_count() != g2.edge_count()) return false;
  auto [c1, c2] = detail::joint_vertex_refinement(g1, g2);
  {
    std::vector<int> h1 = c1, h2 = c2;
    std::sort(h1.begin(), h1.end());
    std::sort(h2.begin(), h2.end());
    if (h1 != h2) return false;
  }
  std::vector<int> image(static_cast<std::size_t>(g1.n()), -1);
  std::vector<char> used(static_cast<std::size_t>(g1.n()), 0);
  return detail::extend_mapping(g1, g2, c1, c2, image, used, 0);
}

}  // namespace ccwl
