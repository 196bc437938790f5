#pragma once

#include <bit>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "ccwl/relation.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

inline constexpr int unreachable = -1;

// Simple undirected graph on vertices {0, ..., n-1}; adjacency bitset rows.
class graph {
 public:
  graph() = default;
  explicit graph(int n)
      : n_(n), words_per_row_((static_cast<std::size_t>(n) + 63) / 64),
        adj_(static_cast<std::size_t>(n) * words_per_row_, 0) {
    if (n < 0) throw domain_error("graph: negative vertex count");
  }

  int n() const { return n_; }

  bool adjacent(int u, int v) const {
    return (row(u)[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
  }

  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw domain_error("add_edge: vertex out of range");
    if (u == v) throw domain_error("add_edge: loops not allowed");
    set_bit(u, v);
    set_bit(v, u);
  }

  int degree(int u) const {
    int d = 0;
    const std::uint64_t* r = row(u);
    for (std::size_t w = 0; w < words_per_row_; ++w) d += std::popcount(r[w]);
    return d;
  }

  std::uint64_t edge_count() const {
    std::uint64_t total = 0;
    for (int u = 0; u < n_; ++u) total += static_cast<std::uint64_t>(degree(u));
    return total / 2;
  }

  std::vector<int> neighbors(int u) const {
    std::vector<int> out;
    for_each_neighbor(u, [&](int v) { out.push_back(v); });
    return out;
  }

  template <typename F>
  void for_each_neighbor(int u, F&& f) const {
    const std::uint64_t* r = row(u);
    for (std::size_t w = 0; w < words_per_row_; ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        int v = static_cast<int>((w << 6) + static_cast<std::size_t>(std::countr_zero(bits)));
        f(v);
        bits &= bits - 1;
      }
    }
  }

  // ordered edges (u,v) and (v,u) both appear
  std::vector<std::pair<int, int>> ordered_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
      for_each_neighbor(u, [&](int v) { out.emplace_back(u, v); });
    return out;
  }

  std::vector<std::pair<int, int>> unordered_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
      for_each_neighbor(u, [&](int v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  binary_relation edge_relation() const {
    binary_relation r(n_);
    for (int u = 0; u < n_; ++u)
      for_each_neighbor(u, [&](int v) { r.set(u, v); });
    return r;
  }

  int common_neighbor_count(int u, int v) const {
    const std::uint64_t* a = row(u);
    const std::uint64_t* b = row(v);
    int c = 0;
    for (std::size_t w = 0; w < words_per_row_; ++w) c += std::popcount(a[w] & b[w]);
    return c;
  }

  friend bool operator==(const graph&, const graph&) = default;

 private:
  void set_bit(int u, int v) { row(u)[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63); }
  const std::uint64_t* row(int u) const { return adj_.data() + static_cast<std::size_t>(u) * words_per_row_; }
  std::uint64_t* row(int u) { return adj_.data() + static_cast<std::size_t>(u) * words_per_row_; }

  int n_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> adj_;
};

// All-pairs distances; unreachable pairs hold the `unreachable` marker.
class distance_matrix {
 public:
  distance_matrix() = default;
  explicit distance_matrix(int n) : n_(n), dist_(static_cast<std::size_t>(n) * n, unreachable) {}

  int n() const { return n_; }
  int operator()(int u, int v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }
  int& at(int u, int v) { return dist_[static_cast<std::size_t>(u) * n_ + v]; }

  int diameter() const {
    int d = 0;
    for (int x : dist_) {
      if (x == unreachable) return unreachable;
      d = std::max(d, x);
    }
    return d;
  }

 private:
  int n_ = 0;
  std::vector<int> dist_;
};

inline distance_matrix bfs_distances(const graph& g) {
  distance_matrix d(g.n());
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(g.n()));
  for (int s = 0; s < g.n(); ++s) {
    queue.clear();
    queue.push_back(s);
    d.at(s, s) = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      int du = d(s, u);
      g.for_each_neighbor(u, [&](int v) {
        if (d(s, v) == unreachable) {
          d.at(s, v) = du + 1;
          queue.push_back(v);
        }
      });
    }
  }
  return d;
}

inline bool is_connected(const graph& g) {
  if (g.n() == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    g.for_each_neighbor(queue[head], [&](int v) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
      }
    });
  for (char s : seen)
    if (!s) return false;
  return true;
}

// image graph under a vertex relabeling; perm[v] is the new name of v
inline graph permute_graph(const graph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n()) throw domain_error("permute_graph: wrong permutation size");
  graph out(g.n());
  for (auto [u, v] : g.unordered_edges())
    out.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  return out;
}

// Connected components of the spanning subgraph formed by the given edge set;
// returns the component id of every vertex (isolated vertices get their own).
inline std::vector<int> components_of_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  detail::disjoint_set ds(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) ds.unite(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int u = 0; u < n; ++u) {
    std::uint32_t r = ds.find(static_cast<std::uint32_t>(u));
    if (comp[r] < 0) comp[r] = next++;
    comp[static_cast<std::size_t>(u)] = comp[r];
  }
  return comp;
}

}  // namespace ccwl
