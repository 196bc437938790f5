#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccwl/coherent.hpp"
#include "ccwl/extension.hpp"
#include "ccwl/graph.hpp"
#include "ccwl/product.hpp"
#include "ccwl/relation.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

// A relation on the ordered edge set of a graph: `edges` lists the ordered
// adjacent pairs in lexicographic order, `pairs` relates their indices.
struct edge_pairing {
  std::vector<std::pair<int, int>> edges;
  binary_relation pairs;

  // the same relation viewed on pair points (x, y) -> x*n + y
  binary_relation as_point_relation(int n) const {
    binary_relation out(n * n);
    for (int a = 0; a < pairs.n(); ++a)
      pairs.for_each_in_row(a, [&](int b) {
        out.set(edges[static_cast<std::size_t>(a)].first * n + edges[static_cast<std::size_t>(a)].second,
                edges[static_cast<std::size_t>(b)].first * n + edges[static_cast<std::size_t>(b)].second);
      });
    return out;
  }
};

namespace detail {

inline void require_connected(const graph& g, const char* op) {
  if (!is_connected(g)) throw domain_error(std::string(op) + ": graph must be connected");
}

inline std::map<std::pair<int, int>, int> edge_index_map(const std::vector<std::pair<int, int>>& edges) {
  std::map<std::pair<int, int>, int> index;
  for (std::size_t i = 0; i < edges.size(); ++i) index[edges[i]] = static_cast<int>(i);
  return index;
}

}  // namespace detail

// Ordered edge pairs ((x,y),(x',y')) whose endpoint distances violate
// additivity: d(x,y') + d(y,x') != d(x,x') + d(y,y'). Reflexive on edges and
// symmetric; relates the two orientations of every edge.
inline edge_pairing theta_relation(const graph& g) {
  detail::require_connected(g, "theta_relation");
  distance_matrix d = bfs_distances(g);
  edge_pairing out{g.ordered_edges(), binary_relation(0)};
  const int m = static_cast<int>(out.edges.size());
  out.pairs = binary_relation(m);
  for (int a = 0; a < m; ++a) {
    auto [x, y] = out.edges[static_cast<std::size_t>(a)];
    for (int b = 0; b < m; ++b) {
      auto [x2, y2] = out.edges[static_cast<std::size_t>(b)];
      if (d(x, y2) + d(y, x2) != d(x, x2) + d(y, y2)) out.pairs.set(a, b);
    }
  }
  return out;
}

// Ordered edge pairs ((x,y),(x',y')) with x = x' and N(y) ∩ N(y') = {x}.
// A pair with y = y' qualifies exactly when deg(y) = 1.
inline edge_pairing tau_relation(const graph& g) {
  detail::require_connected(g, "tau_relation");
  edge_pairing out{g.ordered_edges(), binary_relation(0)};
  const int m = static_cast<int>(out.edges.size());
  out.pairs = binary_relation(m);
  auto index = detail::edge_index_map(out.edges);
  for (int x = 0; x < g.n(); ++x)
    g.for_each_neighbor(x, [&](int y) {
      g.for_each_neighbor(x, [&](int y2) {
        if (g.common_neighbor_count(y, y2) == 1)
          out.pairs.set(index[{x, y}], index[{x, y2}]);
      });
    });
  return out;
}

// union of the closure colors t whose pairs have exactly one common neighbor
// reachable by two edge steps: sum over edge colors r, s of c_{r,s}^t is 1
inline std::vector<std::uint32_t> s_prime_colors(const coherent_configuration& cc) {
  auto e_it = cc.tags.find("E");
  if (e_it == cc.tags.end()) throw domain_error("s_prime_colors: configuration has no tagged edge relation");
  const auto& tensor = intersection_numbers(cc);
  std::vector<char> is_edge_color(cc.rank(), 0);
  for (std::uint32_t t : e_it->second) is_edge_color[t] = 1;
  std::vector<std::uint64_t> sum(cc.rank(), 0);
  for (const auto& [key, value] : tensor.entries)
    if (is_edge_color[key[0]] && is_edge_color[key[1]]) sum[key[2]] += value;
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < cc.rank(); ++t)
    if (sum[t] == 1) out.push_back(t);
  return out;
}

inline binary_relation s_prime_relation(const coherent_configuration& cc) {
  return cc.relation_of(s_prime_colors(cc));
}

// {(x, y) : d(x, y) = i}
inline binary_relation distance_relation(const distance_matrix& d, int i) {
  binary_relation out(d.n());
  for (int x = 0; x < d.n(); ++x)
    for (int y = 0; y < d.n(); ++y)
      if (d(x, y) == i) out.set(x, y);
  return out;
}

// cyl_{s_a}(1,2) ∩ cyl_{s_b}(2,1) ∩ cyl_{s_c}(1,1) ∩ cyl_{s_d}(2,2) over the
// distance relations s_i, as a relation on pair points
inline binary_relation distance_profile_relation(const graph& g, int a, int b, int c, int d) {
  detail::require_connected(g, "distance_profile_relation");
  distance_matrix dist = bfs_distances(g);
  binary_relation out = cylinder(g.n(), distance_relation(dist, a), 1, 2);
  out &= cylinder(g.n(), distance_relation(dist, b), 2, 1);
  out &= cylinder(g.n(), distance_relation(dist, c), 1, 1);
  out &= cylinder(g.n(), distance_relation(dist, d), 2, 2);
  return out;
}

// Equivalence closure of theta ∪ tau over the unordered edges; the classes
// are the factor edge sets of the prime decomposition.
struct product_relation_result {
  std::vector<std::pair<int, int>> unordered_edges;  // lexicographic, u < v
  std::vector<std::pair<int, int>> ordered_edges;
  binary_relation generating_pairs;                  // theta ∪ tau on ordered edge indices
  point_partition classes;                           // over unordered edge indices
};

inline product_relation_result product_relation(const graph& g) {
  detail::require_connected(g, "product_relation");
  edge_pairing theta = theta_relation(g);
  edge_pairing tau = tau_relation(g);

  product_relation_result out;
  out.unordered_edges = g.unordered_edges();
  out.ordered_edges = theta.edges;
  out.generating_pairs = theta.pairs;
  out.generating_pairs |= tau.pairs;

  auto unordered_index = detail::edge_index_map(out.unordered_edges);
  auto fold = [&](int ordered_idx) {
    auto [u, v] = out.ordered_edges[static_cast<std::size_t>(ordered_idx)];
    return unordered_index[{std::min(u, v), std::max(u, v)}];
  };

  const std::size_t m = out.unordered_edges.size();
  detail::disjoint_set ds(m);
  for (int a = 0; a < out.generating_pairs.n(); ++a)
    out.generating_pairs.for_each_in_row(a, [&](int b) {
      ds.unite(static_cast<std::uint32_t>(fold(a)), static_cast<std::uint32_t>(fold(b)));
    });

  out.classes.class_of.assign(m, -1);
  std::map<std::uint32_t, std::int32_t> root_class;
  for (std::size_t e = 0; e < m; ++e) {
    std::uint32_t root = ds.find(static_cast<std::uint32_t>(e));
    auto [it, fresh] = root_class.emplace(root, static_cast<std::int32_t>(out.classes.classes.size()));
    if (fresh) out.classes.classes.emplace_back();
    out.classes.class_of[e] = it->second;
    out.classes.classes[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(e));
    out.classes.support.push_back(static_cast<int>(e));
  }
  return out;
}

struct factorization_report {
  int num_factors = 0;
  std::vector<std::pair<int, int>> unordered_edges;
  std::vector<int> edge_class;        // per unordered edge
  std::vector<graph> factors;         // layer subgraphs through vertex 0
  std::vector<std::vector<int>> coordinates;  // per vertex, one entry per factor
  bool certified = false;
};

// Prime factorization of a connected graph under the Cartesian product.
// Factor i is the component of vertex 0 in the spanning subgraph of class-i
// edges; coordinate i of a vertex is its projection onto that layer through
// the complement classes. The result is certified by rebuilding the product
// and checking the coordinate map is an isomorphism; certification failure
// is a bug, not an input condition, and aborts loudly.
inline factorization_report prime_factorize(const graph& g) {
  detail::require_connected(g, "prime_factorize");
  if (g.n() < 2) throw domain_error("prime_factorize: need at least 2 vertices");

  product_relation_result pr = product_relation(g);
  const int k = static_cast<int>(pr.classes.classes.size());

  factorization_report report;
  report.num_factors = k;
  report.unordered_edges = pr.unordered_edges;
  report.edge_class.assign(pr.unordered_edges.size(), -1);
  for (std::size_t e = 0; e < pr.unordered_edges.size(); ++e)
    report.edge_class[e] = pr.classes.class_of[e];

  std::vector<std::vector<std::pair<int, int>>> class_edges(static_cast<std::size_t>(k));
  for (std::size_t e = 0; e < pr.unordered_edges.size(); ++e)
    class_edges[static_cast<std::size_t>(report.edge_class[e])].push_back(pr.unordered_edges[e]);

  report.coordinates.assign(static_cast<std::size_t>(g.n()), std::vector<int>(static_cast<std::size_t>(k), -1));
  for (int i = 0; i < k; ++i) {
    std::vector<int> comp = components_of_edges(g.n(), class_edges[static_cast<std::size_t>(i)]);
    // layer through vertex 0: the class-i component of 0, in vertex order
    std::vector<int> layer;
    std::vector<int> layer_index(static_cast<std::size_t>(g.n()), -1);
    for (int v = 0; v < g.n(); ++v)
      if (comp[static_cast<std::size_t>(v)] == comp[0]) {
        layer_index[static_cast<std::size_t>(v)] = static_cast<int>(layer.size());
        layer.push_back(v);
      }
    graph factor(static_cast<int>(layer.size()));
    for (auto [u, v] : class_edges[static_cast<std::size_t>(i)])
      if (layer_index[static_cast<std::size_t>(u)] >= 0 && layer_index[static_cast<std::size_t>(v)] >= 0)
        factor.add_edge(layer_index[static_cast<std::size_t>(u)], layer_index[static_cast<std::size_t>(v)]);
    report.factors.push_back(std::move(factor));

    // complement projection: drop class i, each component meets the layer once
    std::vector<std::pair<int, int>> rest;
    for (int j = 0; j < k; ++j)
      if (j != i)
        rest.insert(rest.end(), class_edges[static_cast<std::size_t>(j)].begin(),
                    class_edges[static_cast<std::size_t>(j)].end());
    std::vector<int> rest_comp = components_of_edges(g.n(), rest);
    std::vector<int> comp_coord;
    for (int v = 0; v < g.n(); ++v) {
      int c = rest_comp[static_cast<std::size_t>(v)];
      if (c >= static_cast<int>(comp_coord.size())) comp_coord.resize(static_cast<std::size_t>(c) + 1, -1);
      if (layer_index[static_cast<std::size_t>(v)] >= 0) {
        if (comp_coord[static_cast<std::size_t>(c)] >= 0)
          throw internal_error("prime_factorize: projection component meets a layer twice");
        comp_coord[static_cast<std::size_t>(c)] = layer_index[static_cast<std::size_t>(v)];
      }
    }
    for (int v = 0; v < g.n(); ++v) {
      int coord = comp_coord[static_cast<std::size_t>(rest_comp[static_cast<std::size_t>(v)])];
      if (coord < 0) throw internal_error("prime_factorize: projection component misses the layer");
      report.coordinates[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)] = coord;
    }
  }

  // certify: coordinates form an isomorphism onto the rebuilt product
  cartesian_product_result rebuilt = cartesian_product(report.factors);
  if (rebuilt.product.n() != g.n())
    throw internal_error("prime_factorize: coordinate space size mismatch");
  std::vector<int> dims;
  for (const graph& f : report.factors) dims.push_back(f.n());
  detail::mixed_radix codec(dims);
  std::vector<int> image(static_cast<std::size_t>(g.n()), -1);
  std::vector<char> hit(static_cast<std::size_t>(g.n()), 0);
  for (int v = 0; v < g.n(); ++v) {
    std::uint64_t idx = codec.index(report.coordinates[static_cast<std::size_t>(v)]);
    image[static_cast<std::size_t>(v)] = static_cast<int>(idx);
    if (hit[idx]) throw internal_error("prime_factorize: coordinate map is not injective");
    hit[idx] = 1;
  }
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v)
      if (g.adjacent(u, v) != rebuilt.product.adjacent(image[static_cast<std::size_t>(u)],
                                                       image[static_cast<std::size_t>(v)]))
        throw internal_error("prime_factorize: coordinate map does not preserve edges");
  report.certified = true;
  return report;
}

// ordered adjacent pairs whose endpoints have exactly `count` common
// neighbors; recovers factor edge classes of products of complete graphs
inline binary_relation edges_with_common_neighbors(const graph& g, int count) {
  binary_relation out(g.n());
  for (auto [x, y] : g.ordered_edges())
    if (g.common_neighbor_count(x, y) == count) out.set(x, y);
  return out;
}

}  // namespace ccwl
