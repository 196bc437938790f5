#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ccwl/graph.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

// Coordinates and per-edge factor indices of a built Cartesian product.
// Vertex order is row-major over factor coordinates, leftmost factor most
// significant, so vertex u of [X1, X2] has coordinates (u / n2, u % n2).
struct product_structure {
  std::vector<graph> factors;
  std::vector<std::vector<int>> coordinates;       // per product vertex
  std::vector<std::vector<int>> factor_of_edge;    // n x n matrix, -1 off edges
  int factor_index(int u, int v) const { return factor_of_edge[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }
};

struct cartesian_product_result {
  graph product;
  product_structure structure;
};

inline cartesian_product_result cartesian_product(const std::vector<graph>& factors) {
  if (factors.empty()) throw domain_error("cartesian_product: empty factor list");
  std::vector<int> dims;
  for (const graph& f : factors) {
    if (f.n() < 1) throw domain_error("cartesian_product: factor with no vertices");
    dims.push_back(f.n());
  }
  detail::mixed_radix codec(dims);
  if (codec.total > 1000000) throw domain_error("cartesian_product: product too large");
  int n = static_cast<int>(codec.total);

  cartesian_product_result out;
  out.product = graph(n);
  out.structure.factors = factors;
  out.structure.coordinates.resize(static_cast<std::size_t>(n));
  out.structure.factor_of_edge.assign(static_cast<std::size_t>(n),
                                      std::vector<int>(static_cast<std::size_t>(n), -1));

  std::vector<int> coords;
  for (int u = 0; u < n; ++u) {
    codec.decode(static_cast<std::uint64_t>(u), coords);
    out.structure.coordinates[static_cast<std::size_t>(u)] = coords;
  }
  for (int u = 0; u < n; ++u) {
    const std::vector<int>& cu = out.structure.coordinates[static_cast<std::size_t>(u)];
    for (std::size_t i = 0; i < factors.size(); ++i) {
      factors[i].for_each_neighbor(cu[i], [&](int w) {
        long long v = u + static_cast<long long>(w - cu[i]) * static_cast<long long>(codec.weight[i]);
        if (u < v) out.product.add_edge(u, static_cast<int>(v));
        out.structure.factor_of_edge[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = static_cast<int>(i);
      });
    }
  }
  return out;
}

}  // namespace ccwl
