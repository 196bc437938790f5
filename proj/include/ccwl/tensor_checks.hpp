#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccwl/coherent.hpp"
#include "ccwl/exponentiation.hpp"
#include "ccwl/extension.hpp"
#include "ccwl/factorization.hpp"
#include "ccwl/graph.hpp"
#include "ccwl/product.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

inline constexpr int default_two_closed_cap = 30;

// partition of a graph list into classes whose closures are algebraically
// isomorphic with matching edge colors; classes ordered by smallest member
struct equivalence_classing {
  std::vector<std::vector<int>> classes;
  std::vector<coherent_configuration> closures;  // one per input graph
};

inline equivalence_classing wl_equivalence_classes(const std::vector<graph>& graphs) {
  equivalence_classing out;
  out.closures.reserve(graphs.size());
  for (const graph& g : graphs) out.closures.push_back(coherent_closure(g));

  const std::size_t m = graphs.size();
  detail::disjoint_set ds(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (ds.find(static_cast<std::uint32_t>(i)) != ds.find(static_cast<std::uint32_t>(j)) &&
          algebraically_isomorphic(out.closures[i], out.closures[j], {"E"}))
        ds.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));

  std::vector<int> class_of(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    std::uint32_t root = ds.find(static_cast<std::uint32_t>(i));
    if (class_of[root] < 0) {
      class_of[root] = static_cast<int>(out.classes.size());
      out.classes.emplace_back();
    }
    out.classes[static_cast<std::size_t>(class_of[root])].push_back(static_cast<int>(i));
  }
  return out;
}

struct class_inclusion_result {
  int class_index = 0;
  bool holds = false;   // closure of the class product is below the exponentiation
  bool strict = false;  // holds with strictly fewer colors
};

struct product_decomposition_report {
  int num_factors = 0;
  std::vector<int> factor_orders;
  int product_order = 0;
  std::vector<std::vector<int>> classes;          // factor indices per class
  std::optional<bool> hypothesis_2closed;         // unset when the product is over the cap
  bool tensor_decomposition_holds = false;
  std::vector<class_inclusion_result> class_inclusions;
};

namespace detail {

// product vertices are row-major over the original factor order; the tensor
// of class products is row-major over classes, each class row-major over its
// own factors; this maps one indexing to the other
struct class_regrouping {
  std::vector<mixed_radix> class_codecs;
  mixed_radix outer;
  std::vector<std::vector<int>> classes;

  class_regrouping(const std::vector<int>& factor_orders, const std::vector<std::vector<int>>& classes_in)
      : outer({1}), classes(classes_in) {
    std::vector<int> outer_dims;
    for (const auto& members : classes) {
      std::vector<int> dims;
      for (int j : members) dims.push_back(factor_orders[static_cast<std::size_t>(j)]);
      class_codecs.emplace_back(dims);
      outer_dims.push_back(static_cast<int>(class_codecs.back().total));
    }
    outer = mixed_radix(outer_dims);
  }

  std::uint64_t map_vertex(const std::vector<int>& coords) const {
    std::vector<int> outer_digits;
    std::vector<int> inner;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      inner.clear();
      for (int j : classes[k]) inner.push_back(coords[static_cast<std::size_t>(j)]);
      outer_digits.push_back(static_cast<int>(class_codecs[k].index(inner)));
    }
    return outer.index(outer_digits);
  }
};

}  // namespace detail

// Decomposition check for a connected prime factor list: builds the product,
// groups the factors into equivalence classes, and reports three independent
// findings: whether the product closure is 2-closed (skipped above the point
// cap), whether it equals the tensor of the class-product closures, and
// whether each class-product closure sits below the exponentiation of its
// class by the full symmetric group.
inline product_decomposition_report product_decomposition_check(const std::vector<graph>& factors,
                                                                int two_closed_cap = default_two_closed_cap) {
  if (factors.empty()) throw domain_error("product_decomposition_check: empty factor list");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    factorization_report fr = prime_factorize(factors[i]);  // throws when disconnected
    if (fr.num_factors != 1)
      throw domain_error("product_decomposition_check: factor " + std::to_string(i) + " is not prime");
  }

  product_decomposition_report report;
  report.num_factors = static_cast<int>(factors.size());
  for (const graph& f : factors) report.factor_orders.push_back(f.n());

  cartesian_product_result built = cartesian_product(factors);
  report.product_order = built.product.n();
  coherent_configuration product_closure = coherent_closure(built.product);

  equivalence_classing classing = wl_equivalence_classes(factors);
  report.classes = classing.classes;

  if (built.product.n() <= two_closed_cap)
    report.hypothesis_2closed = is_two_closed(product_closure, two_closed_cap);

  std::vector<coherent_configuration> class_closures;
  std::vector<graph> class_products;
  for (const auto& members : classing.classes) {
    std::vector<graph> parts;
    for (int j : members) parts.push_back(factors[static_cast<std::size_t>(j)]);
    class_products.push_back(cartesian_product(parts).product);
    class_closures.push_back(coherent_closure(class_products.back()));
  }

  coherent_configuration tensor = tensor_product(class_closures);
  detail::class_regrouping regroup(report.factor_orders, classing.classes);
  const int n = built.product.n();
  std::vector<std::uint32_t> pulled(static_cast<std::size_t>(n) * n);
  std::vector<std::uint64_t> image(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    image[static_cast<std::size_t>(v)] = regroup.map_vertex(built.structure.coordinates[static_cast<std::size_t>(v)]);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      pulled[static_cast<std::size_t>(u) * n + v] =
          tensor.color(static_cast<int>(image[static_cast<std::size_t>(u)]),
                       static_cast<int>(image[static_cast<std::size_t>(v)]));
  report.tensor_decomposition_holds = detail::partitions_equal_vec(product_closure.color_matrix(), pulled);

  for (std::size_t k = 0; k < classing.classes.size(); ++k) {
    std::vector<coherent_configuration> members;
    for (int j : classing.classes[k]) members.push_back(classing.closures[static_cast<std::size_t>(j)]);
    iso_family family = build_iso_family(std::move(members));
    coherent_configuration expo = exponentiate(family, symmetric_group(static_cast<int>(classing.classes[k].size())));
    class_inclusion_result inc;
    inc.class_index = static_cast<int>(k);
    inc.holds = partition_leq(class_closures[k], expo);
    inc.strict = inc.holds && class_closures[k].rank() != expo.rank();
    report.class_inclusions.push_back(inc);
  }
  return report;
}

// For pairwise equivalent connected factors: the closure of their product is
// bounded above by the exponentiation of the family by the full symmetric
// group (every closure color is a union of exponentiation colors).
inline bool exponentiation_bounds_closure(const std::vector<graph>& factors) {
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (!is_connected(factors[i]))
      throw domain_error("exponentiation_bounds_closure: factor " + std::to_string(i) + " is disconnected");
  iso_family family = build_iso_family(factors);
  coherent_configuration expo = exponentiate(family, symmetric_group(static_cast<int>(factors.size())));
  coherent_configuration closure = coherent_closure(cartesian_product(factors).product);
  return partition_leq(closure, expo);
}

struct exponentiation_probe_result {
  bool holds = false;  // the bound itself
  bool equal = false;
  bool strict = false;
};

// reports whether the bound is attained for this instance; no general claim
inline exponentiation_probe_result exponentiation_equality_probe(const std::vector<graph>& factors) {
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (!is_connected(factors[i]))
      throw domain_error("exponentiation_equality_probe: factor " + std::to_string(i) + " is disconnected");
  iso_family family = build_iso_family(factors);
  coherent_configuration expo = exponentiate(family, symmetric_group(static_cast<int>(factors.size())));
  coherent_configuration closure = coherent_closure(cartesian_product(factors).product);
  exponentiation_probe_result out;
  out.holds = partition_leq(closure, expo);
  out.equal = out.holds && partitions_equal(closure, expo);
  out.strict = out.holds && !out.equal;
  return out;
}

}  // namespace ccwl
