#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ccwl/coherent.hpp"
#include "ccwl/graph.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

inline constexpr int max_group_degree = 8;
inline constexpr std::size_t max_group_order = 40320;

// a permutation group given by its full element list; elements are image
// tables p with p[i] the image of i, sorted lexicographically
struct perm_group {
  int degree = 0;
  std::vector<std::vector<int>> generators;
  std::vector<std::vector<int>> elements;

  std::size_t order() const { return elements.size(); }
};

namespace detail {

inline void validate_permutation(const std::vector<int>& p, int degree) {
  if (static_cast<int>(p.size()) != degree)
    throw domain_error("permutation has wrong degree");
  std::vector<char> seen(static_cast<std::size_t>(degree), 0);
  for (int v : p) {
    if (v < 0 || v >= degree || seen[static_cast<std::size_t>(v)])
      throw domain_error("permutation is not a bijection on 0..degree-1");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

inline std::vector<int> compose(const std::vector<int>& p, const std::vector<int>& q) {
  std::vector<int> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[static_cast<std::size_t>(q[i])];
  return out;
}

inline std::vector<int> inverse_permutation(const std::vector<int>& p) {
  std::vector<int> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

}  // namespace detail

// closure of the generators under composition, by breadth-first products
inline perm_group enumerate_group(int degree, std::vector<std::vector<int>> generators) {
  if (degree < 1 || degree > max_group_degree)
    throw domain_error("enumerate_group: degree must be between 1 and " + std::to_string(max_group_degree));
  for (const auto& p : generators) detail::validate_permutation(p, degree);

  std::vector<int> identity(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) identity[static_cast<std::size_t>(i)] = i;

  std::set<std::vector<int>> elements{identity};
  std::vector<std::vector<int>> frontier{identity};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& e : frontier)
      for (const auto& g : generators) {
        std::vector<int> product = detail::compose(g, e);
        if (elements.insert(product).second) {
          if (elements.size() > max_group_order)
            throw domain_error("enumerate_group: order exceeds " + std::to_string(max_group_order));
          next.push_back(std::move(product));
        }
      }
    frontier = std::move(next);
  }

  perm_group out;
  out.degree = degree;
  out.generators = std::move(generators);
  out.elements.assign(elements.begin(), elements.end());
  return out;
}

inline perm_group symmetric_group(int degree) {
  if (degree < 1 || degree > max_group_degree)
    throw domain_error("symmetric_group: degree must be between 1 and " + std::to_string(max_group_degree));
  std::vector<std::vector<int>> generators;
  if (degree >= 2) {
    std::vector<int> swap01(static_cast<std::size_t>(degree));
    std::vector<int> cycle(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) {
      swap01[static_cast<std::size_t>(i)] = i;
      cycle[static_cast<std::size_t>(i)] = (i + 1) % degree;
    }
    swap01[0] = 1;
    swap01[1] = 0;
    generators.push_back(std::move(swap01));
    if (degree >= 3) generators.push_back(std::move(cycle));
  }
  return enumerate_group(degree, std::move(generators));
}

// configurations that share one canonical color naming, so color ids move
// between members without translation
struct iso_family {
  std::vector<coherent_configuration> members;
};

inline iso_family build_iso_family(std::vector<coherent_configuration> members) {
  if (members.empty()) throw domain_error("build_iso_family: need at least one member");
  std::string reference = canonical_signature(members.front());
  for (std::size_t i = 1; i < members.size(); ++i)
    if (canonical_signature(members[i]) != reference)
      throw domain_error("build_iso_family: members 0 and " + std::to_string(i) +
                         " have different canonical structure");
  return iso_family{std::move(members)};
}

inline iso_family build_iso_family(const std::vector<graph>& graphs) {
  std::vector<coherent_configuration> members;
  members.reserve(graphs.size());
  for (const graph& g : graphs) members.push_back(coherent_closure(g));
  return build_iso_family(std::move(members));
}

// Fusion of the tensor product of the family under the group permuting the
// coordinate positions: tensor colors whose digit strings lie in one group
// orbit are merged. The merge of a coherent tensor under a position group is
// coherent again; that is verified, not assumed.
inline coherent_configuration exponentiate(const iso_family& family, const perm_group& group) {
  const int d = group.degree;
  if (d < 1) throw domain_error("exponentiate: group degree must be positive");
  if (static_cast<int>(family.members.size()) != d)
    throw domain_error("exponentiate: family size must equal group degree");
  const std::uint64_t base = family.members.front().rank();
  for (const auto& member : family.members)
    if (member.rank() != base) throw domain_error("exponentiate: members have different ranks");

  coherent_configuration tensor = tensor_product(family.members);
  const std::uint64_t fused_rank = tensor.rank();

  detail::disjoint_set orbits(fused_rank);
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(d));
  std::vector<std::uint32_t> permuted(static_cast<std::size_t>(d));
  for (const auto& g : group.generators) {
    std::vector<int> inv = detail::inverse_permutation(g);
    for (std::uint64_t t = 0; t < fused_rank; ++t) {
      std::uint64_t rest = t;
      for (int i = d - 1; i >= 0; --i) {
        digits[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % base);
        rest /= base;
      }
      for (int i = 0; i < d; ++i)
        permuted[static_cast<std::size_t>(i)] = digits[static_cast<std::size_t>(inv[static_cast<std::size_t>(i)])];
      std::uint64_t image = 0;
      for (int i = 0; i < d; ++i) image = image * base + permuted[static_cast<std::size_t>(i)];
      orbits.unite(static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(image));
    }
  }

  std::map<std::uint32_t, std::uint32_t> orbit_id;
  for (std::uint64_t t = 0; t < fused_rank; ++t) orbit_id.emplace(orbits.find(static_cast<std::uint32_t>(t)), 0);
  std::uint32_t next = 0;
  for (auto& [root, id] : orbit_id) id = next++;

  std::vector<std::uint32_t> matrix = tensor.color_matrix();
  for (auto& c : matrix) c = orbit_id[orbits.find(c)];

  coherent_configuration out(tensor.n(), std::move(matrix), next);
  axiom_report axioms = verify_axioms(out);
  if (!axioms.coherent)
    throw internal_error("exponentiate: fusion is not coherent: " +
                         (axioms.violations.empty() ? std::string("violations") : axioms.violations.front()));
  out.canonical_names = false;
  return out;
}

}  // namespace ccwl
