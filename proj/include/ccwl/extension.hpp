#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccwl/coherent.hpp"
#include "ccwl/refine.hpp"
#include "ccwl/relation.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

inline constexpr int default_extension_cap = 24;

// Coherent closure on the point set of ordered pairs: the closure of the
// tensor square of `base` together with the partial diagonal relation that
// marks the pair points (x, x). Point (x1, x2) has index x1*n + x2.
struct two_extension_result {
  coherent_configuration base;
  coherent_configuration extended;      // on n^2 points
  std::vector<int> diagonal_points;     // indices x*n + x, ascending
};

// {(u, v) : (u_i, v_j) in s} over the pair points, i, j in {1, 2}
inline binary_relation cylinder(int n, const binary_relation& s, int i, int j) {
  if (s.n() != n) throw domain_error("cylinder: relation is on the wrong point set");
  if (i < 1 || i > 2 || j < 1 || j > 2) throw domain_error("cylinder: coordinate indices must be 1 or 2");
  const int n2 = n * n;
  binary_relation out(n2);
  for (int u1 = 0; u1 < n; ++u1)
    for (int u2 = 0; u2 < n; ++u2) {
      int ui = i == 1 ? u1 : u2;
      int u = u1 * n + u2;
      for (int v1 = 0; v1 < n; ++v1)
        for (int v2 = 0; v2 < n; ++v2)
          if (s.test(ui, j == 1 ? v1 : v2)) out.set(u, v1 * n + v2);
    }
  return out;
}

// checked form: s must be a union of colors of cc
inline binary_relation cylinder(const coherent_configuration& cc, const binary_relation& s, int i, int j) {
  if (!colors_covering(cc, s)) throw domain_error("cylinder: relation is not a union of colors");
  return cylinder(cc.n(), s, i, j);
}

inline binary_relation cylinder(const coherent_configuration& cc, const std::vector<std::uint32_t>& colors,
                                int i, int j) {
  return cylinder(cc.n(), cc.relation_of(colors), i, j);
}

inline two_extension_result two_extension(const coherent_configuration& cc,
                                          int point_cap = default_extension_cap) {
  const int n = cc.n();
  if (n < 1) throw domain_error("two_extension: empty point set");
  if (n > point_cap)
    throw budget_error("two_extension: point cap " + std::to_string(point_cap) +
                       " exceeded (n = " + std::to_string(n) + "); raise the cap to proceed");

  const int n2 = n * n;
  const std::size_t cells = static_cast<std::size_t>(n2) * static_cast<std::size_t>(n2);
  const std::uint64_t rank = cc.rank();
  std::vector<std::uint64_t> init(cells);
  for (int u1 = 0; u1 < n; ++u1)
    for (int u2 = 0; u2 < n; ++u2) {
      const std::size_t u = static_cast<std::size_t>(u1) * n + u2;
      const bool u_diag = u1 == u2;
      for (int v1 = 0; v1 < n; ++v1) {
        const std::uint64_t giv = static_cast<std::uint64_t>(cc.color(u1, v1)) * rank;
        for (int v2 = 0; v2 < n; ++v2) {
          const std::size_t v = static_cast<std::size_t>(v1) * n + v2;
          const bool in_delta = u == v && u_diag;
          init[u * n2 + v] = (giv + cc.color(u2, v2)) * 2 + (in_delta ? 1 : 0);
        }
      }
    }
  auto [initial, rank0] = detail::canonical_ids(init);

  detail::sig_hash content;
  {
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t s : init) ++counts[s];
    for (const auto& [key, count] : counts) {
      content.add(key);
      content.add(count);
      content.add(0x5e15e15e15e15e15ULL);
    }
  }
  init.clear();
  init.shrink_to_fit();

  detail::refine_result res = detail::refine_to_coherence(n2, std::move(initial), rank0);
  res.trace[0].digest_lo = detail::mix64(res.trace[0].digest_lo ^ content.lo);
  res.trace[0].digest_hi = detail::mix64(res.trace[0].digest_hi + content.hi);

  two_extension_result out{cc, coherent_configuration(n2, std::move(res.color), res.rank), {}};
  out.extended.canonical_names = cc.canonical_names;
  out.extended.trace = std::move(res.trace);
  for (int x = 0; x < n; ++x) out.diagonal_points.push_back(x * n + x);
  return out;
}

// Restriction of the 2-extension to the diagonal pair points, transported
// back to the original point set along (x, x) -> x. Always >= the input as
// a partition; input tags are re-expressed in the result's colors.
inline coherent_configuration two_closure(const coherent_configuration& cc,
                                          int point_cap = default_extension_cap) {
  two_extension_result ext = two_extension(cc, point_cap);
  coherent_configuration out = restriction(ext.extended, ext.diagonal_points);
  out.canonical_names = cc.canonical_names;
  for (const auto& [name, colors] : cc.tags) {
    auto cover = colors_covering(out, cc.relation_of(colors));
    if (!cover)
      throw internal_error("two_closure: input relation is not a union of output colors");
    out.tags[name] = std::move(*cover);
  }
  return out;
}

inline bool is_two_closed(const coherent_configuration& cc, int point_cap = default_extension_cap) {
  return partitions_equal(two_closure(cc, point_cap), cc);
}

}  // namespace ccwl
