#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ccwl/coherent.hpp"
#include "ccwl/graph.hpp"
#include "ccwl/refine.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

inline constexpr std::uint64_t default_tuple_budget = 100000000ULL;

// Stable coloring of the k-tuples of a point set. Tuple indices are
// row-major with the leftmost position most significant. Color ids are
// canonical: relabeling the underlying graph's vertices leaves them
// unchanged, so two graphs compare id-for-id and digest-for-digest.
struct ktuple_coloring {
  int n = 0;
  int k = 0;
  std::uint32_t rank = 0;
  std::vector<std::uint32_t> color;       // size n^k
  std::vector<refine_trace_entry> trace;  // entry 0 describes the initial coloring
};

namespace detail {

inline std::uint64_t checked_tuple_count(int n, int k, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > budget / static_cast<std::uint64_t>(n))
      throw budget_error("k-tuple refinement: " + std::to_string(n) + "^" + std::to_string(k) +
                         " tuples exceed the budget of " + std::to_string(budget) +
                         " tuples; raise the budget to proceed");
    total *= static_cast<std::uint64_t>(n);
  }
  if (total > 0xFFFFFFFFULL)
    throw budget_error("k-tuple refinement: more than 2^32 tuples is unsupported");
  return total;
}

// per-tuple refinement signature: the n substitution records, each the
// k-vector of colors after replacing one position by the same new vertex,
// sorted lexicographically
struct ktuple_sig_builder {
  int n, k;
  const std::uint32_t* color;
  const std::uint64_t* weight;
  std::vector<std::int64_t> base;
  std::vector<std::uint32_t> records;
  std::vector<std::uint32_t> idx;

  ktuple_sig_builder(int n_, int k_, const std::uint32_t* color_, const std::uint64_t* weight_)
      : n(n_), k(k_), color(color_), weight(weight_) {
    base.resize(static_cast<std::size_t>(k));
    records.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    idx.resize(static_cast<std::size_t>(n));
  }

  // fills `out` (size n*k) with the sorted records of tuple `t`
  void build(std::uint64_t t, std::uint32_t* out) {
    for (int i = 0; i < k; ++i) {
      std::uint64_t vi = (t / weight[i]) % static_cast<std::uint64_t>(n);
      base[static_cast<std::size_t>(i)] =
          static_cast<std::int64_t>(t) - static_cast<std::int64_t>(vi * weight[i]);
    }
    for (int g = 0; g < n; ++g)
      for (int i = 0; i < k; ++i)
        records[static_cast<std::size_t>(g) * k + i] =
            color[base[static_cast<std::size_t>(i)] +
                  static_cast<std::int64_t>(static_cast<std::uint64_t>(g) * weight[i])];
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      const std::uint32_t* ra = records.data() + static_cast<std::size_t>(a) * k;
      const std::uint32_t* rb = records.data() + static_cast<std::size_t>(b) * k;
      for (int i = 0; i < k; ++i)
        if (ra[i] != rb[i]) return ra[i] < rb[i];
      return false;
    });
    for (int g = 0; g < n; ++g)
      std::memcpy(out + static_cast<std::size_t>(g) * k,
                  records.data() + static_cast<std::size_t>(idx[static_cast<std::size_t>(g)]) * k,
                  sizeof(std::uint32_t) * static_cast<std::size_t>(k));
  }
};

inline std::uint32_t ktuple_refine_round(int n, int k, std::vector<std::uint32_t>& color,
                                         std::uint32_t rank, refine_trace_entry* stat_out) {
  const std::size_t total = color.size();
  std::vector<std::uint64_t> weight(static_cast<std::size_t>(k));
  weight[static_cast<std::size_t>(k) - 1] = 1;
  for (int i = k - 2; i >= 0; --i)
    weight[static_cast<std::size_t>(i)] = weight[static_cast<std::size_t>(i) + 1] * static_cast<std::uint64_t>(n);

  const std::size_t sig_len = static_cast<std::size_t>(n) * static_cast<std::size_t>(k);
  std::vector<cell_key> keys(total);
  parallel_for(total, [&](std::size_t begin, std::size_t end) {
    ktuple_sig_builder builder(n, k, color.data(), weight.data());
    std::vector<std::uint32_t> sig(sig_len);
    for (std::size_t t = begin; t < end; ++t) {
      builder.build(static_cast<std::uint64_t>(t), sig.data());
      sig_hash h;
      for (std::uint32_t v : sig) h.add(v);
      keys[t] = cell_key{color[t], h.lo, h.hi};
    }
  });

  std::vector<std::uint32_t> order(total);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });

  std::vector<std::size_t> group_start;
  for (std::size_t i = 0; i < total; ++i)
    if (i == 0 || !(keys[order[i]] == keys[order[i - 1]])) group_start.push_back(i);
  group_start.push_back(total);
  const std::size_t ngroups = group_start.size() - 1;
  const std::uint32_t new_rank = static_cast<std::uint32_t>(ngroups);

  std::atomic<bool> collision{false};
  parallel_for(ngroups, [&](std::size_t gbegin, std::size_t gend) {
    ktuple_sig_builder builder(n, k, color.data(), weight.data());
    std::vector<std::uint32_t> rep(sig_len), mem(sig_len);
    for (std::size_t gi = gbegin; gi < gend; ++gi) {
      std::size_t lo = group_start[gi], hi = group_start[gi + 1];
      if (hi - lo == 1) continue;
      builder.build(order[lo], rep.data());
      for (std::size_t i = lo + 1; i < hi; ++i) {
        builder.build(order[i], mem.data());
        if (std::memcmp(rep.data(), mem.data(), sizeof(std::uint32_t) * sig_len) != 0)
          collision.store(true, std::memory_order_relaxed);
      }
    }
  });
  if (collision.load())
    throw internal_error("k-tuple refinement: signature hash collision detected; grouping aborted");

  if (stat_out) {
    stat_out->rank = new_rank;
    stat_out->freqs.clear();
    sig_hash h;
    h.add(new_rank);
    for (std::size_t gi = 0; gi < ngroups; ++gi) {
      const cell_key& key = keys[order[group_start[gi]]];
      std::uint64_t count = group_start[gi + 1] - group_start[gi];
      stat_out->freqs.push_back(count);
      h.add(key.old_color);
      h.add(key.lo);
      h.add(key.hi);
      h.add(count);
    }
    std::sort(stat_out->freqs.begin(), stat_out->freqs.end());
    stat_out->digest_lo = h.lo;
    stat_out->digest_hi = h.hi;
  }

  if (new_rank > rank) {
    std::vector<std::uint32_t> renamed(total);
    for (std::size_t gi = 0; gi < ngroups; ++gi)
      for (std::size_t i = group_start[gi]; i < group_start[gi + 1]; ++i)
        renamed[order[i]] = static_cast<std::uint32_t>(gi);
    color.swap(renamed);
  }
  return new_rank;
}

}  // namespace detail

// Runs k-dimensional refinement to its stable coloring, seeded from the pair
// colors of the given coherent configuration (normally the coherent closure
// of a graph, whose canonical ids this inherits). The initial color of a
// tuple is its k x k matrix of pair colors; rounds refine by the sorted
// multiset of single-position substitution color vectors. Work and memory
// scale with n^k; requests beyond `budget_tuples` are refused up front.
inline ktuple_coloring k_wl(const coherent_configuration& cc, int k,
                            std::uint64_t budget_tuples = default_tuple_budget) {
  const int n = cc.n();
  if (n < 1) throw domain_error("k_wl: empty point set");
  if (k < 2) throw domain_error("k_wl: k must be at least 2");
  const std::uint64_t total = detail::checked_tuple_count(n, k, budget_tuples);

  std::vector<std::vector<std::uint32_t>> sigs(static_cast<std::size_t>(total));
  std::vector<int> v(static_cast<std::size_t>(k), 0);
  std::vector<std::uint32_t> sig(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rest = t;
    for (int i = k - 1; i >= 0; --i) {
      v[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(n));
      rest /= static_cast<std::uint64_t>(n);
    }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        sig[static_cast<std::size_t>(i) * k + j] =
            cc.color(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
    sigs[static_cast<std::size_t>(t)] = sig;
  }
  auto [initial, rank0] = detail::canonical_ids(sigs);

  detail::sig_hash content;
  {
    std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
    for (const auto& s : sigs) ++counts[s];
    for (const auto& [key, count] : counts) {
      for (std::uint32_t c : key) content.add(c);
      content.add(count);
      content.add(0x5e15e15e15e15e15ULL);
    }
  }
  sigs.clear();
  sigs.shrink_to_fit();

  ktuple_coloring out;
  out.n = n;
  out.k = k;
  out.color = std::move(initial);
  out.rank = rank0;
  out.trace.push_back(detail::stats_of_coloring(out.color, out.rank));
  out.trace[0].digest_lo = detail::mix64(out.trace[0].digest_lo ^ content.lo);
  out.trace[0].digest_hi = detail::mix64(out.trace[0].digest_hi + content.hi);

  for (;;) {
    refine_trace_entry stat;
    std::uint32_t new_rank = detail::ktuple_refine_round(n, k, out.color, out.rank, &stat);
    if (new_rank == out.rank) break;
    out.rank = new_rank;
    out.trace.push_back(std::move(stat));
  }
  return out;
}

inline ktuple_coloring k_wl(const graph& g, int k,
                            std::uint64_t budget_tuples = default_tuple_budget) {
  return k_wl(coherent_closure(g), k, budget_tuples);
}

// Projects a stable k-tuple coloring onto the positions named by K (0-based,
// strictly increasing): an |K|-tuple y is colored by the k-tuple that holds
// y on the positions of K and the last entry of y everywhere else. Ids are
// renumbered to 0..rank-1 preserving their relative order.
inline ktuple_coloring project_coloring(const ktuple_coloring& kt, const std::vector<int>& positions) {
  const int m = static_cast<int>(positions.size());
  if (m < 1 || m > kt.k) throw domain_error("project_coloring: need 1 <= |K| <= k");
  for (int i = 0; i < m; ++i) {
    if (positions[static_cast<std::size_t>(i)] < 0 || positions[static_cast<std::size_t>(i)] >= kt.k)
      throw domain_error("project_coloring: position out of range");
    if (i > 0 && positions[static_cast<std::size_t>(i)] <= positions[static_cast<std::size_t>(i) - 1])
      throw domain_error("project_coloring: positions must be strictly increasing");
  }

  std::vector<std::uint64_t> weight(static_cast<std::size_t>(kt.k));
  weight[static_cast<std::size_t>(kt.k) - 1] = 1;
  for (int i = kt.k - 2; i >= 0; --i)
    weight[static_cast<std::size_t>(i)] = weight[static_cast<std::size_t>(i) + 1] * static_cast<std::uint64_t>(kt.n);
  std::vector<char> in_k(static_cast<std::size_t>(kt.k), 0);
  for (int p : positions) in_k[static_cast<std::size_t>(p)] = 1;
  std::uint64_t pad_weight = 0;
  for (int i = 0; i < kt.k; ++i)
    if (!in_k[static_cast<std::size_t>(i)]) pad_weight += weight[static_cast<std::size_t>(i)];

  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<std::uint64_t>(kt.n);

  ktuple_coloring out;
  out.n = kt.n;
  out.k = m;
  out.color.resize(static_cast<std::size_t>(total));
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rest = t, padded = 0, last = 0;
    for (int i = m - 1; i >= 0; --i) {
      std::uint64_t vi = rest % static_cast<std::uint64_t>(kt.n);
      rest /= static_cast<std::uint64_t>(kt.n);
      if (i == m - 1) last = vi;
      padded += vi * weight[static_cast<std::size_t>(positions[static_cast<std::size_t>(i)])];
    }
    padded += last * pad_weight;
    out.color[static_cast<std::size_t>(t)] = kt.color[static_cast<std::size_t>(padded)];
  }

  std::vector<std::uint32_t> used(out.color.begin(), out.color.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<std::uint32_t> remap(kt.rank, 0);
  for (std::size_t i = 0; i < used.size(); ++i) remap[used[i]] = static_cast<std::uint32_t>(i);
  for (std::uint32_t& c : out.color) c = remap[c];
  out.rank = static_cast<std::uint32_t>(used.size());
  out.trace.push_back(detail::stats_of_coloring(out.color, out.rank));
  return out;
}

// canonical ids of the stable colors taken by edge tuples (x, y, y, ..., y)
inline std::vector<std::uint32_t> edge_cover_colors(const ktuple_coloring& kt, const graph& g) {
  if (g.n() != kt.n) throw domain_error("edge_cover_colors: vertex count mismatch");
  std::uint64_t w0 = 1;
  for (int i = 1; i < kt.k; ++i) w0 *= static_cast<std::uint64_t>(kt.n);
  std::uint64_t rest = 0;
  {
    std::uint64_t w = 1;
    for (int i = kt.k - 1; i >= 1; --i) {
      rest += w;
      w *= static_cast<std::uint64_t>(kt.n);
    }
  }
  std::vector<std::uint32_t> cover;
  for (auto [x, y] : g.ordered_edges())
    cover.push_back(kt.color[static_cast<std::size_t>(static_cast<std::uint64_t>(x) * w0 +
                                                      static_cast<std::uint64_t>(y) * rest)]);
  std::sort(cover.begin(), cover.end());
  cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
  return cover;
}

struct kwl_comparison {
  bool equivalent = false;
  std::uint32_t rank1 = 0, rank2 = 0;
  std::size_t rounds1 = 0, rounds2 = 0;
};

// Two graphs are m-WL equivalent when the refinement traces agree round for
// round (same rank, same class size histogram, same canonical digest, which
// pins the colorings down id-for-id) and the canonical color sets covering
// the two edge sets coincide.
inline kwl_comparison wl_m_equivalent(const graph& g1, const graph& g2, int m,
                                      std::uint64_t budget_tuples = default_tuple_budget) {
  ktuple_coloring a = k_wl(g1, m, budget_tuples);
  ktuple_coloring b = k_wl(g2, m, budget_tuples);
  kwl_comparison out;
  out.rank1 = a.rank;
  out.rank2 = b.rank;
  out.rounds1 = a.trace.size();
  out.rounds2 = b.trace.size();
  out.equivalent = a.trace == b.trace && edge_cover_colors(a, g1) == edge_cover_colors(b, g2);
  return out;
}

// True iff the pair projection of the stable m-tuple coloring induces exactly
// the coherent closure's partition of the point pairs.
inline bool wl_m_closed(const graph& g, int m, std::uint64_t budget_tuples = default_tuple_budget) {
  coherent_configuration cc = coherent_closure(g);
  ktuple_coloring kt = k_wl(cc, m, budget_tuples);
  ktuple_coloring pairs = project_coloring(kt, {0, 1});
  return detail::partitions_equal_vec(pairs.color, cc.color_matrix());
}

}  // namespace ccwl
