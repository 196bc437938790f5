#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ccwl/util.hpp"

namespace ccwl {

// Per-round statistics of a refinement run. digest is a canonical fingerprint
// of the round's sorted signature-key list, comparable across inputs because
// ids are assigned in a canonical order each round.
struct refine_trace_entry {
  std::uint32_t rank = 0;
  std::vector<std::uint64_t> freqs;  // sorted ascending
  std::uint64_t digest_lo = 0;
  std::uint64_t digest_hi = 0;
  friend bool operator==(const refine_trace_entry&, const refine_trace_entry&) = default;
};

namespace detail {

struct cell_key {
  std::uint32_t old_color;
  std::uint64_t lo, hi;
  friend bool operator==(const cell_key&, const cell_key&) = default;
  friend auto operator<=>(const cell_key&, const cell_key&) = default;
};

inline refine_trace_entry stats_of_coloring(const std::vector<std::uint32_t>& color, std::uint32_t rank) {
  refine_trace_entry e;
  e.rank = rank;
  e.freqs.assign(rank, 0);
  for (std::uint32_t c : color) ++e.freqs[c];
  std::sort(e.freqs.begin(), e.freqs.end());
  sig_hash h;
  h.add(rank);
  for (std::uint64_t f : e.freqs) h.add(f);
  e.digest_lo = h.lo;
  e.digest_hi = h.hi;
  return e;
}

// Fills scratch with the sorted multiset { pack(c(x,g), c(g,y)) : g in points }
// for the cell (x, y); colorT is the transposed color matrix.
inline void cell_signature(int N, const std::uint32_t* color, const std::uint32_t* colorT, std::size_t cell,
                           std::uint64_t* scratch) {
  std::size_t x = cell / static_cast<std::size_t>(N);
  std::size_t y = cell % static_cast<std::size_t>(N);
  const std::uint32_t* row = color + x * static_cast<std::size_t>(N);
  const std::uint32_t* col = colorT + y * static_cast<std::size_t>(N);
  for (int g = 0; g < N; ++g)
    scratch[g] = (static_cast<std::uint64_t>(row[g]) << 32) | col[g];
  std::sort(scratch, scratch + N);
}

// One exact refinement round of a pair coloring on N points.
//
// Cells are grouped by (old color, 128-bit signature hash); then every group
// is re-verified: each member's full sorted signature is compared bytewise
// against the group representative's, so a hash collision aborts instead of
// merging distinct signatures. New ids are assigned in sorted key order,
// which keeps the naming canonical (invariant under point relabeling).
//
// Returns the new rank; `color` is replaced only when the partition refined.
// When `witness` is non-null and the partition is unstable, two cells of one
// old color with different signatures are stored there (used for axiom
// violation reporting) and the round result is still computed.
inline std::uint32_t pair_refine_round(int N, std::vector<std::uint32_t>& color, std::uint32_t rank,
                                       refine_trace_entry* stat_out,
                                       std::pair<std::size_t, std::size_t>* witness = nullptr) {
  const std::size_t cells = static_cast<std::size_t>(N) * static_cast<std::size_t>(N);
  std::vector<std::uint32_t> colorT(cells);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      colorT[static_cast<std::size_t>(y) * N + x] = color[static_cast<std::size_t>(x) * N + y];

  std::vector<cell_key> keys(cells);
  parallel_for(cells, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> scratch(static_cast<std::size_t>(N));
    for (std::size_t cell = begin; cell < end; ++cell) {
      cell_signature(N, color.data(), colorT.data(), cell, scratch.data());
      sig_hash h;
      for (int g = 0; g < N; ++g) h.add(scratch[static_cast<std::size_t>(g)]);
      keys[cell] = cell_key{color[cell], h.lo, h.hi};
    }
  });

  std::vector<std::uint32_t> order(cells);
  for (std::size_t i = 0; i < cells; ++i) order[i] = static_cast<std::uint32_t>(i);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });

  // group boundaries in sorted order
  std::vector<std::size_t> group_start;
  for (std::size_t i = 0; i < cells; ++i)
    if (i == 0 || !(keys[order[i]] == keys[order[i - 1]])) group_start.push_back(i);
  group_start.push_back(cells);
  const std::uint32_t new_rank = static_cast<std::uint32_t>(group_start.size() - 1);

  // exact verification: every member signature equals its representative's
  std::atomic<bool> collision{false};
  const std::size_t ngroups = group_start.size() - 1;
  parallel_for(ngroups, [&](std::size_t gbegin, std::size_t gend) {
    std::vector<std::uint64_t> rep(static_cast<std::size_t>(N)), mem(static_cast<std::size_t>(N));
    for (std::size_t gi = gbegin; gi < gend; ++gi) {
      std::size_t lo = group_start[gi], hi = group_start[gi + 1];
      if (hi - lo == 1) continue;
      cell_signature(N, color.data(), colorT.data(), order[lo], rep.data());
      for (std::size_t i = lo + 1; i < hi; ++i) {
        cell_signature(N, color.data(), colorT.data(), order[i], mem.data());
        if (std::memcmp(rep.data(), mem.data(), sizeof(std::uint64_t) * static_cast<std::size_t>(N)) != 0)
          collision.store(true, std::memory_order_relaxed);
      }
    }
  });
  if (collision.load())
    throw internal_error("refinement: signature hash collision detected; grouping aborted");

  if (witness && new_rank > rank) {
    // two adjacent groups sharing the old color witness the split
    for (std::size_t gi = 0; gi + 1 < ngroups; ++gi) {
      std::size_t a = group_start[gi], b = group_start[gi + 1];
      if (keys[order[a]].old_color == keys[order[b]].old_color) {
        *witness = {static_cast<std::size_t>(order[a]), static_cast<std::size_t>(order[b])};
        break;
      }
    }
  }

  if (stat_out) {
    refine_trace_entry e;
    e.rank = new_rank;
    e.freqs.reserve(new_rank);
    sig_hash digest;
    digest.add(new_rank);
    for (std::size_t gi = 0; gi < ngroups; ++gi) {
      std::uint64_t count = group_start[gi + 1] - group_start[gi];
      const cell_key& k = keys[order[group_start[gi]]];
      e.freqs.push_back(count);
      digest.add(k.old_color);
      digest.add(k.lo);
      digest.add(k.hi);
      digest.add(count);
    }
    e.digest_lo = digest.lo;
    e.digest_hi = digest.hi;
    std::sort(e.freqs.begin(), e.freqs.end());
    *stat_out = e;
  }

  if (new_rank > rank) {
    std::vector<std::uint32_t> next(cells);
    std::uint32_t id = 0;
    for (std::size_t gi = 0; gi < ngroups; ++gi, ++id)
      for (std::size_t i = group_start[gi]; i < group_start[gi + 1]; ++i) next[order[i]] = id;
    color.swap(next);
  }
  return new_rank;
}

struct refine_result {
  std::vector<std::uint32_t> color;
  std::uint32_t rank = 0;
  std::vector<refine_trace_entry> trace;  // entry 0 describes the input coloring
};

// Iterates exact refinement rounds until the rank stops increasing. The input
// coloring must already carry canonical ids (callers build them by sorting the
// distinct initial signatures).
inline refine_result refine_to_coherence(int N, std::vector<std::uint32_t> color, std::uint32_t rank) {
  refine_result out;
  out.trace.push_back(stats_of_coloring(color, rank));
  for (;;) {
    refine_trace_entry stat;
    std::uint32_t new_rank = pair_refine_round(N, color, rank, &stat);
    if (new_rank == rank) break;
    rank = new_rank;
    out.trace.push_back(std::move(stat));
  }
  out.color = std::move(color);
  out.rank = rank;
  return out;
}

// Canonical ids for arbitrary signatures: distinct signatures sorted
// lexicographically get ids 0, 1, ...; returns (ids, rank).
template <typename Sig>
std::pair<std::vector<std::uint32_t>, std::uint32_t> canonical_ids(const std::vector<Sig>& sigs) {
  std::map<Sig, std::uint32_t> ids;
  for (const Sig& s : sigs) ids.emplace(s, 0);
  std::uint32_t next = 0;
  for (auto& kv : ids) kv.second = next++;
  std::vector<std::uint32_t> out;
  out.reserve(sigs.size());
  for (const Sig& s : sigs) out.push_back(ids.find(s)->second);
  return {std::move(out), next};
}

}  // namespace detail
}  // namespace ccwl
