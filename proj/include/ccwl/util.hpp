#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ccwl {

// Raised when an input is outside an operation's domain (disconnected graph,
// malformed relation, cap exceeded with no override, ...).
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a requested computation exceeds a size budget.
struct budget_error : domain_error {
  using domain_error::domain_error;
};

// Raised by the text-format parsers; carries the byte offset of the defect.
struct parse_error : std::runtime_error {
  std::size_t offset;
  parse_error(const std::string& what, std::size_t off)
      : std::runtime_error(what + " (byte " + std::to_string(off) + ")"), offset(off) {}
};

// Raised when an internal certification fails; indicates a bug, not bad input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 128-bit streaming hash with a fixed, platform-independent definition.
// Used only to group equal signatures; grouping is re-verified exactly.
struct sig_hash {
  std::uint64_t lo = 0x243f6a8885a308d3ULL;
  std::uint64_t hi = 0x13198a2e03707344ULL;
  void add(std::uint64_t v) {
    lo = mix64(lo ^ v);
    hi = mix64(hi + (v * 0x9e3779b97f4a7c15ULL));
  }
  friend bool operator==(const sig_hash&, const sig_hash&) = default;
};

struct disjoint_set {
  std::vector<std::uint32_t> parent;
  explicit disjoint_set(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent[a] = b;
    return true;
  }
};

// Row-major mixed-radix codec; the leftmost digit is most significant.
struct mixed_radix {
  std::vector<int> dims;
  std::vector<std::uint64_t> weight;
  std::uint64_t total = 1;

  explicit mixed_radix(std::vector<int> d) : dims(std::move(d)), weight(dims.size()) {
    for (std::size_t i = dims.size(); i-- > 0;) {
      weight[i] = total;
      total *= static_cast<std::uint64_t>(dims[i]);
    }
  }
  std::uint64_t index(const std::vector<int>& digits) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) idx += weight[i] * static_cast<std::uint64_t>(digits[i]);
    return idx;
  }
  void decode(std::uint64_t idx, std::vector<int>& out) const {
    out.resize(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
      out[i] = static_cast<int>(idx / weight[i]);
      idx %= weight[i];
    }
  }
};

inline int default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(hw > 8 ? 8 : hw);
}

inline int& thread_count() {
  static int count = default_threads();
  return count;
}

// Splits [0, n) into contiguous chunks, one worker per chunk. Workers write
// disjoint state, so the result is independent of the thread count.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
  int threads = thread_count();
  if (threads <= 1 || n < 4096) {
    body(std::size_t{0}, n);
    return;
  }
  std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

// True iff every class of `coarse` is a union of classes of `fine`, for two
// colorings of the same index set.
inline bool partition_leq_vec(const std::vector<std::uint32_t>& coarse,
                              const std::vector<std::uint32_t>& fine) {
  if (coarse.size() != fine.size())
    throw domain_error("partition_leq_vec: colorings index different sets");
  std::uint32_t fine_rank = 0;
  for (std::uint32_t c : fine) fine_rank = std::max(fine_rank, c + 1);
  std::vector<std::uint32_t> image(fine_rank, UINT32_MAX);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    std::uint32_t& slot = image[fine[i]];
    if (slot == UINT32_MAX)
      slot = coarse[i];
    else if (slot != coarse[i])
      return false;
  }
  return true;
}

inline bool partitions_equal_vec(const std::vector<std::uint32_t>& a,
                                 const std::vector<std::uint32_t>& b) {
  return partition_leq_vec(a, b) && partition_leq_vec(b, a);
}

// Deterministic bit source. mt19937_64 is fully specified by the standard,
// and only raw engine words are consumed (distribution adapters are not
// pinned by the standard), so seeded draws are identical on every platform.
struct bit_source {
  std::mt19937_64 engine;
  std::uint64_t buffer = 0;
  int left = 0;

  explicit bit_source(std::uint64_t seed) : engine(seed) {}

  bool next_bit() {
    if (left == 0) {
      buffer = engine();
      left = 64;
    }
    bool b = buffer & 1;
    buffer >>= 1;
    --left;
    return b;
  }
  // uniform on [0, bound) by rejection over the low bits
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t mask = ~std::uint64_t{0};
    std::uint64_t b = bound - 1;
    int bits = 0;
    while (b >> bits) ++bits;
    mask = (bits >= 64) ? mask : ((std::uint64_t{1} << bits) - 1);
    for (;;) {
      std::uint64_t v = engine() & mask;
      if (v < bound) return v;
    }
  }
};

inline std::vector<int> random_permutation(int n, bit_source& bits) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(bits.next_below(static_cast<std::uint64_t>(i) + 1))]);
  return perm;
}

}  // namespace detail
}  // namespace ccwl
