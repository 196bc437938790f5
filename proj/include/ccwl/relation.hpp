#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "ccwl/util.hpp"

namespace ccwl {

// Binary relation on an n-point set, stored as n bitset rows. pairs() gives
// the sparse view; both views are derived from the same bits so they always
// agree, and the unit suite pins that down anyway.
class binary_relation {
 public:
  binary_relation() = default;
  explicit binary_relation(int n)
      : n_(n), words_per_row_((static_cast<std::size_t>(n) + 63) / 64),
        bits_(static_cast<std::size_t>(n) * words_per_row_, 0) {}

  int n() const { return n_; }

  bool test(int a, int b) const {
    return (row(a)[static_cast<std::size_t>(b) >> 6] >> (b & 63)) & 1u;
  }
  void set(int a, int b, bool value = true) {
    std::uint64_t& w = row(a)[static_cast<std::size_t>(b) >> 6];
    std::uint64_t m = std::uint64_t{1} << (b & 63);
    if (value)
      w |= m;
    else
      w &= ~m;
  }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c;
  }

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (test(a, b)) out.emplace_back(a, b);
    return out;
  }

  binary_relation transposed() const {
    binary_relation t(n_);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (test(a, b)) t.set(b, a);
    return t;
  }

  bool is_symmetric() const {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (test(a, b) != test(b, a)) return false;
    return true;
  }

  binary_relation& operator&=(const binary_relation& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
  }
  binary_relation& operator|=(const binary_relation& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
  }
  friend binary_relation operator&(binary_relation a, const binary_relation& b) { return a &= b; }
  friend binary_relation operator|(binary_relation a, const binary_relation& b) { return a |= b; }
  friend bool operator==(const binary_relation&, const binary_relation&) = default;

  const std::uint64_t* row(int a) const { return bits_.data() + static_cast<std::size_t>(a) * words_per_row_; }
  std::uint64_t* row(int a) { return bits_.data() + static_cast<std::size_t>(a) * words_per_row_; }
  std::size_t words_per_row() const { return words_per_row_; }

  template <typename F>
  void for_each_in_row(int a, F&& f) const {
    const std::uint64_t* r = row(a);
    for (std::size_t w = 0; w < words_per_row_; ++w) {
      std::uint64_t bitsw = r[w];
      while (bitsw) {
        int b = static_cast<int>((w << 6) + static_cast<std::size_t>(std::countr_zero(bitsw)));
        f(b);
        bitsw &= bitsw - 1;
      }
    }
  }

 private:
  int n_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

// r . s = { (a,b) : exists g with (a,g) in r and (g,b) in s }
inline binary_relation dot_product(const binary_relation& r, const binary_relation& s) {
  if (r.n() != s.n()) throw domain_error("dot_product: point counts differ");
  binary_relation out(r.n());
  for (int a = 0; a < r.n(); ++a) {
    std::uint64_t* orow = out.row(a);
    r.for_each_in_row(a, [&](int g) {
      const std::uint64_t* srow = s.row(g);
      for (std::size_t w = 0; w < out.words_per_row(); ++w) orow[w] |= srow[w];
    });
  }
  return out;
}

struct point_partition {
  std::vector<int> support;              // sorted points covered
  std::vector<std::int32_t> class_of;    // per point; -1 outside support
  std::vector<std::vector<int>> classes; // ordered by smallest member
};

// Reflexive-symmetric-transitive closure of r, taken over the points incident
// to r. Returned as the partition of the support into closure classes.
inline point_partition equivalence_closure_partition(const binary_relation& r) {
  int n = r.n();
  detail::disjoint_set ds(static_cast<std::size_t>(n));
  std::vector<char> in_support(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a)
    r.for_each_in_row(a, [&](int b) {
      in_support[static_cast<std::size_t>(a)] = 1;
      in_support[static_cast<std::size_t>(b)] = 1;
      ds.unite(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    });
  point_partition out;
  out.class_of.assign(static_cast<std::size_t>(n), -1);
  std::vector<std::int32_t> root_class(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    if (!in_support[static_cast<std::size_t>(a)]) continue;
    out.support.push_back(a);
    std::uint32_t root = ds.find(static_cast<std::uint32_t>(a));
    if (root_class[root] < 0) {
      root_class[root] = static_cast<std::int32_t>(out.classes.size());
      out.classes.emplace_back();
    }
    out.class_of[static_cast<std::size_t>(a)] = root_class[root];
    out.classes[static_cast<std::size_t>(root_class[root])].push_back(a);
  }
  return out;
}

// Equivalence closure reassembled as a relation: all pairs inside a class,
// diagonal included on the support.
inline binary_relation transitive_closure(const binary_relation& r) {
  point_partition p = equivalence_closure_partition(r);
  binary_relation out(r.n());
  for (const auto& cls : p.classes)
    for (int a : cls)
      for (int b : cls) out.set(a, b);
  return out;
}

}  // namespace ccwl
