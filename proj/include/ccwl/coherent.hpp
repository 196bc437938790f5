#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ccwl/graph.hpp"
#include "ccwl/refine.hpp"
#include "ccwl/relation.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

struct intersection_tensor {
  std::uint32_t rank = 0;
  // (r, s, t) -> c_{r,s}^t, nonzero entries only
  std::map<std::array<std::uint32_t, 3>, std::uint64_t> entries;

  std::uint64_t at(std::uint32_t r, std::uint32_t s, std::uint32_t t) const {
    auto it = entries.find({r, s, t});
    return it == entries.end() ? 0 : it->second;
  }
  friend bool operator==(const intersection_tensor&, const intersection_tensor&) = default;
};

// Partition of the point pairs Omega x Omega into colors 0..rank-1.
// Cells with the same color behave identically under composition once the
// partition is coherent. Construction keeps ids canonical whenever the
// partition came out of the closure (canonical_names true), meaning two
// closures of relabeled or algebraically equal inputs carry identical ids.
class coherent_configuration {
 public:
  coherent_configuration() = default;
  coherent_configuration(int n, std::vector<std::uint32_t> color_matrix, std::uint32_t rank)
      : n_(n), rank_(rank), color_(std::move(color_matrix)) {
    if (color_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
      throw domain_error("coherent_configuration: color matrix size mismatch");
    for (std::uint32_t c : color_)
      if (c >= rank_) throw domain_error("coherent_configuration: color id out of range");
    finalize();
  }

  int n() const { return n_; }
  std::uint32_t rank() const { return rank_; }
  std::uint32_t color(int x, int y) const { return color_[static_cast<std::size_t>(x) * n_ + y]; }
  const std::vector<std::uint32_t>& color_matrix() const { return color_; }

  // transpose color of t, or UINT32_MAX when the partition violates C2
  std::uint32_t transpose_of(std::uint32_t t) const { return transpose_map_[t]; }
  const std::vector<std::uint32_t>& transpose_map() const { return transpose_map_; }
  const std::vector<std::uint32_t>& reflexive_colors() const { return reflexive_colors_; }
  bool diagonal_clean() const { return diagonal_clean_; }

  // fiber id of each point (index of its diagonal color within reflexive_colors)
  const std::vector<std::uint32_t>& fiber_of() const { return fiber_of_; }

  const std::vector<std::uint64_t>& frequencies() const { return freq_; }

  bool canonical_names = false;
  std::vector<refine_trace_entry> trace;
  std::map<std::string, std::vector<std::uint32_t>> tags;  // name -> sorted color ids

  binary_relation relation_of(const std::vector<std::uint32_t>& colors) const {
    binary_relation r(n_);
    std::vector<char> member(rank_, 0);
    for (std::uint32_t c : colors) {
      if (c >= rank_) throw domain_error("relation_of: color id out of range");
      member[c] = 1;
    }
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        if (member[color(x, y)]) r.set(x, y);
    return r;
  }

  friend bool operator==(const coherent_configuration& a, const coherent_configuration& b) {
    return a.n_ == b.n_ && a.rank_ == b.rank_ && a.color_ == b.color_;
  }

  const intersection_tensor& tensor() const {
    std::call_once(memo_->once, [this] { memo_->tensor = compute_tensor(); });
    return memo_->tensor;
  }

 private:
  void finalize() {
    transpose_map_.assign(rank_, UINT32_MAX);
    std::vector<char> on_diag(rank_, 0), off_diag(rank_, 0);
    bool transpose_ok = true;
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y) {
        std::uint32_t t = color(x, y);
        (x == y ? on_diag : off_diag)[t] = 1;
        std::uint32_t& tt = transpose_map_[t];
        std::uint32_t other = color(y, x);
        if (tt == UINT32_MAX)
          tt = other;
        else if (tt != other)
          transpose_ok = false;
      }
    diagonal_clean_ = true;
    for (std::uint32_t t = 0; t < rank_; ++t) {
      if (on_diag[t] && off_diag[t]) diagonal_clean_ = false;
      if (on_diag[t] && !off_diag[t]) reflexive_colors_.push_back(t);
    }
    if (!transpose_ok) transpose_map_.assign(rank_, UINT32_MAX);

    fiber_of_.assign(static_cast<std::size_t>(n_), 0);
    std::map<std::uint32_t, std::uint32_t> fiber_id;
    for (std::size_t i = 0; i < reflexive_colors_.size(); ++i)
      fiber_id[reflexive_colors_[i]] = static_cast<std::uint32_t>(i);
    for (int x = 0; x < n_; ++x) {
      auto it = fiber_id.find(color(x, x));
      fiber_of_[static_cast<std::size_t>(x)] = it == fiber_id.end() ? UINT32_MAX : it->second;
    }

    freq_.assign(rank_, 0);
    for (std::uint32_t c : color_) ++freq_[c];
    memo_ = std::make_shared<tensor_memo>();
  }

  intersection_tensor compute_tensor() const {
    intersection_tensor out;
    out.rank = rank_;
    // up to two representative cells per color
    std::vector<std::array<std::int64_t, 2>> reps(rank_, {-1, -1});
    for (std::size_t cell = 0; cell < color_.size(); ++cell) {
      auto& r = reps[color_[cell]];
      if (r[0] < 0)
        r[0] = static_cast<std::int64_t>(cell);
      else if (r[1] < 0)
        r[1] = static_cast<std::int64_t>(cell);
    }
    for (std::uint32_t t = 0; t < rank_; ++t) {
      auto row_counts = [&](std::int64_t cell) {
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;
        int x = static_cast<int>(cell / n_), y = static_cast<int>(cell % n_);
        for (int g = 0; g < n_; ++g) ++counts[{color(x, g), color(g, y)}];
        return counts;
      };
      auto counts = row_counts(reps[t][0]);
      if (reps[t][1] >= 0 && row_counts(reps[t][1]) != counts)
        throw domain_error("intersection_numbers: representative mismatch (input not coherent)");
      for (const auto& [rs, c] : counts) out.entries[{rs.first, rs.second, t}] = c;
    }
    return out;
  }

  struct tensor_memo {
    std::once_flag once;
    intersection_tensor tensor;
  };

  int n_ = 0;
  std::uint32_t rank_ = 0;
  std::vector<std::uint32_t> color_;
  std::vector<std::uint32_t> transpose_map_;
  std::vector<std::uint32_t> reflexive_colors_;
  std::vector<std::uint32_t> fiber_of_;
  std::vector<std::uint64_t> freq_;
  bool diagonal_clean_ = false;
  std::shared_ptr<tensor_memo> memo_;
};

inline const intersection_tensor& intersection_numbers(const coherent_configuration& cc) {
  return cc.tensor();
}

// ---------------------------------------------------------------------------
// coherent closure

// Smallest coherent partition of Omega^2 containing every named input
// relation as a union of classes. Initial colors come from the signature
// (x == y, r1(x,y), r1(y,x), r2(x,y), ...) sorted lexicographically; rounds
// refine with composition multisets under canonical renaming.
inline coherent_configuration coherent_closure(int n,
                                               const std::vector<std::pair<std::string, binary_relation>>& inputs) {
  if (n < 1) throw domain_error("coherent_closure: empty point set");
  for (const auto& [name, rel] : inputs)
    if (rel.n() != n) throw domain_error("coherent_closure: relation '" + name + "' has wrong point count");

  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<std::vector<std::uint64_t>> sigs(cells);
  const std::size_t words = (1 + 2 * inputs.size() + 63) / 64;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::vector<std::uint64_t> bits(words, 0);
      std::size_t b = 0;
      auto push = [&](bool v) {
        if (v) bits[b >> 6] |= std::uint64_t{1} << (63 - (b & 63));
        ++b;
      };
      push(x == y);
      for (const auto& [name, rel] : inputs) {
        push(rel.test(x, y));
        push(rel.test(y, x));
      }
      sigs[static_cast<std::size_t>(x) * n + y] = std::move(bits);
    }
  auto [initial, rank0] = detail::canonical_ids(sigs);

  // fold the distinct signature contents into the round-0 digest so traces
  // of semantically different initial colorings never compare equal
  detail::sig_hash content;
  {
    std::map<std::vector<std::uint64_t>, std::uint64_t> counts;
    for (const auto& s : sigs) ++counts[s];
    for (const auto& [sig, count] : counts) {
      for (std::uint64_t w : sig) content.add(w);
      content.add(count);
      content.add(0x5e15e15e15e15e15ULL);
    }
  }

  detail::refine_result res = detail::refine_to_coherence(n, std::move(initial), rank0);
  res.trace[0].digest_lo = detail::mix64(res.trace[0].digest_lo ^ content.lo);
  res.trace[0].digest_hi = detail::mix64(res.trace[0].digest_hi + content.hi);

  coherent_configuration cc(n, std::move(res.color), res.rank);
  cc.canonical_names = true;
  cc.trace = std::move(res.trace);
  for (const auto& [name, rel] : inputs) {
    std::vector<char> inside(cc.rank(), 0), outside(cc.rank(), 0);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) (rel.test(x, y) ? inside : outside)[cc.color(x, y)] = 1;
    std::vector<std::uint32_t> cover;
    for (std::uint32_t t = 0; t < cc.rank(); ++t) {
      if (inside[t] && outside[t])
        throw internal_error("coherent_closure: input relation not a union of colors");
      if (inside[t]) cover.push_back(t);
    }
    cc.tags[name] = std::move(cover);
  }
  return cc;
}

inline coherent_configuration coherent_closure(const graph& g) {
  return coherent_closure(g.n(), {{"E", g.edge_relation()}});
}

// ---------------------------------------------------------------------------
// axiom verification

struct axiom_report {
  bool coherent = true;
  std::vector<std::string> violations;

  void flag(std::string v) {
    coherent = false;
    if (violations.size() < 16) violations.push_back(std::move(v));
  }
};

// C1: the diagonal is a union of whole classes. C2: transposition permutes
// the classes involutively. C3: composition counts are constant per class,
// checked exactly by recomputing every cell's count profile in one
// refinement round and splitting on any difference.
inline axiom_report verify_axioms(const coherent_configuration& cc) {
  axiom_report report;
  if (!cc.diagonal_clean()) report.flag("C1: some color meets both diagonal and off-diagonal cells");
  bool c2_ok = true;
  for (std::uint32_t t = 0; t < cc.rank(); ++t)
    if (cc.transpose_of(t) == UINT32_MAX) c2_ok = false;
  if (!c2_ok) {
    report.flag("C2: transposition does not induce a map on colors");
  } else {
    for (std::uint32_t t = 0; t < cc.rank(); ++t)
      if (cc.transpose_of(cc.transpose_of(t)) != t) {
        report.flag("C2: transpose map is not an involution at color " + std::to_string(t));
        break;
      }
  }

  std::vector<std::uint32_t> copy = cc.color_matrix();
  std::pair<std::size_t, std::size_t> witness{0, 0};
  std::uint32_t new_rank = detail::pair_refine_round(cc.n(), copy, cc.rank(), nullptr, &witness);
  if (new_rank != cc.rank()) {
    std::size_t a = witness.first, b = witness.second;
    int n = cc.n();
    auto profile = [&](std::size_t cell) {
      std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;
      int x = static_cast<int>(cell / n), y = static_cast<int>(cell % n);
      for (int g = 0; g < n; ++g) ++counts[{cc.color(x, g), cc.color(g, y)}];
      return counts;
    };
    auto pa = profile(a), pb = profile(b);
    std::string detail_msg;
    for (const auto& [rs, c] : pa) {
      auto it = pb.find(rs);
      std::uint64_t other = it == pb.end() ? 0 : it->second;
      if (other != c) {
        detail_msg = " (r=" + std::to_string(rs.first) + ", s=" + std::to_string(rs.second) +
                     ": counts " + std::to_string(c) + " vs " + std::to_string(other) + ")";
        break;
      }
    }
    if (detail_msg.empty())
      for (const auto& [rs, c] : pb)
        if (!pa.count(rs)) {
          detail_msg = " (r=" + std::to_string(rs.first) + ", s=" + std::to_string(rs.second) +
                       ": counts 0 vs " + std::to_string(c) + ")";
          break;
        }
    report.flag("C3: color " + std::to_string(cc.color_matrix()[a] /* == color at b */) +
                " has non-constant composition counts" + detail_msg);
  }
  return report;
}

// ---------------------------------------------------------------------------
// parabolics

// Equivalence closure of a union of colors; the result must again be a union
// of colors (it always is for coherent inputs; violations throw).
inline point_partition equivalence_closure(const coherent_configuration& cc,
                                           const std::vector<std::uint32_t>& colors) {
  binary_relation rel = cc.relation_of(colors);
  point_partition part = equivalence_closure_partition(rel);
  binary_relation closed(cc.n());
  for (const auto& cls : part.classes)
    for (int a : cls)
      for (int b : cls) closed.set(a, b);
  std::vector<char> inside(cc.rank(), 0), outside(cc.rank(), 0);
  for (int x = 0; x < cc.n(); ++x)
    for (int y = 0; y < cc.n(); ++y) (closed.test(x, y) ? inside : outside)[cc.color(x, y)] = 1;
  for (std::uint32_t t = 0; t < cc.rank(); ++t)
    if (inside[t] && outside[t])
      throw domain_error("equivalence_closure: closure is not a union of colors (input not coherent)");
  return part;
}

inline bool is_partial_parabolic(const coherent_configuration& cc, const point_partition& e) {
  binary_relation rel(cc.n());
  for (const auto& cls : e.classes)
    for (int a : cls)
      for (int b : cls) rel.set(a, b);
  std::vector<char> inside(cc.rank(), 0), outside(cc.rank(), 0);
  for (int x = 0; x < cc.n(); ++x)
    for (int y = 0; y < cc.n(); ++y) (rel.test(x, y) ? inside : outside)[cc.color(x, y)] = 1;
  for (std::uint32_t t = 0; t < cc.rank(); ++t)
    if (inside[t] && outside[t]) return false;
  return true;
}

inline bool is_parabolic(const coherent_configuration& cc, const point_partition& e) {
  if (static_cast<int>(e.support.size()) != cc.n()) return false;
  return is_partial_parabolic(cc, e);
}

// Splits a partial parabolic into its indecomposable parts: classes are
// linked when one color inside the parabolic meets both class squares, and
// parts are the connected components of that linking.
inline std::vector<point_partition> indecomposable_components(const coherent_configuration& cc,
                                                              const point_partition& e) {
  if (!is_partial_parabolic(cc, e)) throw domain_error("indecomposable_components: not a partial parabolic");
  const std::size_t k = e.classes.size();
  detail::disjoint_set ds(k);
  std::vector<std::int32_t> touched(cc.rank(), -1);
  for (int x = 0; x < cc.n(); ++x) {
    std::int32_t cx = e.class_of[static_cast<std::size_t>(x)];
    if (cx < 0) continue;
    for (int y = 0; y < cc.n(); ++y) {
      if (e.class_of[static_cast<std::size_t>(y)] != cx) continue;  // colors inside e live in class squares
      std::uint32_t t = cc.color(x, y);
      if (touched[t] < 0)
        touched[t] = cx;
      else if (touched[t] != cx)
        ds.unite(static_cast<std::uint32_t>(touched[t]), static_cast<std::uint32_t>(cx));
    }
  }
  std::map<std::uint32_t, std::size_t> comp_index;
  std::vector<point_partition> out;
  for (std::size_t c = 0; c < k; ++c) {
    std::uint32_t root = ds.find(static_cast<std::uint32_t>(c));
    auto [it, inserted] = comp_index.emplace(root, out.size());
    if (inserted) out.emplace_back();
    point_partition& part = out[it->second];
    part.classes.push_back(e.classes[c]);
  }
  for (point_partition& part : out) {
    part.class_of.assign(static_cast<std::size_t>(cc.n()), -1);
    for (std::size_t ci = 0; ci < part.classes.size(); ++ci)
      for (int a : part.classes[ci]) {
        part.class_of[static_cast<std::size_t>(a)] = static_cast<std::int32_t>(ci);
        part.support.push_back(a);
      }
    std::sort(part.support.begin(), part.support.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// restriction and quotient

inline bool is_homogeneity_set(const coherent_configuration& cc, const std::vector<int>& delta) {
  std::vector<char> in(static_cast<std::size_t>(cc.n()), 0);
  for (int p : delta) {
    if (p < 0 || p >= cc.n()) return false;
    in[static_cast<std::size_t>(p)] = 1;
  }
  // delta must be a union of fibers
  for (int x = 0; x < cc.n(); ++x)
    for (int y = 0; y < cc.n(); ++y)
      if (cc.fiber_of()[static_cast<std::size_t>(x)] == cc.fiber_of()[static_cast<std::size_t>(y)] &&
          in[static_cast<std::size_t>(x)] != in[static_cast<std::size_t>(y)])
        return false;
  return !delta.empty();
}

inline coherent_configuration restriction(const coherent_configuration& cc, const std::vector<int>& delta) {
  if (!is_homogeneity_set(cc, delta)) throw domain_error("restriction: not a homogeneity set");
  std::vector<int> pts = delta;
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
    throw domain_error("restriction: duplicate point in subset");
  int m = static_cast<int>(pts.size());
  std::vector<std::uint32_t> sub(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub[static_cast<std::size_t>(i) * m + j] = cc.color(pts[i], pts[j]);
  auto [renumbered, rank] = detail::canonical_ids(sub);
  return coherent_configuration(m, std::move(renumbered), rank);
}

// Quotient modulo a partial parabolic whose support is a homogeneity set:
// points are the classes, and each color s induces the relation
// { (A, B) : s meets A x B }; distinct colors may induce the same relation.
inline coherent_configuration quotient(const coherent_configuration& cc, const point_partition& e) {
  if (!is_partial_parabolic(cc, e)) throw domain_error("quotient: not a partial parabolic");
  if (!is_homogeneity_set(cc, e.support)) throw domain_error("quotient: support is not a homogeneity set");
  const std::size_t k = e.classes.size();
  // colors meeting the support induce quotient relations
  std::map<std::uint32_t, std::vector<char>> induced;  // color -> k*k incidence
  for (int x : e.support)
    for (int y : e.support) {
      std::uint32_t t = cc.color(x, y);
      auto [it, fresh] = induced.emplace(t, std::vector<char>());
      if (fresh) it->second.assign(k * k, 0);
      std::size_t a = static_cast<std::size_t>(e.class_of[static_cast<std::size_t>(x)]);
      std::size_t b = static_cast<std::size_t>(e.class_of[static_cast<std::size_t>(y)]);
      it->second[a * k + b] = 1;
    }
  // deduplicate identical induced relations, keep smallest color id order
  std::map<std::vector<char>, std::uint32_t> distinct;
  for (const auto& [t, rel] : induced)
    if (!distinct.count(rel)) distinct.emplace(rel, t);
  std::vector<std::pair<std::uint32_t, const std::vector<char>*>> ordered;
  for (const auto& [rel, t] : distinct) ordered.emplace_back(t, &rel);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::uint32_t> qcolor(k * k, UINT32_MAX);
  for (std::size_t id = 0; id < ordered.size(); ++id) {
    const std::vector<char>& rel = *ordered[id].second;
    for (std::size_t cell = 0; cell < k * k; ++cell)
      if (rel[cell]) {
        if (qcolor[cell] != UINT32_MAX)
          throw domain_error("quotient: induced relations do not partition the quotient set");
        qcolor[cell] = static_cast<std::uint32_t>(id);
      }
  }
  for (std::uint32_t c : qcolor)
    if (c == UINT32_MAX) throw internal_error("quotient: uncovered quotient cell");
  coherent_configuration q(static_cast<int>(k), std::move(qcolor), static_cast<std::uint32_t>(ordered.size()));
  axiom_report rep = verify_axioms(q);
  if (!rep.coherent) throw domain_error("quotient: result is not coherent: " + rep.violations.front());
  return q;
}

// ---------------------------------------------------------------------------
// tensor product and partition order

inline coherent_configuration tensor_product(const std::vector<coherent_configuration>& parts) {
  if (parts.empty()) throw domain_error("tensor_product: empty list");
  std::vector<int> dims;
  std::uint64_t rank = 1;
  for (const auto& cc : parts) {
    dims.push_back(cc.n());
    rank *= cc.rank();
    if (rank > 20000000ULL) throw domain_error("tensor_product: rank too large");
  }
  detail::mixed_radix codec(dims);
  if (codec.total > 4096) throw domain_error("tensor_product: point set too large");
  int n = static_cast<int>(codec.total);
  std::vector<std::uint32_t> color(static_cast<std::size_t>(n) * n);
  std::vector<int> xs, ys;
  for (int x = 0; x < n; ++x) {
    codec.decode(static_cast<std::uint64_t>(x), xs);
    for (int y = 0; y < n; ++y) {
      codec.decode(static_cast<std::uint64_t>(y), ys);
      std::uint64_t id = 0;
      for (std::size_t i = 0; i < parts.size(); ++i)
        id = id * parts[i].rank() + parts[i].color(xs[i], ys[i]);
      color[static_cast<std::size_t>(x) * n + y] = static_cast<std::uint32_t>(id);
    }
  }
  return coherent_configuration(n, std::move(color), static_cast<std::uint32_t>(rank));
}

// cc1 <= cc2: every color class of cc1 is a union of color classes of cc2.
inline bool partition_leq(const coherent_configuration& cc1, const coherent_configuration& cc2) {
  if (cc1.n() != cc2.n()) throw domain_error("partition_leq: point counts differ");
  std::vector<std::uint32_t> image(cc2.rank(), UINT32_MAX);
  const auto& a = cc1.color_matrix();
  const auto& b = cc2.color_matrix();
  for (std::size_t cell = 0; cell < a.size(); ++cell) {
    std::uint32_t& slot = image[b[cell]];
    if (slot == UINT32_MAX)
      slot = a[cell];
    else if (slot != a[cell])
      return false;
  }
  return true;
}

inline bool partitions_equal(const coherent_configuration& cc1, const coherent_configuration& cc2) {
  return cc1.rank() == cc2.rank() && partition_leq(cc1, cc2);
}

// ---------------------------------------------------------------------------
// algebraic isomorphism

struct algebraic_iso_witness {
  std::vector<std::uint32_t> color_map;  // cc1 color -> cc2 color
  bool verified = false;
};

namespace detail {

inline bool tensors_match_under(const intersection_tensor& t1, const intersection_tensor& t2,
                                const std::vector<std::uint32_t>& map) {
  if (t1.entries.size() != t2.entries.size()) return false;
  for (const auto& [key, value] : t1.entries)
    if (t2.at(map[key[0]], map[key[1]], map[key[2]]) != value) return false;
  return true;
}

struct alg_iso_searcher {
  const coherent_configuration& a;
  const coherent_configuration& b;
  const std::vector<std::string>& tag_names;
  std::vector<std::uint32_t> map;        // a color -> b color or UINT32_MAX
  std::vector<char> used;
  const intersection_tensor* ta;
  const intersection_tensor* tb;

  bool tags_compatible(std::uint32_t r, std::uint32_t s) const {
    for (const std::string& name : tag_names) {
      auto ia = a.tags.find(name);
      auto ib = b.tags.find(name);
      bool in_a = ia != a.tags.end() && std::binary_search(ia->second.begin(), ia->second.end(), r);
      bool in_b = ib != b.tags.end() && std::binary_search(ib->second.begin(), ib->second.end(), s);
      if (in_a != in_b) return false;
    }
    return true;
  }

  bool candidate_ok(std::uint32_t r, std::uint32_t s) const {
    if (a.frequencies()[r] != b.frequencies()[s]) return false;
    bool ra = std::binary_search(a.reflexive_colors().begin(), a.reflexive_colors().end(), r);
    bool rb = std::binary_search(b.reflexive_colors().begin(), b.reflexive_colors().end(), s);
    if (ra != rb) return false;
    if (!tags_compatible(r, s)) return false;
    // transpose compatibility with already assigned colors
    std::uint32_t rt = a.transpose_of(r);
    if (rt != UINT32_MAX && map[rt] != UINT32_MAX && map[rt] != b.transpose_of(s)) return false;
    // tensor consistency over fully mapped triples
    for (const auto& [key, value] : ta->entries) {
      auto mapped = [&](std::uint32_t c) { return c == r ? s : map[c]; };
      if ((key[0] == r || map[key[0]] != UINT32_MAX) && (key[1] == r || map[key[1]] != UINT32_MAX) &&
          (key[2] == r || map[key[2]] != UINT32_MAX)) {
        if (tb->at(mapped(key[0]), mapped(key[1]), mapped(key[2])) != value) return false;
      }
    }
    return true;
  }

  bool search(std::uint32_t depth) {
    if (depth == a.rank()) return tensors_match_under(*ta, *tb, map);
    for (std::uint32_t s = 0; s < b.rank(); ++s) {
      if (used[s]) continue;
      if (!candidate_ok(depth, s)) continue;
      map[depth] = s;
      used[s] = 1;
      if (search(depth + 1)) return true;
      used[s] = 0;
      map[depth] = UINT32_MAX;
    }
    return false;
  }
};

}  // namespace detail

// Decides whether a color bijection preserving the intersection tensor,
// transposition, reflexive colors and the named tagged relations exists.
// Closure-built inputs carry canonical names, so there the identity map is
// the only candidate; other inputs fall back to a capped backtracking search.
inline std::optional<algebraic_iso_witness> algebraically_isomorphic(
    const coherent_configuration& cc1, const coherent_configuration& cc2,
    const std::vector<std::string>& tag_names = {}) {
  if (cc1.rank() != cc2.rank() || cc1.n() != cc2.n()) return std::nullopt;

  auto identity_works = [&] {
    if (cc1.reflexive_colors() != cc2.reflexive_colors()) return false;
    if (cc1.transpose_map() != cc2.transpose_map()) return false;
    if (cc1.frequencies() != cc2.frequencies()) return false;
    for (const std::string& name : tag_names) {
      auto i1 = cc1.tags.find(name);
      auto i2 = cc2.tags.find(name);
      if ((i1 == cc1.tags.end()) != (i2 == cc2.tags.end())) return false;
      if (i1 != cc1.tags.end() && i1->second != i2->second) return false;
    }
    return intersection_numbers(cc1) == intersection_numbers(cc2);
  };

  if (identity_works()) {
    algebraic_iso_witness w;
    w.color_map.resize(cc1.rank());
    for (std::uint32_t t = 0; t < cc1.rank(); ++t) w.color_map[t] = t;
    w.verified = detail::tensors_match_under(intersection_numbers(cc1), intersection_numbers(cc2), w.color_map);
    return w;
  }
  if (cc1.canonical_names && cc2.canonical_names) return std::nullopt;

  if (cc1.rank() > 40)
    throw domain_error("algebraically_isomorphic: rank cap 40 exceeded for backtracking search");
  detail::alg_iso_searcher searcher{cc1, cc2, tag_names,
                                    std::vector<std::uint32_t>(cc1.rank(), UINT32_MAX),
                                    std::vector<char>(cc2.rank(), 0),
                                    &intersection_numbers(cc1), &intersection_numbers(cc2)};
  if (!searcher.search(0)) return std::nullopt;
  algebraic_iso_witness w;
  w.color_map = searcher.map;
  w.verified = detail::tensors_match_under(*searcher.ta, *searcher.tb, w.color_map);
  if (!w.verified) throw internal_error("algebraically_isomorphic: witness failed re-verification");
  return w;
}

// The colors whose union is exactly `rel`, or nullopt when `rel` is not a
// union of whole color classes.
inline std::optional<std::vector<std::uint32_t>> colors_covering(const coherent_configuration& cc,
                                                                 const binary_relation& rel) {
  if (rel.n() != cc.n()) throw domain_error("colors_covering: point counts differ");
  std::vector<char> inside(cc.rank(), 0), outside(cc.rank(), 0);
  for (int x = 0; x < cc.n(); ++x)
    for (int y = 0; y < cc.n(); ++y) (rel.test(x, y) ? inside : outside)[cc.color(x, y)] = 1;
  std::vector<std::uint32_t> cover;
  for (std::uint32_t t = 0; t < cc.rank(); ++t) {
    if (inside[t] && outside[t]) return std::nullopt;
    if (inside[t]) cover.push_back(t);
  }
  return cover;
}

// Canonical byte form of the algebraic data; equal strings mean the identity
// map on canonical ids is an algebraic isomorphism (tags included).
inline std::string canonical_signature(const coherent_configuration& cc) {
  std::ostringstream out;
  out << "n=" << cc.n() << ";rank=" << cc.rank() << ";refl=";
  for (std::uint32_t t : cc.reflexive_colors()) out << t << ",";
  out << ";transpose=";
  for (std::uint32_t t : cc.transpose_map()) out << t << ",";
  out << ";freq=";
  for (std::uint64_t f : cc.frequencies()) out << f << ",";
  out << ";tensor=";
  for (const auto& [key, value] : intersection_numbers(cc).entries)
    out << key[0] << ":" << key[1] << ":" << key[2] << ":" << value << ",";
  out << ";tags=";
  for (const auto& [name, colors] : cc.tags) {
    out << name << "=";
    for (std::uint32_t t : colors) out << t << ",";
    out << ";";
  }
  return out.str();
}

}  // namespace ccwl
