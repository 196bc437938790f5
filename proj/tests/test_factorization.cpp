#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace ccwl;
using namespace ccwl::testing;

namespace {

// independent restatement: same source vertex, and the common neighborhood
// of the two far endpoints is exactly the singleton {x}
binary_relation tau_by_sets(const graph& g) {
  auto edges = g.ordered_edges();
  binary_relation out(static_cast<int>(edges.size()));
  for (std::size_t a = 0; a < edges.size(); ++a)
    for (std::size_t b = 0; b < edges.size(); ++b) {
      auto [x, y] = edges[a];
      auto [x2, y2] = edges[b];
      if (x != x2) continue;
      std::set<int> common;
      for (int z = 0; z < g.n(); ++z)
        if (g.adjacent(y, z) && g.adjacent(y2, z)) common.insert(z);
      if (common == std::set<int>{x}) out.set(static_cast<int>(a), static_cast<int>(b));
    }
  return out;
}

std::vector<std::size_t> sorted_class_sizes(const point_partition& classes) {
  std::vector<std::size_t> sizes;
  for (const auto& cls : classes.classes) sizes.push_back(cls.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// greedy matching is sound here because isomorphism is transitive
bool same_up_to_isomorphism(const std::vector<graph>& a, const std::vector<graph>& b) {
  if (a.size() != b.size()) return false;
  std::vector<char> taken(b.size(), 0);
  for (const graph& f : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (taken[j] || b[j].n() != f.n()) continue;
      if (graph_isomorphic(f, b[j])) {
        taken[j] = 1;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("distance-additivity pairs on small graphs", "[theta]") {
  CHECK(theta_relation(named_graph("cycle:5")).pairs.count() == 60);
  CHECK(theta_relation(named_graph("cycle:6")).pairs.count() == 48);
  CHECK(theta_relation(named_graph("path:3")).pairs.count() == 8);

  for (const char* spec : {"cycle:5", "cycle:6", "path:4", "hypercube:3", "random_connected:7,7"}) {
    INFO(spec);
    graph g = named_graph(spec);
    edge_pairing theta = theta_relation(g);
    CHECK(theta.pairs.is_symmetric());
    auto index = [&](int u, int v) {
      auto it = std::lower_bound(theta.edges.begin(), theta.edges.end(), std::pair{u, v});
      return static_cast<int>(it - theta.edges.begin());
    };
    for (std::size_t a = 0; a < theta.edges.size(); ++a) {
      auto [x, y] = theta.edges[a];
      // reflexive on edges, relates the two orientations, and closed under
      // reversing both members
      CHECK(theta.pairs.test(static_cast<int>(a), static_cast<int>(a)));
      CHECK(theta.pairs.test(static_cast<int>(a), index(y, x)));
      for (std::size_t b = 0; b < theta.edges.size(); ++b) {
        auto [x2, y2] = theta.edges[b];
        CHECK(theta.pairs.test(static_cast<int>(a), static_cast<int>(b)) ==
              theta.pairs.test(index(y, x), index(y2, x2)));
      }
    }
  }
  CHECK_THROWS_AS(theta_relation(graph(3)), domain_error);
}

TEST_CASE("unique-common-neighbor pairs match the set-based definition", "[tau]") {
  for (const auto& [name, g] : small_corpus()) {
    if (g.n() > 9 || !is_connected(g)) continue;
    INFO(name);
    edge_pairing tau = tau_relation(g);
    CHECK(tau.pairs == tau_by_sets(g));
  }
  CHECK(tau_relation(named_graph("cycle:5")).pairs.count() == 10);
  CHECK(tau_relation(named_graph("cycle:6")).pairs.count() == 12);
  CHECK(tau_relation(named_graph("path:3")).pairs.count() == 4);
  CHECK(tau_relation(star_graph(3)).pairs.count() == 9);
  CHECK(tau_relation(named_graph("cycle:4")).pairs.count() == 0);

  try {
    tau_relation(graph(2));
  } catch (const domain_error& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("must be connected"));
  }
}

TEST_CASE("edge classes of products and primes", "[classes]") {
  CHECK(product_relation(named_graph("cycle:5")).classes.classes.size() == 1);
  CHECK(product_relation(named_graph("cycle:6")).classes.classes.size() == 1);
  CHECK(product_relation(named_graph("path:3")).classes.classes.size() == 1);
  CHECK(product_relation(star_graph(3)).classes.classes.size() == 1);

  auto c4 = product_relation(named_graph("cycle:4"));
  CHECK(sorted_class_sizes(c4.classes) == std::vector<std::size_t>{2, 2});

  auto q3 = product_relation(named_graph("hypercube:3"));
  CHECK(sorted_class_sizes(q3.classes) == std::vector<std::size_t>{4, 4, 4});

  graph k3k5 = cartesian_product({named_graph("complete:3"), named_graph("complete:5")}).product;
  auto pr = product_relation(k3k5);
  CHECK(sorted_class_sizes(pr.classes) == std::vector<std::size_t>{15, 30});
}

TEST_CASE("factor recovery on known products", "[factorize]") {
  graph h = named_graph("hamming:2,4");
  factorization_report rep = prime_factorize(h);
  CHECK(rep.num_factors == 2);
  CHECK(rep.certified);
  REQUIRE(rep.factors.size() == 2);
  for (const graph& f : rep.factors) CHECK(graph_isomorphic(f, named_graph("complete:4")));
  CHECK(rep.unordered_edges.size() == h.edge_count());
  for (int cls : rep.edge_class) CHECK((cls == 0 || cls == 1));
  // coordinates separate vertices and respect layer adjacency
  std::set<std::vector<int>> seen;
  for (const auto& coords : rep.coordinates) {
    REQUIRE(coords.size() == 2);
    seen.insert(coords);
  }
  CHECK(seen.size() == static_cast<std::size_t>(h.n()));

  graph q3 = named_graph("hypercube:3");
  factorization_report q = prime_factorize(q3);
  CHECK(q.num_factors == 3);
  for (const graph& f : q.factors) CHECK(f.n() == 2);
  CHECK(q.certified);
}

TEST_CASE("prime graphs come back whole", "[factorize]") {
  for (const char* spec : {"cycle:5", "cycle:6", "path:4", "complete:4", "shrikhande", "random:9,2"}) {
    INFO(spec);
    graph g = named_graph(spec);
    factorization_report rep = prime_factorize(g);
    CHECK(rep.num_factors == 1);
    CHECK(rep.certified);
    REQUIRE(rep.factors.size() == 1);
    CHECK(graph_isomorphic(rep.factors[0], g, 16));
  }
}

TEST_CASE("products of random graphs round-trip through factorization", "[factorize]") {
  detail::bit_source bits(4141);
  int trials = 0;
  for (std::uint64_t seed = 1; trials < 12; ++seed) {
    std::vector<graph> parts;
    std::size_t want = 2 + (trials % 2);
    for (std::size_t i = 0; i < want; ++i) {
      int n = 2 + static_cast<int>(bits.next_below(4));
      graph cand = random_connected_graph(n, seed * 100 + i);
      if (prime_factorize(cand).num_factors != 1) {
        parts.clear();
        break;
      }
      parts.push_back(cand);
    }
    if (parts.size() != want) continue;
    ++trials;
    INFO("trial " << trials);

    cartesian_product_result built = cartesian_product(parts);
    // scramble the labels so the factorization cannot read coordinates back
    auto [shuffled, perm] = permuted_copy(built.product, bits);
    factorization_report rep = prime_factorize(shuffled);
    CHECK(rep.num_factors == static_cast<int>(parts.size()));
    CHECK(rep.certified);
    CHECK(same_up_to_isomorphism(rep.factors, parts));
  }
}

TEST_CASE("factorization is invariant under relabeling", "[factorize]") {
  detail::bit_source bits(4343);
  graph base = cartesian_product({named_graph("complete:3"), named_graph("path:4")}).product;
  factorization_report ref = prime_factorize(base);
  REQUIRE(ref.num_factors == 2);
  for (int trial = 0; trial < 5; ++trial) {
    auto [g, perm] = permuted_copy(base, bits);
    factorization_report rep = prime_factorize(g);
    CHECK(rep.num_factors == 2);
    CHECK(rep.certified);
    std::multiset<int> orders;
    for (const graph& f : rep.factors) orders.insert(f.n());
    CHECK(orders == std::multiset<int>{3, 4});
  }
}

TEST_CASE("factorization refuses improper inputs", "[factorize]") {
  graph disconnected(4);
  disconnected.add_edge(0, 1);
  disconnected.add_edge(2, 3);
  CHECK_THROWS_AS(prime_factorize(disconnected), domain_error);
  try {
    prime_factorize(disconnected);
  } catch (const domain_error& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("graph must be connected"));
  }
  CHECK_THROWS_AS(prime_factorize(graph(1)), domain_error);
  CHECK_THROWS_AS(prime_factorize(graph(0)), domain_error);
}

TEST_CASE("single-count colors pick out the unique-wedge relation", "[sprime]") {
  coherent_configuration c5 = coherent_closure(named_graph("cycle:5"));
  binary_relation sp = s_prime_relation(c5);
  // in the pentagon the unique-midpoint pairs are exactly the distance-2 pairs
  distance_matrix d = bfs_distances(named_graph("cycle:5"));
  CHECK(sp == distance_relation(d, 2));

  // in the 16-vertex strongly regular graphs every wedge count is 0, 2 or 6
  CHECK(s_prime_relation(coherent_closure(named_graph("hamming:2,4"))).count() == 0);
  CHECK(s_prime_relation(coherent_closure(named_graph("shrikhande"))).count() == 0);

  coherent_configuration bare(2, {0, 1, 1, 0}, 2);
  CHECK_THROWS_AS(s_prime_colors(bare), domain_error);
}

TEST_CASE("distance profiles assemble the additivity relation", "[profiles]") {
  for (const char* spec : {"cycle:5", "cycle:6", "path:4"}) {
    INFO(spec);
    graph g = named_graph(spec);
    const int n = g.n();
    int diam = bfs_distances(g).diameter();

    edge_pairing theta = theta_relation(g);
    binary_relation theta_points = theta.as_point_relation(n);

    binary_relation edge_points = cylinder(n, g.edge_relation(), 1, 2);
    edge_points &= cylinder(n, g.edge_relation(), 2, 1);
    // note: an ordered edge pair ((x,y),(x',y')) is the pair point
    // ((x,y),(x',y')) with (x,y') spanning slot (1,2) and (y,x') slot (2,1)
    binary_relation assembled(n * n);
    for (int a = 0; a <= diam; ++a)
      for (int b = 0; b <= diam; ++b)
        for (int c = 0; c <= diam; ++c)
          for (int dd = 0; dd <= diam; ++dd)
            if (a + b != c + dd) assembled |= distance_profile_relation(g, a, b, c, dd);

    binary_relation edges_both(n * n);
    for (auto [x, y] : g.ordered_edges())
      for (auto [x2, y2] : g.ordered_edges()) edges_both.set(x * n + y, x2 * n + y2);
    assembled &= edges_both;
    CHECK(assembled == theta_points);
  }
}

TEST_CASE("wedge cylinders assemble the unique-common-neighbor relation", "[profiles]") {
  for (const char* spec : {"cycle:5", "cycle:6", "path:3"}) {
    INFO(spec);
    graph g = named_graph(spec);
    const int n = g.n();
    coherent_configuration cc = coherent_closure(g);

    binary_relation identity(n);
    for (int x = 0; x < n; ++x) identity.set(x, x);
    binary_relation tau_points = cylinder(n, identity, 1, 1);
    tau_points &= cylinder(n, s_prime_relation(cc), 2, 2);
    binary_relation edges_both(n * n);
    for (auto [x, y] : g.ordered_edges())
      for (auto [x2, y2] : g.ordered_edges()) edges_both.set(x * n + y, x2 * n + y2);
    tau_points &= edges_both;

    CHECK(tau_points == tau_relation(g).as_point_relation(n));
  }
}

TEST_CASE("complete-graph products are recoverable from wedge counts", "[wedges]") {
  graph g = cartesian_product({named_graph("complete:3"), named_graph("complete:5")}).product;
  // an edge inside the triangle layer has 1 common neighbor, inside the
  // 5-clique layer 3; the counts split the edge set by factor
  binary_relation ones = edges_with_common_neighbors(g, 1);
  binary_relation threes = edges_with_common_neighbors(g, 3);
  CHECK(ones.count() + threes.count() == 2 * g.edge_count());
  CHECK(ones.count() == 2 * 15);
  CHECK(threes.count() == 2 * 30);

  factorization_report rep = prime_factorize(g);
  for (std::size_t e = 0; e < rep.unordered_edges.size(); ++e) {
    auto [u, v] = rep.unordered_edges[e];
    bool in_triangle_class = ones.test(u, v);
    // all edges of one class share a wedge count
    for (std::size_t f = 0; f < rep.unordered_edges.size(); ++f)
      if (rep.edge_class[e] == rep.edge_class[f]) {
        auto [u2, v2] = rep.unordered_edges[f];
        CHECK(ones.test(u2, v2) == in_triangle_class);
      }
  }
}
