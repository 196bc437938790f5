#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace ccwl;
using namespace ccwl::testing;

namespace {

binary_relation identity_relation(int n) {
  binary_relation r(n);
  for (int x = 0; x < n; ++x) r.set(x, x);
  return r;
}

}  // namespace

TEST_CASE("cylinders have product counts and slot semantics", "[cylinder]") {
  graph g = named_graph("cycle:5");
  const int n = g.n();
  binary_relation e = g.edge_relation();

  binary_relation c12 = cylinder(n, e, 1, 2);
  CHECK(c12.n() == n * n);
  CHECK(c12.count() == e.count() * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n));
  // membership depends only on (first of u, second of v)
  for (int u1 = 0; u1 < n; ++u1)
    for (int v2 = 0; v2 < n; ++v2)
      CHECK(c12.test(u1 * n + 3, 2 * n + v2) == e.test(u1, v2));

  binary_relation c11 = cylinder(n, identity_relation(n), 1, 1);
  CHECK(c11.count() == static_cast<std::uint64_t>(n) * n * n);
  CHECK(c11.is_symmetric());
  CHECK(c11.test(1 * n + 2, 1 * n + 4));
  CHECK_FALSE(c11.test(1 * n + 2, 2 * n + 1));

  binary_relation c21 = cylinder(n, e, 2, 1);
  for (int u2 = 0; u2 < n; ++u2)
    for (int v1 = 0; v1 < n; ++v1)
      CHECK(c21.test(0 * n + u2, v1 * n + 0) == e.test(u2, v1));

  CHECK_THROWS_AS(cylinder(n, e, 0, 1), domain_error);
  CHECK_THROWS_AS(cylinder(n, e, 1, 3), domain_error);
  CHECK_THROWS_AS(cylinder(4, e, 1, 1), domain_error);
}

TEST_CASE("checked cylinders insist on unions of colors", "[cylinder]") {
  coherent_configuration cc = coherent_closure(named_graph("cycle:5"));
  binary_relation edges = cc.relation_of(cc.tags.at("E"));
  CHECK_NOTHROW(cylinder(cc, edges, 1, 2));
  CHECK(cylinder(cc, cc.tags.at("E"), 1, 2) == cylinder(cc.n(), edges, 1, 2));

  binary_relation lone(cc.n());
  lone.set(0, 1);
  CHECK_THROWS_AS(cylinder(cc, lone, 1, 2), domain_error);
}

TEST_CASE("the pair-point extension is coherent and marks the diagonal", "[extension]") {
  for (const char* spec : {"cycle:5", "path:3", "complete:4"}) {
    INFO(spec);
    coherent_configuration cc = coherent_closure(named_graph(spec));
    two_extension_result ext = two_extension(cc);
    const int n = cc.n();
    CHECK(ext.extended.n() == n * n);
    CHECK(verify_axioms(ext.extended).coherent);
    REQUIRE(static_cast<int>(ext.diagonal_points.size()) == n);
    for (int x = 0; x < n; ++x) CHECK(ext.diagonal_points[static_cast<std::size_t>(x)] == x * n + x);

    // the flagged diagonal is a union of extension colors
    binary_relation delta(n * n);
    for (int p : ext.diagonal_points) delta.set(p, p);
    CHECK(colors_covering(ext.extended, delta).has_value());

    // so is every tensor-square color: both coordinates constrained at once
    for (std::uint32_t r = 0; r < cc.rank(); ++r)
      for (std::uint32_t s = 0; s < cc.rank(); ++s) {
        binary_relation cell = cylinder(n, cc.relation_of({r}), 1, 1);
        cell &= cylinder(n, cc.relation_of({s}), 2, 2);
        CHECK(colors_covering(ext.extended, cell).has_value());
      }
  }
}

TEST_CASE("the extension is a union of stable quadruple classes", "[extension]") {
  for (const char* spec : {"cycle:5", "path:3", "complete:4", "random:5,3"}) {
    INFO(spec);
    coherent_configuration cc = coherent_closure(named_graph(spec));
    two_extension_result ext = two_extension(cc);
    ktuple_coloring four = k_wl(cc, 4);
    // pair-point cell ((u1,u2),(v1,v2)) and tuple (u1,u2,v1,v2) share an index
    CHECK(detail::partition_leq_vec(ext.extended.color_matrix(), four.color));
  }
}

TEST_CASE("the diagonal restriction never loses colors", "[extension]") {
  for (const char* spec : {"cycle:5", "cycle:6", "path:4", "complete:4", "random:6,5"}) {
    INFO(spec);
    coherent_configuration cc = coherent_closure(named_graph(spec));
    coherent_configuration tc = two_closure(cc);
    CHECK(tc.n() == cc.n());
    CHECK(partition_leq(cc, tc));
    CHECK(verify_axioms(tc).coherent);
    REQUIRE(tc.tags.count("E"));
    CHECK(tc.relation_of(tc.tags.at("E")) == cc.relation_of(cc.tags.at("E")));
  }
}

TEST_CASE("graphs whose pair orbits match their closure are two-closed", "[extension]") {
  for (const char* spec : {"cycle:5", "cycle:6", "path:3", "path:4", "complete:4"}) {
    INFO(spec);
    coherent_configuration cc = coherent_closure(named_graph(spec));
    CHECK(is_two_closed(cc));
    CHECK(partitions_equal(two_closure(cc), cc));
  }
}

TEST_CASE("the sixteen-vertex pair separates under the extension", "[extension][slow]") {
  coherent_configuration h = coherent_closure(named_graph("hamming:2,4"));
  CHECK(is_two_closed(h));
  coherent_configuration s = coherent_closure(named_graph("shrikhande"));
  coherent_configuration ts = two_closure(s);
  CHECK(ts.rank() > s.rank());
  CHECK_FALSE(is_two_closed(s));
}

TEST_CASE("extension point caps refuse oversized requests", "[extension]") {
  coherent_configuration cc = coherent_closure(named_graph("cycle:5"));
  CHECK_THROWS_AS(two_extension(cc, 4), budget_error);
  CHECK_NOTHROW(two_extension(cc, 5));
  CHECK_THROWS_AS(two_closure(cc, 4), budget_error);
  CHECK_THROWS_AS(is_two_closed(cc, 4), budget_error);
  CHECK_THROWS_AS(two_extension(coherent_closure(named_graph("random:25,1"))), budget_error);
}

TEST_CASE("two-point base extends to the four-point scheme", "[extension]") {
  coherent_configuration k2 = coherent_closure(named_graph("complete:2"));
  two_extension_result ext = two_extension(k2);
  CHECK(ext.extended.n() == 4);
  CHECK(verify_axioms(ext.extended).coherent);
  CHECK(ext.diagonal_points == std::vector<int>{0, 3});
  CHECK(is_homogeneity_set(ext.extended, ext.diagonal_points));
  CHECK(is_two_closed(k2));
}
