#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace ccwl;
using namespace ccwl::testing;

TEST_CASE("graph stores undirected edges and rejects bad ones", "[graph]") {
  graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 1);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 0));
  CHECK(g.adjacent(1, 2));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.degree(1) == 2);
  CHECK(g.edge_count() == 2);
  CHECK(g.neighbors(1) == std::vector<int>{0, 2});
  CHECK_THROWS_AS(g.add_edge(1, 1), domain_error);
  CHECK_THROWS_AS(g.add_edge(0, 4), domain_error);
  CHECK_THROWS_AS(g.add_edge(-1, 0), domain_error);
  CHECK_THROWS_AS(graph(-2), domain_error);

  g.add_edge(0, 1);  // duplicates collapse
  CHECK(g.edge_count() == 2);
}

TEST_CASE("edge enumerations agree with adjacency", "[graph]") {
  graph g = named_graph("random:9,4");
  auto unordered = g.unordered_edges();
  CHECK(unordered.size() == g.edge_count());
  for (auto [u, v] : unordered) {
    CHECK(u < v);
    CHECK(g.adjacent(u, v));
  }
  auto ordered = g.ordered_edges();
  CHECK(ordered.size() == 2 * g.edge_count());
  binary_relation e = g.edge_relation();
  CHECK(e.count() == ordered.size());
  CHECK(e.is_symmetric());
  for (auto [u, v] : ordered) CHECK(e.test(u, v));
}

TEST_CASE("breadth-first distances match the reference all-pairs algorithm", "[graph]") {
  for (const auto& [name, g] : small_corpus()) {
    INFO(name);
    distance_matrix d = bfs_distances(g);
    auto want = floyd_warshall(g);
    for (int u = 0; u < g.n(); ++u)
      for (int v = 0; v < g.n(); ++v) CHECK(d(u, v) == want[u][v]);
  }
  CHECK(bfs_distances(named_graph("cycle:6")).diameter() == 3);
  CHECK(bfs_distances(named_graph("path:5")).diameter() == 4);
}

TEST_CASE("disconnected graphs are detected and have unreachable pairs", "[graph]") {
  graph g(5);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  CHECK_FALSE(is_connected(g));
  distance_matrix d = bfs_distances(g);
  CHECK(d(0, 2) == unreachable);
  CHECK(d(0, 4) == unreachable);
  CHECK(d.diameter() == unreachable);
  CHECK(is_connected(named_graph("path:2")));
  CHECK_FALSE(is_connected(graph(0)));

  std::vector<int> comp = components_of_edges(5, g.unordered_edges());
  CHECK(comp == std::vector<int>{0, 0, 1, 1, 2});
}

TEST_CASE("common neighbor counts match brute force", "[graph]") {
  for (const auto& [name, g] : small_corpus()) {
    INFO(name);
    for (int u = 0; u < g.n(); ++u)
      for (int v = 0; v < g.n(); ++v)
        CHECK(g.common_neighbor_count(u, v) == brute_common_neighbors(g, u, v));
  }
}

TEST_CASE("graph6 decodes known strings", "[graph6]") {
  graph k2 = parse_graph6("A_");
  CHECK(k2.n() == 2);
  CHECK(k2.adjacent(0, 1));

  graph k3 = parse_graph6("Bw");
  CHECK(k3.n() == 3);
  CHECK(k3.edge_count() == 3);

  graph k4 = parse_graph6("C~");
  CHECK(k4 == named_graph("complete:4"));

  graph c4 = parse_graph6("Cl");
  CHECK(c4.n() == 4);
  CHECK(c4.edge_count() == 4);
  for (int v = 0; v < 4; ++v) CHECK(c4.degree(v) == 2);

  graph star = parse_graph6("D?{");
  CHECK(star.n() == 5);
  CHECK(star.edge_count() == 4);
  CHECK(star.degree(4) == 4);
  for (int v = 0; v < 4; ++v) CHECK(star.degree(v) == 1);

  CHECK(parse_graph6(">>graph6<<A_\n") == k2);
  CHECK(parse_graph6("A_\r\n") == k2);
  CHECK(parse_graph6("A?").n() == 2);
  CHECK(parse_graph6("A?").edge_count() == 0);
}

TEST_CASE("graph6 round-trips", "[graph6]") {
  CHECK(serialize_graph6(named_graph("complete:4")) == "C~");
  for (const auto& [name, g] : small_corpus()) {
    INFO(name);
    CHECK(parse_graph6(serialize_graph6(g)) == g);
  }
  graph big = named_graph("random:63,7");  // needs the multi-byte length form
  std::string enc = serialize_graph6(big);
  CHECK(enc[0] == '~');
  CHECK(parse_graph6(enc) == big);
}

TEST_CASE("graph6 rejects malformed input", "[graph6]") {
  CHECK_THROWS_AS(parse_graph6(""), parse_error);
  CHECK_THROWS_AS(parse_graph6("\n"), parse_error);
  CHECK_THROWS_AS(parse_graph6("C"), parse_error);       // truncated bits
  CHECK_THROWS_AS(parse_graph6("C~~"), parse_error);     // trailing garbage
  CHECK_THROWS_AS(parse_graph6("A "), parse_error);      // byte below 63
  CHECK_THROWS_AS(parse_graph6("BF"), parse_error);      // nonzero padding
  CHECK_THROWS_AS(parse_graph6("~??"), parse_error);     // truncated length
  CHECK_THROWS_AS(parse_graph6("~???"), parse_error);    // non-canonical length
  try {
    parse_graph6("C~~");
  } catch (const parse_error& e) {
    CHECK(e.offset == 2);
  }
}

TEST_CASE("edge list format parses and reports line numbers", "[edgelist]") {
  graph g = parse_edge_list("# a triangle plus a tail\nn 4\n0 1\n1 2\n\n2 0\n2 3\n");
  CHECK(g.n() == 4);
  CHECK(g.edge_count() == 4);
  CHECK(g.adjacent(2, 3));

  CHECK(parse_edge_list("n 2\n0 1\n1 0\n").edge_count() == 1);
  CHECK(parse_edge_list("n 3").edge_count() == 0);

  CHECK_THROWS_AS(parse_edge_list(""), parse_error);
  CHECK_THROWS_AS(parse_edge_list("# only a comment\n"), parse_error);
  CHECK_THROWS_AS(parse_edge_list("m 3\n0 1\n"), parse_error);       // bad keyword
  CHECK_THROWS_AS(parse_edge_list("n 3 2\n0 1\n"), parse_error);     // extra header number
  CHECK_THROWS_AS(parse_edge_list("n 3\n0 3\n"), parse_error);       // vertex out of range
  CHECK_THROWS_AS(parse_edge_list("n 3\n1 1\n"), parse_error);       // loop
  CHECK_THROWS_AS(parse_edge_list("n 3\n0 1 2\n"), parse_error);     // malformed edge line
  CHECK_THROWS_AS(parse_edge_list("n 99999999999\n"), parse_error);  // number too large
  try {
    parse_edge_list("n 4\n0 1\n4 2\n");
    FAIL();
  } catch (const parse_error& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("vertex out of range at line 3"));
  }
}

TEST_CASE("named graph builders produce the advertised graphs", "[named]") {
  CHECK(named_graph("complete:5").edge_count() == 10);
  CHECK(named_graph("cycle:7").edge_count() == 7);
  CHECK(named_graph("path:6").edge_count() == 5);

  graph q3 = named_graph("hypercube:3");
  CHECK(q3.n() == 8);
  CHECK(q3.edge_count() == 12);
  CHECK(graph_isomorphic(q3, named_graph("hamming:3,2")));

  graph h = named_graph("hamming:2,4");
  graph s = named_graph("shrikhande");
  for (const graph* g : {&h, &s}) {
    CHECK(g->n() == 16);
    CHECK(g->edge_count() == 48);
    for (int v = 0; v < 16; ++v) CHECK(g->degree(v) == 6);
    for (int u = 0; u < 16; ++u)
      for (int v = u + 1; v < 16; ++v) CHECK(g->common_neighbor_count(u, v) == 2);
  }

  // same degree/common-neighbor profile, but only one of the two has a 4-clique
  auto has_k4 = [](const graph& g) {
    for (auto [a, b] : g.unordered_edges())
      for (int c = 0; c < g.n(); ++c) {
        if (!g.adjacent(a, c) || !g.adjacent(b, c)) continue;
        for (int d = c + 1; d < g.n(); ++d)
          if (g.adjacent(a, d) && g.adjacent(b, d) && g.adjacent(c, d)) return true;
      }
    return false;
  };
  CHECK(has_k4(h));
  CHECK_FALSE(has_k4(s));

  CHECK_THROWS_AS(named_graph("petersen"), domain_error);
  CHECK_THROWS_AS(named_graph("cycle:2"), domain_error);
  CHECK_THROWS_AS(named_graph("cycle"), domain_error);
  CHECK_THROWS_AS(named_graph("complete:4,4"), domain_error);
}

TEST_CASE("seeded random graphs are reproducible and connected", "[named]") {
  graph a = named_graph("random:10,42");
  graph b = named_graph("random:10,42");
  graph c = named_graph("random:10,43");
  CHECK(a == b);
  CHECK(a == named_graph("random_connected:10,42"));
  CHECK_FALSE(a == c);
  CHECK(is_connected(a));
  CHECK(is_connected(c));
}

TEST_CASE("relabeling a graph preserves structure", "[graph]") {
  detail::bit_source bits(911);
  for (const auto& [name, g] : small_corpus()) {
    INFO(name);
    auto [h, perm] = permuted_copy(g, bits);
    CHECK(h.n() == g.n());
    CHECK(h.edge_count() == g.edge_count());
    for (int u = 0; u < g.n(); ++u)
      for (int v = 0; v < g.n(); ++v)
        CHECK(g.adjacent(u, v) ==
              h.adjacent(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]));
  }
  CHECK_THROWS_AS(permute_graph(graph(3), {0, 1}), domain_error);
}

TEST_CASE("isomorphism search accepts relabelings and rejects different graphs", "[iso]") {
  detail::bit_source bits(912);
  graph g = named_graph("random:7,3");
  auto [h, perm] = permuted_copy(g, bits);
  CHECK(graph_isomorphic(g, h));
  CHECK_FALSE(graph_isomorphic(named_graph("path:4"), named_graph("cycle:4")));
  CHECK_FALSE(graph_isomorphic(named_graph("complete:4"), named_graph("cycle:4")));
  // same degree sequence, not isomorphic: two triangles vs a hexagon
  graph twotri(6);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}})
    twotri.add_edge(u, v);
  CHECK_FALSE(graph_isomorphic(twotri, named_graph("cycle:6")));
  CHECK_THROWS_AS(graph_isomorphic(named_graph("random:14,1"), named_graph("random:14,1")),
                  domain_error);
}
