#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace ccwl;
using namespace ccwl::testing;

TEST_CASE("grouping graphs by interchangeable closures", "[classing]") {
  equivalence_classing triple =
      wl_equivalence_classes({named_graph("complete:3"), named_graph("complete:3"), named_graph("cycle:5")});
  REQUIRE(triple.classes.size() == 2);
  CHECK(triple.classes[0] == std::vector<int>{0, 1});
  CHECK(triple.classes[1] == std::vector<int>{2});
  CHECK(triple.closures.size() == 3);
  CHECK(triple.closures[2].rank() == 3);

  // non-isomorphic graphs with interchangeable closures land together
  equivalence_classing srg = wl_equivalence_classes(
      {named_graph("shrikhande"), named_graph("hamming:2,4"), named_graph("complete:2")});
  REQUIRE(srg.classes.size() == 2);
  CHECK(srg.classes[0] == std::vector<int>{0, 1});
  CHECK(srg.classes[1] == std::vector<int>{2});

  equivalence_classing lone = wl_equivalence_classes({named_graph("path:4")});
  CHECK(lone.classes == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("decomposition report on a two-clique product", "[decomposition]") {
  product_decomposition_report rep =
      product_decomposition_check({named_graph("complete:3"), named_graph("complete:5")});
  CHECK(rep.num_factors == 2);
  CHECK(rep.factor_orders == std::vector<int>{3, 5});
  CHECK(rep.product_order == 15);
  CHECK(rep.classes == std::vector<std::vector<int>>{{0}, {1}});
  REQUIRE(rep.hypothesis_2closed.has_value());
  CHECK(rep.hypothesis_2closed.value());
  CHECK(rep.tensor_decomposition_holds);
  REQUIRE(rep.class_inclusions.size() == 2);
  for (const auto& inc : rep.class_inclusions) {
    CHECK(inc.holds);
    CHECK_FALSE(inc.strict);
  }
}

TEST_CASE("decomposition report with a repeated factor", "[decomposition]") {
  product_decomposition_report rep = product_decomposition_check(
      {named_graph("complete:3"), named_graph("complete:3"), named_graph("complete:2")});
  CHECK(rep.product_order == 18);
  CHECK(rep.classes == std::vector<std::vector<int>>{{0, 1}, {2}});
  REQUIRE(rep.hypothesis_2closed.has_value());
  CHECK(rep.hypothesis_2closed.value());
  CHECK(rep.tensor_decomposition_holds);
  REQUIRE(rep.class_inclusions.size() == 2);
  for (const auto& inc : rep.class_inclusions) {
    CHECK(inc.holds);
    CHECK_FALSE(inc.strict);
  }
}

TEST_CASE("decomposition report skips the pair check above the cap", "[decomposition]") {
  product_decomposition_report rep = product_decomposition_check(
      {named_graph("complete:3"), named_graph("complete:3"), named_graph("cycle:5")});
  CHECK(rep.product_order == 45);
  CHECK_FALSE(rep.hypothesis_2closed.has_value());
  CHECK(rep.tensor_decomposition_holds);
  REQUIRE(rep.class_inclusions.size() == 2);
  for (const auto& inc : rep.class_inclusions) {
    CHECK(inc.holds);
    CHECK_FALSE(inc.strict);
  }

  // a raised cap turns the pair check back on
  product_decomposition_report small =
      product_decomposition_check({named_graph("complete:2"), named_graph("cycle:5")}, 10);
  REQUIRE(small.hypothesis_2closed.has_value());
  CHECK(small.hypothesis_2closed.value());
  product_decomposition_report skipped =
      product_decomposition_check({named_graph("complete:2"), named_graph("cycle:5")}, 9);
  CHECK_FALSE(skipped.hypothesis_2closed.has_value());
}

TEST_CASE("decomposition input validation", "[decomposition]") {
  CHECK_THROWS_AS(product_decomposition_check({}), domain_error);

  try {
    product_decomposition_check({named_graph("cycle:4")});
    FAIL("expected a rejection");
  } catch (const domain_error& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("factor 0 is not prime"));
  }
  CHECK_THROWS_AS(product_decomposition_check({named_graph("complete:3"), named_graph("hamming:2,4")}),
                  domain_error);

  graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_THROWS_AS(product_decomposition_check({split}), domain_error);
}

TEST_CASE("closure of a power sits below its symmetrized exponent", "[bounds]") {
  CHECK(exponentiation_bounds_closure({named_graph("complete:3"), named_graph("complete:3")}));
  CHECK(exponentiation_bounds_closure({named_graph("cycle:6"), named_graph("cycle:6")}));
  CHECK(exponentiation_bounds_closure(
      {named_graph("complete:2"), named_graph("complete:2"), named_graph("complete:2")}));
  CHECK(exponentiation_bounds_closure({named_graph("path:4"), named_graph("path:4")}));

  CHECK_THROWS_AS(exponentiation_bounds_closure({named_graph("complete:3"), named_graph("cycle:5")}),
                  domain_error);
  graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_THROWS_AS(exponentiation_bounds_closure({split, split}), domain_error);
}

TEST_CASE("equality probes on clique and edge powers", "[probe]") {
  exponentiation_probe_result quad =
      exponentiation_equality_probe({named_graph("complete:4"), named_graph("complete:4")});
  CHECK(quad.holds);
  CHECK(quad.equal);
  CHECK_FALSE(quad.strict);

  exponentiation_probe_result square =
      exponentiation_equality_probe({named_graph("complete:2"), named_graph("complete:2")});
  CHECK(square.holds);
  CHECK(square.equal);

  exponentiation_probe_result rook =
      exponentiation_equality_probe({named_graph("complete:3"), named_graph("complete:3")});
  CHECK(rook.holds);
  CHECK(rook.equal);
  CHECK_FALSE(rook.strict);
}
