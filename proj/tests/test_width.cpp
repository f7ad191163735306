#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rwidth/errors.hpp"
#include "rwidth/width.hpp"
#include "test_util.hpp"

using rwidth::Graph;
using rwidth::VertexSet;

namespace {

// Treewidth oracle: the elimination game over every vertex ordering.
// Eliminating v connects its remaining neighbors; the width of an ordering
// is the largest neighborhood met, and tw is the minimum over orderings.
std::size_t treewidth_by_elimination(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::size_t best = n;
  do {
    std::vector<std::uint64_t> adj(n, 0);
    g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
      adj[u] |= std::uint64_t(1) << v;
      adj[v] |= std::uint64_t(1) << u;
    });
    std::uint64_t alive = (std::uint64_t(1) << n) - 1;
    std::size_t width = 0;
    for (std::uint32_t v : order) {
      const std::uint64_t nb = adj[v] & alive & ~(std::uint64_t(1) << v);
      width = std::max<std::size_t>(width, std::popcount(nb));
      // fill in: neighbors become a clique
      std::uint64_t bits = nb;
      while (bits) {
        const int u = std::countr_zero(bits);
        bits &= bits - 1;
        adj[u] |= nb & ~(std::uint64_t(1) << u);
      }
      alive &= ~(std::uint64_t(1) << v);
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

TEST_CASE("rank-width of fixed graphs") {
  CHECK(rwidth::rank_width(Graph(1)).width == 0);
  CHECK(!rwidth::rank_width(Graph(1)).decomposition.has_value());
  CHECK(rwidth::rank_width(Graph(0)).width == 0);
  CHECK(rwidth::rank_width(testutil::complete_graph(5)).width == 1);
  CHECK(rwidth::rank_width(testutil::path_graph(4)).width == 1);
  CHECK(rwidth::rank_width(testutil::cycle_graph(5)).width == 2);

  // disjoint union C5 + K3: max over components, cross cuts are rank 0
  Graph un(8);
  un.add_edge(0, 1);
  un.add_edge(1, 2);
  un.add_edge(2, 3);
  un.add_edge(3, 4);
  un.add_edge(0, 4);
  un.add_edge(5, 6);
  un.add_edge(6, 7);
  un.add_edge(5, 7);
  const auto res = rwidth::rank_width(un, true);
  CHECK(res.width == 2);
  REQUIRE(res.decomposition.has_value());
  CHECK(rwidth::width_of_decomposition(un, *res.decomposition) == 2);
}

TEST_CASE("brute-force oracle on fixed graphs") {
  CHECK(rwidth::brute_force_rank_width(testutil::complete_graph(3)) == 1);
  CHECK(rwidth::brute_force_rank_width(Graph(4)) == 0);
  CHECK(rwidth::brute_force_rank_width(testutil::cycle_graph(5)) == 2);
  CHECK_THROWS_AS(rwidth::brute_force_rank_width(Graph(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(rwidth::brute_force_rank_width(Graph(8)),
                  std::invalid_argument);
}

TEST_CASE("DP matches the brute-force oracle exhaustively at n=4,5") {
  for (std::size_t n = 4; n <= 5; ++n) {
    const std::size_t pair_bits = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pair_bits);
         ++mask) {
      const Graph g = testutil::graph_from_mask(n, mask);
      CAPTURE(n);
      CAPTURE(mask);
      REQUIRE(rwidth::rank_width(g).width == rwidth::brute_force_rank_width(g));
    }
  }
}

TEST_CASE("DP matches the brute-force oracle on random graphs at n=6,7") {
  rwidth::SplitMix64 gen(0xDECAF);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 6 + gen.next_below(2);
    const Graph g = testutil::random_graph(n, 0.2 + 0.6 * gen.next_unit(), gen);
    CHECK(rwidth::rank_width(g).width == rwidth::brute_force_rank_width(g));
  }
}

TEST_CASE("optimal decompositions validate to the DP width") {
  rwidth::SplitMix64 gen(0xF00D);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + gen.next_below(9);
    const Graph g = testutil::random_graph(n, 0.15 + 0.7 * gen.next_unit(), gen);
    const auto res = rwidth::rank_width(g, true);
    REQUIRE(res.decomposition.has_value());
    CHECK(rwidth::width_of_decomposition(g, *res.decomposition) == res.width);
  }
}

TEST_CASE("decomposition joining over many components") {
  // two isolated vertices, a triangle, and a pendant edge
  Graph g(7);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.add_edge(2, 4);
  g.add_edge(5, 6);
  const auto res = rwidth::rank_width(g, true);
  CHECK(res.width == 1);
  REQUIRE(res.decomposition.has_value());
  CHECK(rwidth::width_of_decomposition(g, *res.decomposition) == 1);
  CHECK(res.decomposition->leaf_of_vertex.size() == 7);

  // all-isolated graph: width 0, still a valid subcubic tree
  const auto iso = rwidth::rank_width(Graph(4), true);
  CHECK(iso.width == 0);
  CHECK(rwidth::width_of_decomposition(Graph(4), *iso.decomposition) == 0);
}

TEST_CASE("any valid decomposition is an upper bound for the minimum") {
  // evaluate graph A's optimal tree on graph B: still a decomposition of B,
  // so its width cannot undercut B's rank-width
  rwidth::SplitMix64 gen(0xAB1E);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + gen.next_below(8);
    const Graph a = testutil::random_graph(n, 0.5, gen);
    const Graph b = testutil::random_graph(n, 0.5, gen);
    const auto res = rwidth::rank_width(a, true);
    CHECK(rwidth::width_of_decomposition(b, *res.decomposition) >=
          rwidth::rank_width(b).width);
  }
}

TEST_CASE("width_of_decomposition on the two-vertex tree") {
  rwidth::RankDecomposition d;
  d.node_count = 2;
  d.edges = {{0, 1}};
  d.leaf_of_vertex = {0, 1};
  Graph k2(2);
  k2.add_edge(0, 1);
  CHECK(rwidth::width_of_decomposition(k2, d) == 1);
  CHECK(rwidth::width_of_decomposition(Graph(2), d) == 0);
}

TEST_CASE("invalid decompositions are rejected") {
  Graph g(3);
  g.add_edge(0, 1);
  rwidth::RankDecomposition d;
  // a path of three nodes has a degree-2 middle node
  d.node_count = 3;
  d.edges = {{0, 1}, {1, 2}};
  d.leaf_of_vertex = {0, 2, 1};
  CHECK_THROWS_AS(rwidth::width_of_decomposition(g, d), std::invalid_argument);

  // proper shape but a non-injective leaf map
  rwidth::RankDecomposition d2;
  d2.node_count = 4;
  d2.edges = {{3, 0}, {3, 1}, {3, 2}};
  d2.leaf_of_vertex = {0, 0, 1};
  CHECK_THROWS_AS(rwidth::width_of_decomposition(g, d2), std::invalid_argument);

  // mapping a vertex to an internal node
  rwidth::RankDecomposition d3;
  d3.node_count = 4;
  d3.edges = {{3, 0}, {3, 1}, {3, 2}};
  d3.leaf_of_vertex = {0, 1, 3};
  CHECK_THROWS_AS(rwidth::width_of_decomposition(g, d3), std::invalid_argument);
}

TEST_CASE("balanced separation") {
  SUBCASE("forced sizes at n=2") {
    Graph k2(2);
    k2.add_edge(0, 1);
    const auto res = rwidth::rank_width(k2, true);
    const auto sep = rwidth::balanced_separation(k2, *res.decomposition);
    CHECK(sep.v1.size() == 1);
    CHECK(sep.v2.size() == 1);
    CHECK(sep.rho <= res.width);
  }
  SUBCASE("sizes, disjointness, and the width bound on random graphs") {
    rwidth::SplitMix64 gen(0xBA1);
    for (int t = 0; t < 80; ++t) {
      const std::size_t n = 2 + gen.next_below(11);
      const Graph g =
          testutil::random_graph(n, 0.1 + 0.8 * gen.next_unit(), gen);
      const auto res = rwidth::rank_width(g, true);
      const auto sep = rwidth::balanced_separation(g, *res.decomposition);
      CHECK(sep.v1.size() == (n + 1) / 2);
      CHECK(sep.v2.size() == (n + 2) / 3);
      VertexSet inter;
      std::set_intersection(sep.v1.begin(), sep.v1.end(), sep.v2.begin(),
                            sep.v2.end(), std::back_inserter(inter));
      CHECK(inter.empty());
      CHECK(sep.rho <= rwidth::width_of_decomposition(g, *res.decomposition));
      CHECK(sep.rho <= res.width);
    }
  }
}

TEST_CASE("treewidth of fixed graphs") {
  CHECK(rwidth::tree_width(Graph(1)) == 0);
  CHECK(rwidth::tree_width(Graph(5)) == 0);
  CHECK(rwidth::tree_width(testutil::path_graph(6)) == 1);
  CHECK(rwidth::tree_width(testutil::star_graph(5)) == 1);
  for (std::size_t n = 2; n <= 8; ++n)
    CHECK(rwidth::tree_width(testutil::complete_graph(n)) == n - 1);
  CHECK(rwidth::tree_width(testutil::cycle_graph(6)) == 2);
  CHECK(treewidth_by_elimination(testutil::cycle_graph(6)) == 2);

  // 3x3 grid: treewidth 3
  Graph grid(9);
  for (std::uint32_t r = 0; r < 3; ++r)
    for (std::uint32_t col = 0; col < 3; ++col) {
      if (col + 1 < 3) grid.add_edge(3 * r + col, 3 * r + col + 1);
      if (r + 1 < 3) grid.add_edge(3 * r + col, 3 * (r + 1) + col);
    }
  CHECK(rwidth::tree_width(grid) == 3);

  // Petersen graph: treewidth 4
  Graph petersen(10);
  for (std::uint32_t v = 0; v < 5; ++v) {
    petersen.add_edge(v, (v + 1) % 5);          // outer cycle
    petersen.add_edge(5 + v, 5 + (v + 2) % 5);  // inner pentagram
    petersen.add_edge(v, 5 + v);                // spokes
  }
  CHECK(petersen.edge_count() == 15);
  CHECK(rwidth::tree_width(petersen) == 4);
}

TEST_CASE("treewidth DP matches the elimination oracle") {
  rwidth::SplitMix64 gen(0xCAB);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + gen.next_below(6);  // up to 7: 5040 orderings
    const Graph g = testutil::random_graph(n, 0.2 + 0.6 * gen.next_unit(), gen);
    CHECK(rwidth::tree_width(g) == treewidth_by_elimination(g));
  }
}

TEST_CASE("width_report") {
  const auto k5 = rwidth::width_report(testutil::complete_graph(5));
  CHECK(k5.rank_width == 1);
  CHECK(k5.tree_width == 4);
  CHECK(k5.cw_lower == 1);
  CHECK(k5.cw_upper == 3);

  const auto p4 = rwidth::width_report(testutil::path_graph(4));
  CHECK(p4.rank_width == 1);
  CHECK(p4.tree_width == 1);
  CHECK(p4.cw_lower == 1);
  CHECK(p4.cw_upper == 3);

  const auto single = rwidth::width_report(Graph(1));
  CHECK(single.rank_width == 0);
  CHECK(single.tree_width == 0);
  CHECK(single.cw_lower == 0);
  CHECK(single.cw_upper == 1);
  CHECK(!single.decomposition.has_value());
}

TEST_CASE("width inequalities on random graphs") {
  rwidth::SplitMix64 gen(0x1DEA);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + gen.next_below(12);
    const Graph g = testutil::random_graph(n, gen.next_unit(), gen);
    const std::size_t rw = rwidth::rank_width(g).width;
    CHECK(3 * rw <= n + 2);  // rw <= ceil(n/3)
    CHECK(rw <= rwidth::tree_width(g) + 1);
    const std::size_t rwc = rwidth::rank_width(rwidth::complement(g)).width;
    CHECK((rw > rwc ? rw - rwc : rwc - rw) <= 1);
  }
}

TEST_CASE("rank-width never grows on induced subgraphs (500 pairs)") {
  rwidth::SplitMix64 gen(0x5AB);
  int pairs = 0;
  while (pairs < 500) {
    const std::size_t n = 2 + gen.next_below(11);
    const Graph g = testutil::random_graph(n, 0.3 + 0.5 * gen.next_unit(), gen);
    VertexSet sub;
    for (std::uint32_t v = 0; v < n; ++v)
      if (gen.next_below(2)) sub.push_back(v);
    if (sub.empty()) continue;
    ++pairs;
    const Graph h = rwidth::induced_subgraph(g, sub);
    CHECK(rwidth::rank_width(h).width <= rwidth::rank_width(g).width);
  }
}

TEST_CASE("trees and unicyclic graphs") {
  rwidth::SplitMix64 gen(0x7EE);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + gen.next_below(13);
    const Graph tree = testutil::random_tree(n, gen);
    CHECK(rwidth::rank_width(tree).width == 1);
    CHECK(rwidth::tree_width(tree) == 1);
    if (n >= 3) {
      const Graph uni = testutil::random_unicyclic(n, gen);
      const std::size_t rw = rwidth::rank_width(uni).width;
      CHECK(rw >= 1);
      CHECK(rw <= 2);
      CHECK(rwidth::tree_width(uni) == 2);
    }
  }
  // cycles pin the two cases down: C3, C4 have rank-width 1; C5+ have 2
  CHECK(rwidth::rank_width(testutil::cycle_graph(3)).width == 1);
  CHECK(rwidth::rank_width(testutil::cycle_graph(4)).width == 1);
  for (std::size_t n = 5; n <= 12; ++n)
    CHECK(rwidth::rank_width(testutil::cycle_graph(n)).width == 2);
}

TEST_CASE("capacity errors name the cap") {
  const Graph big(25);
  try {
    rwidth::rank_width(big, false, 20);
    FAIL("expected capacity_error");
  } catch (const rwidth::capacity_error& e) {
    CHECK(std::string(e.what()).find("20") != std::string::npos);
  }
  CHECK_THROWS_AS(rwidth::tree_width(big, 20), rwidth::capacity_error);
  CHECK_NOTHROW(rwidth::rank_width(Graph(21), false, 21));
}

TEST_CASE("decomposition serialization round-trips") {
  rwidth::SplitMix64 gen(0x10AD);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + gen.next_below(9);
    const Graph g = testutil::random_graph(n, 0.4, gen);
    const auto res = rwidth::rank_width(g, true);
    std::ostringstream out;
    rwidth::write_decomposition(*res.decomposition, out);
    std::istringstream in(out.str());
    const auto back = rwidth::read_decomposition(in);
    CHECK(back.node_count == res.decomposition->node_count);
    CHECK(back.leaf_of_vertex == res.decomposition->leaf_of_vertex);
    CHECK(rwidth::width_of_decomposition(g, back) == res.width);
  }
  std::istringstream bad("0 1\n");
  CHECK_THROWS_AS(rwidth::read_decomposition(bad), rwidth::parse_error);
}
