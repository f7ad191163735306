#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "rwidth/graph.hpp"

namespace rwidth {

// Subcubic tree (every node degree 1 or 3) plus a bijection from graph
// vertices to its leaves.  Only defined for graphs with >= 2 vertices.
struct RankDecomposition {
  std::size_t node_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> leaf_of_vertex;  // leaf_of_vertex[v] = node id
};

struct WidthResult {
  std::size_t width = 0;
  std::optional<RankDecomposition> decomposition;
};

inline constexpr std::size_t kDefaultExactCap = 20;

// Exact rank-width by subset DP over the cutrank connectivity function.
// Splits the graph into connected components, solves each with a 3^m
// submask DP over a precomputed 2^m cutrank table, and takes the maximum.
// With want_tree the optimal decomposition is rebuilt from stored splits
// (per-component trees joined by subdividing edges; cross cuts have rank 0).
WidthResult rank_width(const Graph& g, bool want_tree = false,
                       std::size_t cap = kDefaultExactCap);

// Max over tree edges of the cutrank of the induced leaf bipartition.
// Validates the decomposition first.
std::size_t width_of_decomposition(const Graph& g, const RankDecomposition& d);

void validate_decomposition(const Graph& g, const RankDecomposition& d);

struct Separation {
  VertexSet v1;
  VertexSet v2;
  std::size_t rho = 0;
};

// Constructive balanced separation: locates a tree edge whose leaf
// bipartition (A,B) has both sides >= n/3 (one always exists in a subcubic
// tree), takes A to be a side with |A| >= n/2, and returns the lowest
// ceil(n/2) vertices of A and the lowest ceil(n/3) vertices of B.  The
// returned cutrank never exceeds the width of the decomposition.
Separation balanced_separation(const Graph& g, const RankDecomposition& d);

// Exact treewidth via the elimination-ordering subset DP:
// f(S) = min over v in S of max(f(S \ {v}), |Q(S \ {v}, v)|) where Q(S,v)
// is the set of vertices outside S + {v} reachable from v through S.
std::size_t tree_width(const Graph& g, std::size_t cap = kDefaultExactCap);

struct WidthReport {
  std::size_t rank_width = 0;
  std::size_t tree_width = 0;
  std::size_t cw_lower = 0;  // = rank_width
  std::size_t cw_upper = 0;  // = 2^(rank_width+1) - 1
  std::optional<RankDecomposition> decomposition;
};

WidthReport width_report(const Graph& g, std::size_t cap = kDefaultExactCap);

// Test oracle: enumerates every leaf-labeled subcubic tree ((2n-5)!! of
// them) and returns the true minimum width.  Requires 2 <= n <= 7.
std::size_t brute_force_rank_width(const Graph& g);

// Serialization: one "a b" line per tree edge, then one "leaf node vertex"
// line per graph vertex.
void write_decomposition(const RankDecomposition& d, std::ostream& out);
RankDecomposition read_decomposition(std::istream& in);

}  // namespace rwidth
