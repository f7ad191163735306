#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rwidth/bitmatrix.hpp"

namespace rwidth {

using VertexSet = std::vector<std::uint32_t>;

// Simple undirected graph, no loops, no parallel edges.  Up to
// kDenseAdjacencyCap vertices the adjacency is kept as packed bit rows;
// beyond that, as sorted neighbor lists (large sparse samples).  The
// representation is invisible through the public interface and instances
// are treated as immutable once built, so concurrent reads are safe.
inline constexpr std::size_t kDenseAdjacencyCap = 4096;

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);  // edgeless

  static Graph from_edges(std::size_t n,
                          const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return m_; }

  bool has_edge(std::uint32_t u, std::uint32_t v) const;
  void add_edge(std::uint32_t u, std::uint32_t v);  // no-op if present

  std::size_t degree(std::uint32_t v) const;
  std::vector<std::uint32_t> neighbors(std::uint32_t v) const;  // ascending

  template <typename F>
  void for_each_neighbor(std::uint32_t v, F&& f) const {
    if (dense()) {
      const std::uint64_t* row = bits_.data() + v * words_;
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = row[w];
        while (bits) {
          f(static_cast<std::uint32_t>(w * 64 + __builtin_ctzll(bits)));
          bits &= bits - 1;
        }
      }
    } else {
      for (std::uint32_t u : adj_[v]) f(u);
    }
  }

  template <typename F>
  void for_each_edge(F&& f) const {  // each edge once, (u,v) with u < v
    for (std::uint32_t u = 0; u < n_; ++u)
      for_each_neighbor(u, [&](std::uint32_t v) {
        if (u < v) f(u, v);
      });
  }

  bool dense() const { return n_ <= kDenseAdjacencyCap; }

  // Packed adjacency row; only valid for dense graphs.
  std::span<const std::uint64_t> adjacency_row(std::uint32_t v) const;

  bool operator==(const Graph& o) const;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t words_ = 0;                        // dense representation
  std::vector<std::uint64_t> bits_;              // dense representation
  std::vector<std::vector<std::uint32_t>> adj_;  // sparse representation
};

struct GnpConfig {
  std::size_t n = 0;
  double p = 0.0;  // in [0,1]
  std::uint64_t seed = 0;
};

// Erdos-Renyi sample: unordered pair (i,j) is an edge iff the counter draw
// at its row-major pair index falls below the Bernoulli threshold for p.
// Deterministic per seed, independent of thread count.
Graph sample_gnp(const GnpConfig& cfg, unsigned threads = 0);

// |v1| x |v2| adjacency matrix between two disjoint vertex sets, rows and
// columns ordered by ascending vertex index.
BitMatrix cut_matrix(const Graph& g, const VertexSet& v1, const VertexSet& v2);

// GF(2) rank of cut_matrix(g, v1, v2).
std::size_t cutrank(const Graph& g, const VertexSet& v1, const VertexSet& v2);

Graph complement(const Graph& g);

// Connected components, each sorted ascending, ordered by minimum vertex.
std::vector<VertexSet> components(const Graph& g);

enum class ComponentKind { Tree, Unicyclic, Complex };

// comp must be exactly a connected component of g.
ComponentKind classify_component(const Graph& g, const VertexSet& comp);

struct DegreeStats {
  std::vector<std::uint32_t> sequence;  // indexed by vertex
  std::uint32_t max = 0;
  std::uint32_t min = 0;
  std::uint64_t sum = 0;  // == 2|E|
};

DegreeStats degree_stats(const Graph& g);

// Subgraph induced on verts (deduplicated, ascending); vertex i of the
// result is verts[i].
Graph induced_subgraph(const Graph& g, const VertexSet& verts);

// Edge-list text format: optional '#' comment lines, a header "n m", then
// exactly m lines "u v" with 0 <= u < v < n and no duplicates.  The writer
// emits edges in lexicographic order.
Graph read_graph(std::istream& in);
Graph read_graph(const std::string& path);
void write_graph(const Graph& g, std::ostream& out);
void write_graph(const Graph& g, const std::string& path);

}  // namespace rwidth
