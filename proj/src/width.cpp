#include "rwidth/width.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rwidth/errors.hpp"

namespace rwidth {

namespace {

// Memory guard for the 2^n / 3^n subset tables.
constexpr std::size_t kHardDpLimit = 26;

void check_cap(const char* op, std::size_t n, std::size_t cap) {
  if (cap > kHardDpLimit) cap = kHardDpLimit;
  if (n > cap)
    throw capacity_error(std::string(op) + ": graph has " + std::to_string(n) +
                         " vertices, exceeds cap " + std::to_string(cap));
}

// Single-word adjacency masks; requires n <= 64.
std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint64_t> masks(g.vertex_count(), 0);
  g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
    masks[u] |= std::uint64_t(1) << v;
    masks[v] |= std::uint64_t(1) << u;
  });
  return masks;
}

// Rank of single-word row vectors by xor elimination.
int word_rank(const std::uint64_t* rows, int count) {
  std::uint64_t basis[64] = {};
  int r = 0;
  for (int i = 0; i < count; ++i) {
    std::uint64_t v = rows[i];
    while (v) {
      const int lead = std::countr_zero(v);
      if (!basis[lead]) {
        basis[lead] = v;
        ++r;
        break;
      }
      v ^= basis[lead];
    }
  }
  return r;
}

// rho[S] = cutrank of (S, V \ S), for every subset of an n-vertex graph.
// Computed directly on the smaller side, mirrored onto the larger.
std::vector<std::uint8_t> cutrank_table(const std::vector<std::uint64_t>& masks) {
  const int n = static_cast<int>(masks.size());
  const std::uint64_t full = (n == 64) ? ~std::uint64_t(0)
                                       : ((std::uint64_t(1) << n) - 1);
  std::vector<std::uint8_t> rho(std::size_t(1) << n, 0);
  std::uint64_t rows[64];
  for (std::uint64_t s = 1; s < full; ++s) {
    const int pc = std::popcount(s);
    if (2 * pc > n) continue;
    const std::uint64_t outside = full & ~s;
    int cnt = 0;
    std::uint64_t bits = s;
    while (bits) {
      const int v = std::countr_zero(bits);
      bits &= bits - 1;
      rows[cnt++] = masks[v] & outside;
    }
    rho[s] = static_cast<std::uint8_t>(word_rank(rows, cnt));
  }
  for (std::uint64_t s = 1; s < full; ++s)
    if (2 * std::popcount(s) > n) rho[s] = rho[full & ~s];
  return rho;
}

struct ComponentSolution {
  std::size_t width = 0;
  std::vector<std::uint32_t> split;  // best submask per subset (want_tree)
};

// Subset DP on one connected component given as an induced subgraph.
ComponentSolution solve_component(const Graph& comp, bool want_tree) {
  const int m = static_cast<int>(comp.vertex_count());
  ComponentSolution sol;
  if (m <= 1) return sol;
  const auto masks = adjacency_masks(comp);
  const auto rho = cutrank_table(masks);
  const std::uint64_t full = (std::uint64_t(1) << m) - 1;
  std::vector<std::uint8_t> w(std::size_t(1) << m, 0);
  if (want_tree) sol.split.assign(std::size_t(1) << m, 0);
  for (int v = 0; v < m; ++v)
    w[std::uint64_t(1) << v] = rho[std::uint64_t(1) << v];
  for (std::uint64_t s = 3; s <= full; ++s) {
    if (std::popcount(s) < 2) continue;
    std::uint32_t best = UINT32_MAX;
    std::uint32_t best_t = UINT32_MAX;
    for (std::uint64_t t = (s - 1) & s; t; t = (t - 1) & s) {
      const std::uint64_t u = s ^ t;
      if (t > u) continue;  // each unordered split once, t the smaller mask
      const std::uint32_t val = std::max(w[t], w[u]);
      if (val < best || (val == best && t < best_t)) {
        best = val;
        best_t = static_cast<std::uint32_t>(t);
      }
    }
    w[s] = static_cast<std::uint8_t>(std::max<std::uint32_t>(best, rho[s]));
    if (want_tree) sol.split[s] = best_t;
  }
  sol.width = w[full];
  return sol;
}

// Growing decomposition over global vertex ids.
struct TreeBuilder {
  std::size_t nodes = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> leaf_of_vertex;

  explicit TreeBuilder(std::size_t n) : leaf_of_vertex(n, 0) {}

  std::uint32_t new_node() { return static_cast<std::uint32_t>(nodes++); }

  // Recursive rebuild from the DP split table; returns the subtree root.
  std::uint32_t build(const std::vector<std::uint32_t>& split,
                      const VertexSet& comp, std::uint64_t s) {
    if (std::popcount(s) == 1) {
      const std::uint32_t node = new_node();
      leaf_of_vertex[comp[std::countr_zero(s)]] = node;
      return node;
    }
    const std::uint64_t t = split[s];
    const std::uint32_t a = build(split, comp, t);
    const std::uint32_t b = build(split, comp, s ^ t);
    const std::uint32_t node = new_node();
    edges.emplace_back(node, a);
    edges.emplace_back(node, b);
    return node;
  }

  // Attach a freestanding node (a one-vertex component's leaf or a joined
  // subtree root is never needed; joins happen between edge-bearing trees
  // and/or lone leaves via attach/connect below).
  // Subdivide edge index e, returning the new middle node.
  std::uint32_t subdivide(std::size_t e) {
    const auto [a, b] = edges[e];
    const std::uint32_t mid = new_node();
    edges[e] = {a, mid};
    edges.emplace_back(mid, b);
    return mid;
  }
};

RankDecomposition assemble_decomposition(
    const Graph& g, const std::vector<VertexSet>& comps,
    const std::vector<ComponentSolution>& sols) {
  TreeBuilder tb(g.vertex_count());
  // Per-component piece: either a lone leaf (size-1 component) or a subtree
  // whose root edge is added here.
  std::size_t first_with_edges = SIZE_MAX;
  std::vector<std::uint32_t> lone_leaves;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const VertexSet& comp = comps[c];
    if (comp.size() == 1) {
      const std::uint32_t node = tb.new_node();
      tb.leaf_of_vertex[comp[0]] = node;
      lone_leaves.push_back(node);
      continue;
    }
    const std::uint64_t full = (std::uint64_t(1) << comp.size()) - 1;
    const std::uint64_t t = sols[c].split[full];
    const std::uint32_t a = tb.build(sols[c].split, comp, t);
    const std::uint32_t b = tb.build(sols[c].split, comp, full ^ t);
    const std::size_t root_edge = tb.edges.size();
    tb.edges.emplace_back(a, b);
    if (first_with_edges == SIZE_MAX) {
      first_with_edges = root_edge;
    } else {
      // Join onto the accumulated tree: subdivide one edge on each side.
      const std::uint32_t ma = tb.subdivide(0);
      const std::uint32_t mb = tb.subdivide(root_edge);
      tb.edges.emplace_back(ma, mb);
    }
  }
  // Lone leaves: pair them up or hang them off the accumulated tree.
  std::size_t i = 0;
  if (tb.edges.empty()) {
    // All components are single vertices; chain the leaves pairwise.
    tb.edges.emplace_back(lone_leaves[0], lone_leaves[1]);
    i = 2;
  }
  for (; i < lone_leaves.size(); ++i) {
    const std::uint32_t mid = tb.subdivide(0);
    tb.edges.emplace_back(mid, lone_leaves[i]);
  }
  RankDecomposition d;
  d.node_count = tb.nodes;
  d.edges = std::move(tb.edges);
  d.leaf_of_vertex = std::move(tb.leaf_of_vertex);
  return d;
}

}  // namespace

WidthResult rank_width(const Graph& g, bool want_tree, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  check_cap("rank_width", n, cap);
  WidthResult res;
  if (n <= 1) return res;
  const auto comps = components(g);
  std::vector<ComponentSolution> sols;
  sols.reserve(comps.size());
  for (const auto& comp : comps) {
    sols.push_back(solve_component(induced_subgraph(g, comp), want_tree));
    res.width = std::max(res.width, sols.back().width);
  }
  if (want_tree) res.decomposition = assemble_decomposition(g, comps, sols);
  return res;
}

namespace {

std::vector<std::vector<std::uint32_t>> tree_adjacency(const RankDecomposition& d) {
  std::vector<std::vector<std::uint32_t>> adj(d.node_count);
  for (auto [a, b] : d.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

// Vertices whose leaves lie on the `from` side of the edge (from, to).
VertexSet side_vertices(const RankDecomposition& d,
                        const std::vector<std::vector<std::uint32_t>>& adj,
                        std::uint32_t from, std::uint32_t to) {
  std::vector<char> seen(d.node_count, 0);
  std::vector<std::uint32_t> stack{from};
  seen[from] = 1;
  seen[to] = 1;  // block the removed edge
  std::vector<char> reached(d.node_count, 0);
  reached[from] = 1;
  while (!stack.empty()) {
    const std::uint32_t x = stack.back();
    stack.pop_back();
    for (std::uint32_t y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        reached[y] = 1;
        stack.push_back(y);
      }
  }
  VertexSet verts;
  for (std::uint32_t v = 0; v < d.leaf_of_vertex.size(); ++v)
    if (reached[d.leaf_of_vertex[v]]) verts.push_back(v);
  return verts;
}

}  // namespace

void validate_decomposition(const Graph& g, const RankDecomposition& d) {
  const std::size_t n = g.vertex_count();
  if (n < 2)
    throw std::invalid_argument(
        "decomposition: defined only for graphs with >= 2 vertices");
  if (d.leaf_of_vertex.size() != n)
    throw std::invalid_argument("decomposition: leaf map size != n");
  if (d.edges.size() + 1 != d.node_count)
    throw std::invalid_argument("decomposition: edge count != nodes - 1");
  std::vector<std::uint32_t> deg(d.node_count, 0);
  for (auto [a, b] : d.edges) {
    if (a >= d.node_count || b >= d.node_count || a == b)
      throw std::invalid_argument("decomposition: bad tree edge");
    ++deg[a];
    ++deg[b];
  }
  for (std::uint32_t x = 0; x < d.node_count; ++x)
    if (deg[x] != 1 && deg[x] != 3)
      throw std::invalid_argument("decomposition: node degree not 1 or 3");
  // connectivity (with |E| = |V|-1 this also rules out cycles)
  const auto adj = tree_adjacency(d);
  std::vector<char> seen(d.node_count, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t cnt = 1;
  while (!stack.empty()) {
    const std::uint32_t x = stack.back();
    stack.pop_back();
    for (std::uint32_t y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++cnt;
        stack.push_back(y);
      }
  }
  if (cnt != d.node_count)
    throw std::invalid_argument("decomposition: tree is not connected");
  // leaf map is a bijection onto the degree-1 nodes
  std::vector<char> used(d.node_count, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t leaf = d.leaf_of_vertex[v];
    if (leaf >= d.node_count || deg[leaf] != 1)
      throw std::invalid_argument("decomposition: leaf map target not a leaf");
    if (used[leaf])
      throw std::invalid_argument("decomposition: leaf map not injective");
    used[leaf] = 1;
  }
  std::size_t leaves = 0;
  for (std::uint32_t x = 0; x < d.node_count; ++x)
    if (deg[x] == 1) ++leaves;
  if (leaves != n)
    throw std::invalid_argument("decomposition: leaf count != vertex count");
}

std::size_t width_of_decomposition(const Graph& g, const RankDecomposition& d) {
  validate_decomposition(g, d);
  const auto adj = tree_adjacency(d);
  std::size_t width = 0;
  VertexSet all(g.vertex_count());
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) all[v] = v;
  for (auto [a, b] : d.edges) {
    const VertexSet side = side_vertices(d, adj, a, b);
    VertexSet other;
    std::set_difference(all.begin(), all.end(), side.begin(), side.end(),
                        std::back_inserter(other));
    width = std::max(width, cutrank(g, side, other));
  }
  return width;
}

Separation balanced_separation(const Graph& g, const RankDecomposition& d) {
  validate_decomposition(g, d);
  const std::size_t n = g.vertex_count();
  const auto adj = tree_adjacency(d);
  for (auto [a, b] : d.edges) {
    const VertexSet side_a = side_vertices(d, adj, a, b);
    const std::size_t ca = side_a.size();
    const std::size_t cb = n - ca;
    if (3 * ca < n || 3 * cb < n) continue;
    VertexSet side_b;
    VertexSet all(n);
    for (std::uint32_t v = 0; v < n; ++v) all[v] = v;
    std::set_difference(all.begin(), all.end(), side_a.begin(), side_a.end(),
                        std::back_inserter(side_b));
    const VertexSet& big = (2 * ca >= n) ? side_a : side_b;
    const VertexSet& small = (2 * ca >= n) ? side_b : side_a;
    Separation sep;
    sep.v1.assign(big.begin(), big.begin() + (n + 1) / 2);
    sep.v2.assign(small.begin(), small.begin() + (n + 2) / 3);
    sep.rho = cutrank(g, sep.v1, sep.v2);
    return sep;
  }
  throw std::logic_error(
      "balanced_separation: no balanced tree edge found (invalid tree)");
}

std::size_t tree_width(const Graph& g, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  check_cap("tree_width", n, cap);
  if (n <= 1) return 0;
  const auto masks = adjacency_masks(g);
  const std::uint64_t full = (std::uint64_t(1) << n) - 1;
  std::vector<std::uint8_t> f(std::size_t(1) << n, 0);
  for (std::uint64_t s = 1; s <= full; ++s) {
    std::uint32_t best = UINT32_MAX;
    std::uint64_t bits = s;
    while (bits) {
      const int v = std::countr_zero(bits);
      bits &= bits - 1;
      const std::uint64_t rest = s & ~(std::uint64_t(1) << v);
      // Q(rest, v): vertices outside rest+{v} reachable from v through rest.
      std::uint64_t seen = std::uint64_t(1) << v;
      std::uint64_t frontier = seen;
      while (frontier) {
        std::uint64_t nxt = 0;
        std::uint64_t fb = frontier;
        while (fb) {
          const int u = std::countr_zero(fb);
          fb &= fb - 1;
          nxt |= masks[u];
        }
        nxt &= ~seen;
        seen |= nxt;
        frontier = nxt & rest;
      }
      const std::uint32_t q = static_cast<std::uint32_t>(
          std::popcount(seen & ~rest & ~(std::uint64_t(1) << v)));
      best = std::min(best, std::max<std::uint32_t>(f[rest], q));
    }
    f[s] = static_cast<std::uint8_t>(best);
  }
  return f[full];
}

WidthReport width_report(const Graph& g, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  WidthReport rep;
  auto rw = rank_width(g, n >= 2, cap);
  rep.rank_width = rw.width;
  rep.decomposition = std::move(rw.decomposition);
  rep.tree_width = tree_width(g, cap);
  rep.cw_lower = rep.rank_width;
  rep.cw_upper = (std::size_t(1) << (rep.rank_width + 1)) - 1;
  if (3 * rep.rank_width > n + 2 || rep.rank_width > rep.tree_width + 1)
    throw std::logic_error("width_report: internal width inequality violated");
  return rep;
}

namespace {

struct BruteForceState {
  int n = 0;
  const std::vector<std::uint8_t>* rho = nullptr;
  std::vector<std::pair<int, int>> edges;
  std::size_t best = SIZE_MAX;

  // Max cutrank over the leaf bipartitions of the current complete tree.
  std::size_t evaluate() const {
    const int node_count = 2 * n - 2;
    std::vector<std::vector<int>> adj(node_count);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::size_t width = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      std::uint64_t mask = 0;
      std::vector<int> stack{edges[e].first};
      std::vector<char> seen(node_count, 0);
      seen[edges[e].first] = 1;
      seen[edges[e].second] = 1;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        if (x < n) mask |= std::uint64_t(1) << x;
        for (int y : adj[x])
          if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
      }
      width = std::max<std::size_t>(width, (*rho)[mask]);
    }
    return width;
  }

  // Insert leaf k into every current edge (each leaf-labeled subcubic tree
  // arises exactly once).
  void insert(int k) {
    if (k == n) {
      best = std::min(best, evaluate());
      return;
    }
    const std::size_t edge_count = edges.size();
    for (std::size_t e = 0; e < edge_count; ++e) {
      const auto saved = edges[e];
      const int mid = n + (k - 2);
      edges[e] = {saved.first, mid};
      edges.push_back({mid, saved.second});
      edges.push_back({mid, k});
      insert(k + 1);
      edges.pop_back();
      edges.pop_back();
      edges[e] = saved;
    }
  }
};

}  // namespace

std::size_t brute_force_rank_width(const Graph& g) {
  const int n = static_cast<int>(g.vertex_count());
  if (n < 2 || n > 7)
    throw std::invalid_argument(
        "brute_force_rank_width: requires 2 <= n <= 7");
  const auto masks = adjacency_masks(g);
  const auto rho = cutrank_table(masks);
  BruteForceState st;
  st.n = n;
  st.rho = &rho;
  st.edges.push_back({0, 1});
  if (n == 2) return st.evaluate();
  st.insert(2);
  return st.best;
}

void write_decomposition(const RankDecomposition& d, std::ostream& out) {
  for (auto [a, b] : d.edges) out << a << ' ' << b << '\n';
  for (std::uint32_t v = 0; v < d.leaf_of_vertex.size(); ++v)
    out << "leaf " << d.leaf_of_vertex[v] << ' ' << v << '\n';
}

RankDecomposition read_decomposition(std::istream& in) {
  RankDecomposition d;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> leaf_pairs;
  std::uint32_t max_node = 0;
  std::uint32_t max_vertex = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string first;
    ss >> first;
    if (first == "leaf") {
      long long node = -1, vertex = -1;
      if (!(ss >> node >> vertex) || node < 0 || vertex < 0)
        throw parse_error("line " + std::to_string(lineno) +
                          ": expected \"leaf node vertex\"");
      leaf_pairs.emplace_back(static_cast<std::uint32_t>(node),
                              static_cast<std::uint32_t>(vertex));
      max_node = std::max(max_node, static_cast<std::uint32_t>(node));
      max_vertex = std::max(max_vertex, static_cast<std::uint32_t>(vertex));
    } else {
      long long a = -1, b = -1;
      std::istringstream ss2(line);
      if (!(ss2 >> a >> b) || a < 0 || b < 0)
        throw parse_error("line " + std::to_string(lineno) +
                          ": expected tree edge \"a b\"");
      d.edges.emplace_back(static_cast<std::uint32_t>(a),
                           static_cast<std::uint32_t>(b));
      max_node = std::max({max_node, static_cast<std::uint32_t>(a),
                           static_cast<std::uint32_t>(b)});
    }
  }
  if (leaf_pairs.empty()) throw parse_error("decomposition has no leaf lines");
  d.node_count = max_node + 1;
  d.leaf_of_vertex.assign(max_vertex + 1, UINT32_MAX);
  for (auto [node, vertex] : leaf_pairs) {
    if (d.leaf_of_vertex[vertex] != UINT32_MAX)
      throw parse_error("duplicate leaf line for vertex " +
                        std::to_string(vertex));
    d.leaf_of_vertex[vertex] = node;
  }
  for (std::uint32_t v = 0; v < d.leaf_of_vertex.size(); ++v)
    if (d.leaf_of_vertex[v] == UINT32_MAX)
      throw parse_error("missing leaf line for vertex " + std::to_string(v));
  return d;
}

}  // namespace rwidth
