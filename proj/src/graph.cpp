#include "rwidth/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rwidth/errors.hpp"
#include "rwidth/prng.hpp"

namespace rwidth {

Graph::Graph(std::size_t n) : n_(n) {
  if (dense()) {
    words_ = (n + 63) / 64;
    bits_.assign(n_ * words_, 0);
  } else {
    adj_.resize(n_);
  }
}

Graph Graph::from_edges(
    std::size_t n,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
  if (u >= n_ || v >= n_) return false;
  if (dense()) return (bits_[u * words_ + v / 64] >> (v % 64)) & 1u;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::add_edge(std::uint32_t u, std::uint32_t v) {
  if (u >= n_ || v >= n_)
    throw std::invalid_argument("Graph::add_edge: vertex out of range");
  if (u == v) throw std::invalid_argument("Graph::add_edge: self-loop");
  if (has_edge(u, v)) return;
  if (dense()) {
    bits_[u * words_ + v / 64] |= std::uint64_t(1) << (v % 64);
    bits_[v * words_ + u / 64] |= std::uint64_t(1) << (u % 64);
  } else {
    adj_[u].insert(std::upper_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::upper_bound(adj_[v].begin(), adj_[v].end(), u), u);
  }
  ++m_;
}

std::size_t Graph::degree(std::uint32_t v) const {
  if (dense()) {
    std::size_t s = 0;
    for (std::size_t w = 0; w < words_; ++w)
      s += std::popcount(bits_[v * words_ + w]);
    return s;
  }
  return adj_[v].size();
}

std::vector<std::uint32_t> Graph::neighbors(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  out.reserve(degree(v));
  for_each_neighbor(v, [&](std::uint32_t u) { out.push_back(u); });
  return out;
}

std::span<const std::uint64_t> Graph::adjacency_row(std::uint32_t v) const {
  if (!dense())
    throw std::logic_error("Graph::adjacency_row: sparse representation");
  return {bits_.data() + v * words_, words_};
}

bool Graph::operator==(const Graph& o) const {
  if (n_ != o.n_ || m_ != o.m_) return false;
  bool same = true;
  for_each_edge([&](std::uint32_t u, std::uint32_t v) {
    if (!o.has_edge(u, v)) same = false;
  });
  return same;
}

namespace {

// Row-major index of the pair (i,j), i < j, among the C(n,2) vertex pairs.
std::uint64_t pair_base(std::uint64_t n, std::uint64_t i) {
  return i * (2 * n - i - 1) / 2;
}

// Edges of rows [row_begin, row_end) under per-pair Bernoulli draws.  The
// hot path is a branch-free hit detector over blocks of draws (the compiler
// vectorizes it); only blocks that contain a hit are re-scanned to emit
// edges, which is cheap at the sparse densities where speed matters.
void sample_rows(std::uint64_t n, std::uint64_t seed, std::uint64_t threshold,
                 std::uint32_t row_begin, std::uint32_t row_end,
                 std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) {
  constexpr std::uint32_t kBlock = 64;
  for (std::uint32_t i = row_begin; i < row_end; ++i) {
    std::uint64_t state = seed + (pair_base(n, i) + 1) * kGoldenGamma;
    std::uint32_t j = i + 1;
    while (j + kBlock <= n) {
      std::uint64_t any = 0;
      for (std::uint32_t k = 0; k < kBlock; ++k)
        any |= static_cast<std::uint64_t>(mix64(state + k * kGoldenGamma) <
                                          threshold);
      if (any) {
        for (std::uint32_t k = 0; k < kBlock; ++k)
          if (mix64(state + k * kGoldenGamma) < threshold)
            out.emplace_back(i, j + k);
      }
      state += kBlock * kGoldenGamma;
      j += kBlock;
    }
    for (; j < n; ++j, state += kGoldenGamma)
      if (mix64(state) < threshold) out.emplace_back(i, j);
  }
}

}  // namespace

Graph sample_gnp(const GnpConfig& cfg, unsigned threads) {
  if (cfg.p < 0.0 || cfg.p > 1.0)
    throw std::invalid_argument("sample_gnp: p must lie in [0,1]");
  const std::size_t n = cfg.n;
  Graph g(n);
  if (n < 2 || cfg.p <= 0.0) return g;
  if (cfg.p >= 1.0) {
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }
  const std::uint64_t threshold = bernoulli_threshold(cfg.p);
  const std::uint64_t total_pairs = pair_base(n, n - 1);

  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (total_pairs < (1u << 22) || threads == 1) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    sample_rows(n, cfg.seed, threshold, 0, static_cast<std::uint32_t>(n), edges);
    return Graph::from_edges(n, edges);
  }

  // Split rows so every worker sees roughly the same number of pairs; the
  // per-pair draws are position-keyed, so the merge is order-independent.
  std::vector<std::uint32_t> cuts(threads + 1, 0);
  for (unsigned t = 1; t < threads; ++t) {
    const std::uint64_t target = total_pairs * t / threads;
    std::uint32_t lo = cuts[t - 1], hi = static_cast<std::uint32_t>(n);
    while (lo < hi) {
      const std::uint32_t mid = lo + (hi - lo) / 2;
      if (pair_base(n, mid) < target)
        lo = mid + 1;
      else
        hi = mid;
    }
    cuts[t] = lo;
  }
  cuts[threads] = static_cast<std::uint32_t>(n);

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> parts(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      sample_rows(n, cfg.seed, threshold, cuts[t], cuts[t + 1], parts[t]);
    });
  for (auto& th : pool) th.join();

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  edges.reserve(total);
  for (auto& p : parts) edges.insert(edges.end(), p.begin(), p.end());
  return Graph::from_edges(n, edges);
}

namespace {

// Validates, sorts, and deduplicates a caller-supplied vertex set.
VertexSet canonical_set(const Graph& g, VertexSet s, const char* what) {
  for (std::uint32_t v : s)
    if (v >= g.vertex_count())
      throw std::invalid_argument(std::string(what) + ": vertex out of range");
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument(std::string(what) + ": duplicate vertex");
  return s;
}

}  // namespace

BitMatrix cut_matrix(const Graph& g, const VertexSet& v1, const VertexSet& v2) {
  const VertexSet a = canonical_set(g, v1, "cut_matrix");
  const VertexSet b = canonical_set(g, v2, "cut_matrix");
  {
    VertexSet inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(inter));
    if (!inter.empty())
      throw std::invalid_argument("cut_matrix: sets are not disjoint");
  }
  BitMatrix m(a.size(), b.size());
  std::vector<std::int32_t> col_of(g.vertex_count(), -1);
  for (std::size_t j = 0; j < b.size(); ++j) col_of[b[j]] = static_cast<std::int32_t>(j);
  for (std::size_t i = 0; i < a.size(); ++i)
    g.for_each_neighbor(a[i], [&](std::uint32_t u) {
      if (col_of[u] >= 0) m.set(i, static_cast<std::size_t>(col_of[u]), true);
    });
  return m;
}

std::size_t cutrank(const Graph& g, const VertexSet& v1, const VertexSet& v2) {
  return rank(cut_matrix(g, v1, v2));
}

Graph complement(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kDenseAdjacencyCap)
    throw capacity_error("complement: " + std::to_string(n) +
                         " vertices exceeds cap " +
                         std::to_string(kDenseAdjacencyCap));
  Graph c(n);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) c.add_edge(u, v);
  return c;
}

std::vector<VertexSet> components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexSet> out;
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      g.for_each_neighbor(v, [&](std::uint32_t u) {
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      });
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

ComponentKind classify_component(const Graph& g, const VertexSet& comp) {
  const VertexSet c = canonical_set(g, comp, "classify_component");
  if (c.empty())
    throw std::invalid_argument("classify_component: empty set");
  // The set must be exactly the component of its first vertex.
  std::vector<char> member(g.vertex_count(), 0);
  for (std::uint32_t v : c) member[v] = 1;
  std::vector<std::uint32_t> stack{c.front()};
  std::vector<char> seen(g.vertex_count(), 0);
  seen[c.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    bool escaped = false;
    g.for_each_neighbor(v, [&](std::uint32_t u) {
      if (!member[u]) escaped = true;
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    });
    if (escaped)
      throw std::invalid_argument(
          "classify_component: set is not a whole component");
  }
  if (reached != c.size())
    throw std::invalid_argument("classify_component: set is not connected");
  std::uint64_t deg_sum = 0;
  for (std::uint32_t v : c) deg_sum += g.degree(v);
  const std::uint64_t edges = deg_sum / 2;
  if (edges == c.size() - 1) return ComponentKind::Tree;
  if (edges == c.size()) return ComponentKind::Unicyclic;
  return ComponentKind::Complex;
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats s;
  const std::size_t n = g.vertex_count();
  s.sequence.resize(n);
  s.min = n ? UINT32_MAX : 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t d = static_cast<std::uint32_t>(g.degree(v));
    s.sequence[v] = d;
    s.max = std::max(s.max, d);
    s.min = std::min(s.min, d);
    s.sum += d;
  }
  return s;
}

Graph induced_subgraph(const Graph& g, const VertexSet& verts) {
  const VertexSet v = canonical_set(g, verts, "induced_subgraph");
  std::vector<std::int32_t> index(g.vertex_count(), -1);
  for (std::size_t i = 0; i < v.size(); ++i) index[v[i]] = static_cast<std::int32_t>(i);
  Graph h(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    g.for_each_neighbor(v[i], [&](std::uint32_t u) {
      if (index[u] > static_cast<std::int32_t>(i))
        h.add_edge(static_cast<std::uint32_t>(i),
                   static_cast<std::uint32_t>(index[u]));
    });
  return h;
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0, m = 0;
  bool have_header = false;
  std::size_t edges_read = 0;
  Graph g;
  while (std::getline(in, line)) {
    ++lineno;
    // strip trailing CR from CRLF files
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    if (!have_header) {
      long long nn = -1, mm = -1;
      std::string extra;
      if (!(ss >> nn >> mm) || (ss >> extra) || nn < 0 || mm < 0)
        throw parse_error("line " + std::to_string(lineno) +
                          ": expected header \"n m\"");
      n = static_cast<std::size_t>(nn);
      m = static_cast<std::size_t>(mm);
      g = Graph(n);
      have_header = true;
      continue;
    }
    long long u = -1, v = -1;
    std::string extra;
    if (!(ss >> u >> v) || (ss >> extra))
      throw parse_error("line " + std::to_string(lineno) +
                        ": expected edge \"u v\"");
    if (edges_read == m)
      throw parse_error("line " + std::to_string(lineno) +
                        ": more than the declared " + std::to_string(m) +
                        " edges");
    if (u < 0 || v < 0 || u >= static_cast<long long>(n) ||
        v >= static_cast<long long>(n))
      throw parse_error("line " + std::to_string(lineno) +
                        ": vertex index out of range");
    if (u == v)
      throw parse_error("line " + std::to_string(lineno) + ": self-loop");
    if (u > v)
      throw parse_error("line " + std::to_string(lineno) +
                        ": edges must satisfy u < v");
    if (g.has_edge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)))
      throw parse_error("line " + std::to_string(lineno) + ": duplicate edge");
    g.add_edge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    ++edges_read;
  }
  if (!have_header) throw parse_error("missing header \"n m\"");
  if (edges_read != m)
    throw parse_error("declared " + std::to_string(m) + " edges but found " +
                      std::to_string(edges_read));
  return g;
}

Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  try {
    return read_graph(in);
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

void write_graph(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
    out << u << ' ' << v << '\n';
  });
}

void write_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  write_graph(g, out);
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace rwidth
