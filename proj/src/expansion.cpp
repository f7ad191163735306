#include "rwidth/expansion.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>

#include "rwidth/errors.hpp"

namespace rwidth {

namespace {

std::vector<std::uint64_t> small_adjacency(const Graph& g, const char* op) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw std::invalid_argument(std::string(op) + ": need >= 2 vertices");
  if (n > kCheegerCap)
    throw capacity_error(std::string(op) + ": graph has " + std::to_string(n) +
                         " vertices, exceeds cap " + std::to_string(kCheegerCap));
  if (components(g).size() != 1)
    throw std::invalid_argument(std::string(op) + ": graph is disconnected");
  std::vector<std::uint64_t> masks(n, 0);
  g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
    masks[u] |= std::uint64_t(1) << v;
    masks[v] |= std::uint64_t(1) << u;
  });
  return masks;
}

VertexSet mask_to_set(std::uint64_t mask) {
  VertexSet s;
  while (mask) {
    s.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return s;
}

}  // namespace

ExpansionReport cheeger_exact(const Graph& g) {
  const auto masks = small_adjacency(g, "cheeger_exact");
  const std::size_t n = g.vertex_count();
  std::vector<std::uint64_t> deg(n);
  std::uint64_t total_deg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = std::popcount(masks[v]);
    total_deg += deg[v];
  }
  const std::uint64_t full = (std::uint64_t(1) << n) - 1;
  bool have = false;
  std::uint64_t best_cut = 0, best_min = 1, best_mask = 0;
  std::uint64_t best_ds = 0;
  // Vertex 0 is fixed inside S: phi is symmetric under complementation, and
  // of each complementary pair the side containing vertex 0 is the
  // lexicographically smaller witness.
  for (std::uint64_t s = 1; s < full; s += 2) {
    std::uint64_t cut = 0, ds = 0;
    std::uint64_t bits = s;
    while (bits) {
      const int v = std::countr_zero(bits);
      bits &= bits - 1;
      cut += std::popcount(masks[v] & ~s);
      ds += deg[v];
    }
    const std::uint64_t mn = std::min(ds, total_deg - ds);
    // cut/mn < best_cut/best_min, or equal with a lex-smaller witness.
    const unsigned __int128 lhs =
        static_cast<unsigned __int128>(cut) * best_min;
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(best_cut) * mn;
    bool better = !have || lhs < rhs;
    if (!better && have && lhs == rhs) {
      const VertexSet a = mask_to_set(s);
      const VertexSet b = mask_to_set(best_mask);
      better = std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                            b.end());
    }
    if (better) {
      have = true;
      best_cut = cut;
      best_min = mn;
      best_mask = s;
      best_ds = ds;
    }
  }
  ExpansionReport rep;
  rep.phi = Rational(static_cast<std::int64_t>(best_cut),
                     static_cast<std::int64_t>(best_min));
  rep.witness = mask_to_set(best_mask);
  rep.cut_edges = best_cut;
  rep.d_s = best_ds;
  rep.d_comp = total_deg - best_ds;
  return rep;
}

Rational cheeger_alternative(const Graph& g) {
  const auto masks = small_adjacency(g, "cheeger_alternative");
  const std::size_t n = g.vertex_count();
  const std::int64_t two_e = 2 * static_cast<std::int64_t>(g.edge_count());
  std::vector<std::int64_t> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = std::popcount(masks[v]);
  const std::uint64_t full = (std::uint64_t(1) << n) - 1;
  const Rational half(1, 2);
  bool have = false;
  Rational best;
  for (std::uint64_t s = 1; s < full; ++s) {
    Rational pi_s;
    std::uint64_t bits = s;
    while (bits) {
      const int v = std::countr_zero(bits);
      bits &= bits - 1;
      pi_s = pi_s + Rational(deg[v], two_e);
    }
    if (pi_s.is_zero() || half < pi_s) continue;
    Rational flow;  // sum over i in S, j outside S of pi_i * p_ij
    bits = s;
    while (bits) {
      const int i = std::countr_zero(bits);
      bits &= bits - 1;
      std::uint64_t out = masks[i] & ~s;
      while (out) {
        out &= out - 1;
        flow = flow + Rational(deg[i], two_e) * Rational(1, deg[i]);
      }
    }
    const Rational value = flow / pi_s;
    if (!have || value < best) {
      have = true;
      best = value;
    }
  }
  if (!have)
    throw std::logic_error("cheeger_alternative: no admissible subset");
  return best;
}

double degree_tail_sum_upper(double c, std::size_t m) {
  if (m < 1) m = 1;
  // t_k = k c^k/(k-1)!; t_1 = c; t_{k+1}/t_k = c(k+1)/k^2 (decreasing).
  double term = c;
  for (std::size_t k = 1; k < m; ++k)
    term *= c * static_cast<double>(k + 1) /
            (static_cast<double>(k) * static_cast<double>(k));
  double sum = 0.0;
  std::size_t k = m;
  for (;;) {
    sum += term;
    const double ratio = c * static_cast<double>(k + 1) /
                         (static_cast<double>(k) * static_cast<double>(k));
    term *= ratio;
    ++k;
    // Once ratios are below 1/2 the rest is dominated by a geometric
    // series; keep summing until the certified remainder is negligible.
    if (ratio < 0.5 && static_cast<double>(k) > 2.0 * c) {
      const double next_ratio = c * static_cast<double>(k + 1) /
                                (static_cast<double>(k) * static_cast<double>(k));
      const double remainder = term / (1.0 - next_ratio);
      if (remainder <= 1e-15 * sum || remainder < 1e-300) return sum + remainder;
      if (k > m + 100000)
        return sum + remainder;  // unreachable for sane inputs
    }
  }
}

std::size_t degree_tail_threshold(double c, double eps) {
  if (!(c > 1.0)) throw std::invalid_argument("degree_tail_threshold: c must be > 1");
  if (!(eps > 0.0)) throw std::invalid_argument("degree_tail_threshold: eps must be > 0");
  std::size_t m = 1;
  while (degree_tail_sum_upper(c, m) >= eps / 2.0) {
    ++m;
    if (m > 1000000)
      throw std::logic_error("degree_tail_threshold: no threshold below 1e6");
  }
  return m;
}

HighDegreeFilter high_degree_filter(const Graph& g, std::size_t m) {
  if (m < 1) throw std::invalid_argument("high_degree_filter: M must be >= 1");
  HighDegreeFilter out;
  const std::size_t n = g.vertex_count();
  std::vector<char> in_x(n, 0);
  for (std::uint32_t v = 0; v < n; ++v)
    if (g.degree(v) >= m) {
      in_x[v] = 1;
      out.x.push_back(v);
    }
  std::uint64_t count = 0;
  g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
    if (in_x[u] || in_x[v]) ++count;
  });
  out.incident_edges = count;
  return out;
}

Certificate certified_rw_lower_bound(const Graph& g, const VertexSet& w,
                                     std::size_t m) {
  if (m < 1)
    throw std::invalid_argument("certified_rw_lower_bound: M must be >= 1");
  VertexSet core(w);
  std::sort(core.begin(), core.end());
  core.erase(std::unique(core.begin(), core.end()), core.end());
  const Graph h = induced_subgraph(g, core);  // validates the vertex set
  const ExpansionReport exp = cheeger_exact(h);  // enforces size/connectivity

  Certificate cert;
  cert.core = core;
  cert.alpha = exp.phi;
  cert.delta = Rational(static_cast<std::int64_t>(core.size()),
                        static_cast<std::int64_t>(g.vertex_count()));
  cert.degree_cap = m;
  cert.filtered_edge_count = high_degree_filter(g, m).incident_edges;

  // Applicable iff  E_X <= alpha |W| / 6,  i.e.  6 E_X den <= num |W|.
  const unsigned __int128 lhs = static_cast<unsigned __int128>(6) *
                                cert.filtered_edge_count *
                                static_cast<std::uint64_t>(cert.alpha.den());
  const unsigned __int128 rhs =
      static_cast<unsigned __int128>(cert.alpha.num()) * core.size();
  if (lhs <= rhs) {
    // bound = ceil(alpha |W| / (6 M^2))
    const unsigned __int128 denom = static_cast<unsigned __int128>(6) *
                                    cert.alpha.den() * m * m;
    cert.bound = static_cast<std::size_t>((rhs + denom - 1) / denom);
  }
  return cert;
}

void write_certificate(const Certificate& cert, std::ostream& out) {
  out << "core:";
  for (std::uint32_t v : cert.core) out << ' ' << v;
  out << '\n';
  out << "core_size: " << cert.core.size() << '\n';
  out << "alpha: " << cert.alpha.to_string() << '\n';
  out << "delta: " << cert.delta.to_string() << '\n';
  out << "degree_cap: " << cert.degree_cap << '\n';
  out << "filtered_edge_count: " << cert.filtered_edge_count << '\n';
  const Rational w(static_cast<std::int64_t>(cert.core.size()), 1);
  out << "balanced_cut_edges_at_least: " << (cert.alpha * w / Rational(3, 1)).to_string()
      << '\n';
  out << "filter_budget: " << (cert.alpha * w / Rational(6, 1)).to_string() << '\n';
  const bool applicable = cert.bound > 0;
  out << "applicable: " << (applicable ? "true" : "false") << '\n';
  if (applicable) {
    const Rational m2(static_cast<std::int64_t>(cert.degree_cap) *
                          static_cast<std::int64_t>(cert.degree_cap),
                      1);
    out << "cutrank_at_least: "
        << (cert.alpha * w / (Rational(6, 1) * m2)).to_string() << '\n';
  }
  out << "rank_width_at_least: " << cert.bound << '\n';
}

}  // namespace rwidth
