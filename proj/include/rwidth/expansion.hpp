#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rwidth/graph.hpp"
#include "rwidth/rational.hpp"

namespace rwidth {

inline constexpr std::size_t kCheegerCap = 24;

// Exact edgewise Cheeger data of a connected graph:
// phi = cut_edges / min(d_S, d_comp) for the minimizing cut.
struct ExpansionReport {
  Rational phi;
  VertexSet witness;        // lexicographically smallest minimizing S
  std::uint64_t cut_edges = 0;
  std::uint64_t d_s = 0;     // degree sum over the witness
  std::uint64_t d_comp = 0;  // degree sum over the complement
};

// Exhaustive minimum over all nonempty proper subsets (S identified with its
// complement; vertex 0 is fixed inside S).  Requires 2 <= n <= 24, connected.
ExpansionReport cheeger_exact(const Graph& g);

// The random-walk form: min over subsets S with 0 < pi(S) <= 1/2 of
// (1/pi(S)) * sum over cut pairs (i in S, j outside) of pi_i * p_ij, with
// pi_v = deg(v)/2|E| and p_ij = 1/deg(i) on edges.  Evaluated term by term
// in exact rationals as an independent route; equals cheeger_exact(g).phi.
Rational cheeger_alternative(const Graph& g);

// Smallest integer M >= 1 with  sum_{k>=M} k c^k/(k-1)!  <  eps/2,
// established by partial sums plus a certified geometric tail bound.
std::size_t degree_tail_threshold(double c, double eps);

// Certified upper bound on the series tail starting at M (used by the
// threshold search and exposed for auditing).
double degree_tail_sum_upper(double c, std::size_t m);

struct HighDegreeFilter {
  VertexSet x;                       // vertices of degree >= M, ascending
  std::uint64_t incident_edges = 0;  // edges with >= 1 endpoint in x
};

HighDegreeFilter high_degree_filter(const Graph& g, std::size_t m);

// Deterministic rank-width lower-bound certificate built from an expander
// core W: every balanced partition of W is crossed by at least alpha|W|/3
// edges; stripping the high-degree set X leaves at least alpha|W|/6 matrix
// entries with every line at most M long, so each balanced cutrank is at
// least alpha|W|/(6 M^2) and so is the rank-width.  Inapplicable (bound 0)
// when the filtered edges exceed the alpha|W|/6 budget.
struct Certificate {
  VertexSet core;
  Rational alpha;                         // Phi(G[core]), exact
  Rational delta;                         // |core| / n
  std::size_t degree_cap = 0;             // M
  std::uint64_t filtered_edge_count = 0;  // edges incident to X in g
  std::size_t bound = 0;                  // 0 = inapplicable
};

Certificate certified_rw_lower_bound(const Graph& g, const VertexSet& w,
                                     std::size_t m);

// Audit block: fields plus the inequality chain values, "key: value" lines.
void write_certificate(const Certificate& cert, std::ostream& out);

}  // namespace rwidth
