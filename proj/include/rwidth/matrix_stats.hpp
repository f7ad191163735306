#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rwidth/bitmatrix.hpp"

namespace rwidth {

inline constexpr std::size_t kSpanEnumerationCap = 24;  // max basis dimension

// Random 0-1 vector of length n with i.i.d. entries equal to 1 with
// probability p; eta = max(p, 1-p) drives every tail bound.
struct BiasedVectorModel {
  std::size_t n = 0;
  double p = 0.5;

  double eta() const { return p > 1.0 - p ? p : 1.0 - p; }
};

// Exact P(v in U) = sum over u in span(basis) of p^wt(u) (1-p)^(n-wt(u)),
// by enumerating all 2^k span elements in Gray-code order.  The sum has at
// most 2^24 nonnegative terms, so the relative rounding error is far below
// the 1e-12 comparison slack used against the eta^(n-k) bound.
double membership_probability(const BiasedVectorModel& model,
                              const Gf2Basis& basis);

struct MembershipBound {
  double probability = 0.0;
  double bound = 0.0;  // eta^(n-k)
  bool holds = false;  // probability <= bound + 1e-12
};

MembershipBound check_membership_bound(const BiasedVectorModel& model,
                                       const Gf2Basis& basis);

// k1 x k2 matrix with i.i.d. Bernoulli(p) entries; the entry (i,j) consumes
// the counter draw at index i*k2 + j.  Deterministic per seed.
BitMatrix sample_random_matrix(std::size_t k1, std::size_t k2, double p,
                               std::uint64_t seed);

// One-sided upper Clopper-Pearson confidence limit for a binomial
// proportion (successes out of trials) at the given confidence level.
double clopper_pearson_upper(std::size_t successes, std::size_t trials,
                             double confidence);

struct DefectTailConfig {
  std::size_t n = 0;       // scale; the matrix is ceil(n/3) x ceil(n/2)
  double p = 0.5;          // entry probability, in (0,1)
  double C = 12.6;         // defect constant
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  std::size_t alpha() const;  // ceil(C / log2(1/eta))
};

struct DefectTailResult {
  std::size_t n = 0;
  double p = 0.5;
  double C = 0.0;
  std::size_t alpha = 0;
  std::size_t samples = 0;
  std::size_t defect_threshold = 0;  // rank <= ceil(n/3) - alpha counts
  std::size_t defect_count = 0;
  double empirical_freq = 0.0;
  double clopper_pearson_ucl = 0.0;  // one-sided 99% upper limit
  double paper_bound = 0.0;          // 2^((1/2 - C/6) n)
};

// Monte Carlo frequency of rank(M(ceil(n/3), ceil(n/2); p)) falling at
// least alpha below its maximum, next to the 2^((1/2-C/6)n) tail bound.
DefectTailResult defect_tail_experiment(const DefectTailConfig& cfg);

struct DenseSweepRecord {
  std::size_t n = 0;
  double p = 0.5;
  double C = 0.0;
  double alpha = 0.0;  // C / log2(1/eta), real-valued threshold offset
  std::size_t samples = 0;
  std::size_t hit_count = 0;  // rw <= ceil(n/3) - alpha
  double empirical_freq = 0.0;
  double clopper_pearson_ucl = 0.0;
  double paper_bound = 0.0;  // 2^(-0.015 n), asymptotic and near-vacuous here
};

// Exact rank-width of G(n,p) samples versus the ceil(n/3) - C/log2(1/eta)
// defect threshold.  Purely descriptive: both columns are reported, nothing
// is asserted against the asymptotic bound.
std::vector<DenseSweepRecord> dense_defect_sweep(
    const std::vector<std::size_t>& n_list, double p, double C,
    std::size_t samples, std::uint64_t seed, std::size_t exact_cap);

// CSV with the shared schema
// n,p,C,alpha,samples,empirical_freq,clopper_pearson_ucl,paper_bound
void write_stats_csv(const std::vector<DefectTailResult>& rows,
                     std::ostream& out);
void write_stats_csv(const std::vector<DenseSweepRecord>& rows,
                     std::ostream& out);

}  // namespace rwidth
