#include "rwidth/matrix_stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "rwidth/errors.hpp"
#include "rwidth/graph.hpp"
#include "rwidth/prng.hpp"
#include "rwidth/width.hpp"

namespace rwidth {

namespace {

void check_model(const BiasedVectorModel& model) {
  if (!(model.p > 0.0) || !(model.p < 1.0))
    throw std::invalid_argument("BiasedVectorModel: p must lie in (0,1)");
}

// p^i for i = 0..n by repeated multiplication (no libm pow).
std::vector<double> power_table(double base, std::size_t n) {
  std::vector<double> t(n + 1);
  t[0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) t[i] = t[i - 1] * base;
  return t;
}

}  // namespace

double membership_probability(const BiasedVectorModel& model,
                              const Gf2Basis& basis) {
  check_model(model);
  if (basis.n_cols != model.n)
    throw std::invalid_argument("membership_probability: length mismatch");
  const std::size_t k = basis.dimension();
  if (k > kSpanEnumerationCap)
    throw capacity_error("membership_probability: dimension " +
                         std::to_string(k) + " exceeds cap " +
                         std::to_string(kSpanEnumerationCap));
  const std::size_t n = model.n;
  const auto pw_p = power_table(model.p, n);
  const auto pw_q = power_table(1.0 - model.p, n);
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> cur(words, 0);

  double sum = 0.0, comp = 0.0;  // Kahan accumulation
  const auto add = [&](double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };

  std::size_t wt = 0;
  add(pw_p[wt] * pw_q[n - wt]);  // the zero vector
  const std::uint64_t count = std::uint64_t(1) << k;
  for (std::uint64_t i = 1; i < count; ++i) {
    // Gray-code step: toggle one basis vector per iteration.
    const int flip = std::countr_zero(i);
    const auto& vec = basis.vectors[flip];
    for (std::size_t w = 0; w < words; ++w) cur[w] ^= vec[w];
    wt = 0;
    for (std::size_t w = 0; w < words; ++w) wt += std::popcount(cur[w]);
    add(pw_p[wt] * pw_q[n - wt]);
  }
  return sum;
}

MembershipBound check_membership_bound(const BiasedVectorModel& model,
                                       const Gf2Basis& basis) {
  MembershipBound out;
  out.probability = membership_probability(model, basis);
  const auto pw_eta = power_table(model.eta(), model.n);
  out.bound = pw_eta[model.n - basis.dimension()];
  out.holds = out.probability <= out.bound + 1e-12;
  return out;
}

BitMatrix sample_random_matrix(std::size_t k1, std::size_t k2, double p,
                               std::uint64_t seed) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("sample_random_matrix: p must lie in [0,1]");
  BitMatrix m(k1, k2);
  if (p <= 0.0) return m;
  if (p >= 1.0) {
    for (std::size_t i = 0; i < k1; ++i)
      for (std::size_t j = 0; j < k2; ++j) m.set(i, j, true);
    return m;
  }
  const std::uint64_t threshold = bernoulli_threshold(p);
  for (std::size_t i = 0; i < k1; ++i)
    for (std::size_t j = 0; j < k2; ++j)
      if (draw_at(seed, i * k2 + j) < threshold) m.set(i, j, true);
  return m;
}

double clopper_pearson_upper(std::size_t successes, std::size_t trials,
                             double confidence) {
  if (trials == 0 || successes >= trials) return 1.0;
  const double gamma = 1.0 - confidence;
  // P(Bin(trials, q) <= successes) in log space.
  const auto cdf = [&](double q) {
    const double lq = std::log(q), lq1 = std::log1p(-q);
    double acc = 0.0;
    for (std::size_t i = 0; i <= successes; ++i) {
      const double lc = std::lgamma(static_cast<double>(trials) + 1.0) -
                        std::lgamma(static_cast<double>(i) + 1.0) -
                        std::lgamma(static_cast<double>(trials - i) + 1.0);
      acc += std::exp(lc + static_cast<double>(i) * lq +
                      static_cast<double>(trials - i) * lq1);
    }
    return acc;
  };
  // cdf(q) is decreasing in q; find q with cdf(q) = gamma.
  double lo = static_cast<double>(successes) / static_cast<double>(trials);
  double hi = 1.0;
  if (lo <= 0.0) lo = 1e-18;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) > gamma)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

std::size_t DefectTailConfig::alpha() const {
  const double eta = p > 1.0 - p ? p : 1.0 - p;
  return static_cast<std::size_t>(std::ceil(C / std::log2(1.0 / eta)));
}

DefectTailResult defect_tail_experiment(const DefectTailConfig& cfg) {
  if (!(cfg.p > 0.0) || !(cfg.p < 1.0))
    throw std::invalid_argument("defect_tail_experiment: p must lie in (0,1)");
  if (!(cfg.C > 0.0))
    throw std::invalid_argument("defect_tail_experiment: C must be > 0");
  DefectTailResult res;
  res.n = cfg.n;
  res.p = cfg.p;
  res.C = cfg.C;
  res.alpha = cfg.alpha();
  res.samples = cfg.samples;
  const std::size_t k1 = (cfg.n + 2) / 3;
  const std::size_t k2 = (cfg.n + 1) / 2;
  if (res.alpha < 1 || k1 < res.alpha)
    throw std::invalid_argument(
        "defect_tail_experiment: ceil(n/3) - alpha must be nonnegative");
  res.defect_threshold = k1 - res.alpha;
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    const BitMatrix m =
        sample_random_matrix(k1, k2, cfg.p, derive_seed(cfg.seed, s));
    if (rank(m) <= res.defect_threshold) ++res.defect_count;
  }
  res.empirical_freq =
      cfg.samples ? static_cast<double>(res.defect_count) /
                        static_cast<double>(cfg.samples)
                  : 0.0;
  res.clopper_pearson_ucl =
      clopper_pearson_upper(res.defect_count, cfg.samples, 0.99);
  res.paper_bound = std::exp2((0.5 - cfg.C / 6.0) * static_cast<double>(cfg.n));
  return res;
}

std::vector<DenseSweepRecord> dense_defect_sweep(
    const std::vector<std::size_t>& n_list, double p, double C,
    std::size_t samples, std::uint64_t seed, std::size_t exact_cap) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("dense_defect_sweep: p must lie in (0,1)");
  std::vector<DenseSweepRecord> out;
  const double eta = p > 1.0 - p ? p : 1.0 - p;
  std::uint64_t sample_counter = 0;
  for (std::size_t n : n_list) {
    DenseSweepRecord rec;
    rec.n = n;
    rec.p = p;
    rec.C = C;
    rec.alpha = C / std::log2(1.0 / eta);
    rec.samples = samples;
    const double threshold =
        static_cast<double>((n + 2) / 3) - rec.alpha;  // can be negative
    for (std::size_t s = 0; s < samples; ++s) {
      const Graph g =
          sample_gnp({n, p, derive_seed(seed, sample_counter++)});
      const std::size_t rw = rank_width(g, false, exact_cap).width;
      if (static_cast<double>(rw) <= threshold) ++rec.hit_count;
    }
    rec.empirical_freq =
        samples ? static_cast<double>(rec.hit_count) / static_cast<double>(samples)
                : 0.0;
    rec.clopper_pearson_ucl = clopper_pearson_upper(rec.hit_count, samples, 0.99);
    rec.paper_bound = std::exp2(-0.015 * static_cast<double>(n));
    out.push_back(rec);
  }
  return out;
}

namespace {

void csv_header(std::ostream& out) {
  out << "n,p,C,alpha,samples,empirical_freq,clopper_pearson_ucl,paper_bound\n";
}

void csv_double(std::ostream& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_stats_csv(const std::vector<DefectTailResult>& rows,
                     std::ostream& out) {
  csv_header(out);
  for (const auto& r : rows) {
    out << r.n << ',';
    csv_double(out, r.p);
    out << ',';
    csv_double(out, r.C);
    out << ',' << r.alpha << ',' << r.samples << ',';
    csv_double(out, r.empirical_freq);
    out << ',';
    csv_double(out, r.clopper_pearson_ucl);
    out << ',';
    csv_double(out, r.paper_bound);
    out << '\n';
  }
}

void write_stats_csv(const std::vector<DenseSweepRecord>& rows,
                     std::ostream& out) {
  csv_header(out);
  for (const auto& r : rows) {
    out << r.n << ',';
    csv_double(out, r.p);
    out << ',';
    csv_double(out, r.C);
    out << ',';
    csv_double(out, r.alpha);
    out << ',' << r.samples << ',';
    csv_double(out, r.empirical_freq);
    out << ',';
    csv_double(out, r.clopper_pearson_ucl);
    out << ',';
    csv_double(out, r.paper_bound);
    out << '\n';
  }
}

}  // namespace rwidth
