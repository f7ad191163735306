#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rwidth/width.hpp"

namespace rwidth {

enum class Regime { Dense, NearDense, Supercritical, Critical, Subcritical };

std::string regime_name(Regime r);
Regime regime_from_name(const std::string& name);

struct RegimeConfig {
  Regime regime = Regime::Dense;
  std::size_t n = 0;
  double p = -1.0;  // dense/neardense; neardense defaults to 1/sqrt(n)
  double c = -1.0;  // sparse regimes use p = c/n
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  std::size_t exact_width_cap = kDefaultExactCap;
  unsigned threads = 0;  // 0 = hardware concurrency; never affects output
  // Off by default so that equal seeds give byte-identical CSV; when on,
  // wall-clock per-sample timings replace the -1 placeholder.
  bool measure_runtime = false;
};

// One CSV row.  Widths carry -1 when skipped, never omitted rows; the seed
// column is the per-sample derived seed, so any row can be reproduced with
// a single `gnp` invocation.
struct ExperimentRecord {
  std::string regime;
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::size_t sample_index = 0;
  long long rw = -1;
  long long tw = -1;
  std::size_t ceil_n3 = 0;
  long long gap = -1;  // ceil_n3 - rw, -1 when rw skipped
  std::size_t largest_component = 0;
  bool all_simple = false;  // every component is a tree or unicyclic
  long long certified_lb = -1;  // supercritical only; 0 = inapplicable
  long long runtime_ms = -1;

  bool operator==(const ExperimentRecord&) const = default;
};

// Exact widths per sample of G(n,p) with constant p (also serves the
// neardense regime at p ~ 1/sqrt(n)); n must be within the exact cap.
std::vector<ExperimentRecord> run_dense(const RegimeConfig& cfg);

// Sparse regime p = c/n, c < 1: component classification at full scale,
// rank-width from exact DP on small components and from the tree/unicyclic
// rule on large ones.
std::vector<ExperimentRecord> run_subcritical(const RegimeConfig& cfg);

// Critical window p = 1/n: largest-component trend data.
std::vector<ExperimentRecord> run_critical(const RegimeConfig& cfg);

// Supercritical p = c/n, c > 1: certified rank-width lower bound on a
// breadth-first ball of the giant component's 2-core (heuristic candidate
// for an expander core; the certificate itself is unconditionally sound).
std::vector<ExperimentRecord> run_supercritical(const RegimeConfig& cfg);

std::vector<ExperimentRecord> run_experiment(const RegimeConfig& cfg);

void write_records(const std::vector<ExperimentRecord>& records,
                   std::ostream& out);
void write_records(const std::vector<ExperimentRecord>& records,
                   const std::string& path);
std::vector<ExperimentRecord> parse_records(std::istream& in);

}  // namespace rwidth
