#include "rwidth/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rwidth/errors.hpp"
#include "rwidth/expansion.hpp"
#include "rwidth/prng.hpp"

namespace rwidth {

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Dense: return "dense";
    case Regime::NearDense: return "neardense";
    case Regime::Supercritical: return "supercritical";
    case Regime::Critical: return "critical";
    case Regime::Subcritical: return "subcritical";
  }
  throw std::logic_error("regime_name: bad regime");
}

Regime regime_from_name(const std::string& name) {
  if (name == "dense") return Regime::Dense;
  if (name == "neardense") return Regime::NearDense;
  if (name == "supercritical") return Regime::Supercritical;
  if (name == "critical") return Regime::Critical;
  if (name == "subcritical") return Regime::Subcritical;
  throw std::invalid_argument("unknown regime: " + name);
}

namespace {

struct ComponentSummary {
  std::vector<VertexSet> comps;
  std::size_t largest = 0;
  bool all_simple = true;
};

ComponentSummary summarize_components(const Graph& g) {
  ComponentSummary s;
  s.comps = components(g);
  for (const auto& comp : s.comps) {
    s.largest = std::max(s.largest, comp.size());
    std::uint64_t deg_sum = 0;
    for (std::uint32_t v : comp) deg_sum += g.degree(v);
    if (deg_sum / 2 > comp.size()) s.all_simple = false;
  }
  return s;
}

// Length of the unique cycle of a unicyclic component: BFS tree plus the
// single non-tree edge, joined at the lowest common ancestor.
std::size_t unicyclic_cycle_length(const Graph& g, const VertexSet& comp) {
  std::vector<std::int64_t> depth(g.vertex_count(), -1);
  std::vector<std::uint32_t> parent(g.vertex_count(), UINT32_MAX);
  std::vector<std::uint32_t> queue{comp.front()};
  depth[comp.front()] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    g.for_each_neighbor(v, [&](std::uint32_t u) {
      if (depth[u] < 0) {
        depth[u] = depth[v] + 1;
        parent[u] = v;
        queue.push_back(u);
      }
    });
  }
  std::uint32_t ea = UINT32_MAX, eb = UINT32_MAX;
  for (std::uint32_t v : comp) {
    g.for_each_neighbor(v, [&](std::uint32_t u) {
      if (v < u && parent[u] != v && parent[v] != u) {
        ea = v;
        eb = u;
      }
    });
    if (ea != UINT32_MAX) break;
  }
  if (ea == UINT32_MAX)
    throw std::logic_error("unicyclic_cycle_length: no cycle found");
  std::size_t len = 1;
  std::uint32_t a = ea, b = eb;
  while (a != b) {
    if (depth[a] >= depth[b])
      a = parent[a];
    else
      b = parent[b];
    ++len;
  }
  return len;
}

// Exact per-component widths.  Trees and unicyclic components are resolved
// by the classification rule at any size: a tree has rank-width 1 (0 for a
// lone vertex), and a unicyclic component has rank-width 2 exactly when its
// cycle is an induced C5 or longer (house, gem, and domino all need more
// edges than vertices, so only the cycle itself can break the rank-width-1
// characterization), with treewidth 2 always.  Complex components run the
// subset DP when they fit the cap and are unknown (-1) beyond it.
struct ComponentWidths {
  long long rw = -1;
  long long tw = -1;
};

ComponentWidths component_widths(const Graph& g, const VertexSet& comp,
                                 std::size_t cap) {
  ComponentWidths w;
  if (comp.size() == 1) {
    w.rw = 0;
    w.tw = 0;
    return w;
  }
  std::uint64_t deg_sum = 0;
  for (std::uint32_t v : comp) deg_sum += g.degree(v);
  const std::uint64_t edges = deg_sum / 2;
  if (edges == comp.size() - 1) {  // tree
    w.rw = 1;
    w.tw = 1;
    return w;
  }
  if (edges == comp.size()) {  // unicyclic
    w.rw = unicyclic_cycle_length(g, comp) >= 5 ? 2 : 1;
    w.tw = 2;
    return w;
  }
  if (comp.size() <= cap) {
    const Graph h = induced_subgraph(g, comp);
    w.rw = static_cast<long long>(rank_width(h, false, cap).width);
    w.tw = static_cast<long long>(tree_width(h, cap));
  }
  return w;
}

long long combine_width(long long acc, long long next) {
  if (acc < 0 || next < 0) return -1;
  return std::max(acc, next);
}

unsigned resolve_threads(unsigned requested, std::size_t samples) {
  unsigned t = requested ? requested : std::thread::hardware_concurrency();
  if (t == 0) t = 1;
  if (samples && t > samples) t = static_cast<unsigned>(samples);
  return t;
}

template <typename PerSample>
std::vector<ExperimentRecord> run_samples(const RegimeConfig& cfg, double p,
                                          PerSample&& per_sample) {
  std::vector<ExperimentRecord> records(cfg.samples);
  const unsigned threads = resolve_threads(cfg.threads, cfg.samples);
  // When a single sample gets the whole machine, let the sampler fan out.
  const unsigned inner_threads = cfg.samples == 1 ? threads : 1;
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.samples) return;
      const auto t0 = std::chrono::steady_clock::now();
      ExperimentRecord rec;
      rec.regime = regime_name(cfg.regime);
      rec.n = cfg.n;
      rec.p = p;
      rec.seed = derive_seed(cfg.seed, i);
      rec.sample_index = i;
      rec.ceil_n3 = (cfg.n + 2) / 3;
      per_sample(rec, inner_threads);
      if (rec.rw >= 0)
        rec.gap = static_cast<long long>(rec.ceil_n3) - rec.rw;
      if (cfg.measure_runtime)
        rec.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
      records[i] = std::move(rec);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

}  // namespace

std::vector<ExperimentRecord> run_dense(const RegimeConfig& cfg) {
  double p = cfg.p;
  if (cfg.regime == Regime::NearDense) {
    if (p < 0.0) p = 1.0 / std::sqrt(static_cast<double>(cfg.n));
    if (!(p > 0.0) || p > 0.5)
      throw std::invalid_argument("neardense regime needs 0 < p <= 1/2");
  } else {
    if (!(p > 0.0) || !(p < 1.0))
      throw std::invalid_argument("dense regime needs constant p in (0,1)");
  }
  if (cfg.n > cfg.exact_width_cap)
    throw capacity_error("run_dense: n = " + std::to_string(cfg.n) +
                         " exceeds exact width cap " +
                         std::to_string(cfg.exact_width_cap));
  return run_samples(cfg, p, [&, p](ExperimentRecord& rec, unsigned) {
    const Graph g = sample_gnp({cfg.n, p, rec.seed}, 1);
    rec.rw = static_cast<long long>(
        rank_width(g, false, cfg.exact_width_cap).width);
    rec.tw = static_cast<long long>(tree_width(g, cfg.exact_width_cap));
    const ComponentSummary s = summarize_components(g);
    rec.largest_component = s.largest;
    rec.all_simple = s.all_simple;
  });
}

std::vector<ExperimentRecord> run_subcritical(const RegimeConfig& cfg) {
  if (cfg.c < 0.0 || cfg.c >= 1.0)
    throw std::invalid_argument("subcritical regime needs 0 <= c < 1");
  const double p = cfg.n ? cfg.c / static_cast<double>(cfg.n) : 0.0;
  return run_samples(cfg, p, [&, p](ExperimentRecord& rec, unsigned inner) {
    const Graph g = sample_gnp({cfg.n, p, rec.seed}, inner);
    const ComponentSummary s = summarize_components(g);
    rec.largest_component = s.largest;
    rec.all_simple = s.all_simple;
    long long rw = 0, tw = 0;
    for (const auto& comp : s.comps) {
      const ComponentWidths w = component_widths(g, comp, cfg.exact_width_cap);
      rw = combine_width(rw, w.rw);
      tw = combine_width(tw, w.tw);
    }
    rec.rw = rw;
    rec.tw = tw;
  });
}

std::vector<ExperimentRecord> run_critical(const RegimeConfig& cfg) {
  if (cfg.c != 1.0)
    throw std::invalid_argument("critical regime needs c = 1");
  const double p = cfg.n ? 1.0 / static_cast<double>(cfg.n) : 0.0;
  return run_samples(cfg, p, [&, p](ExperimentRecord& rec, unsigned inner) {
    const Graph g = sample_gnp({cfg.n, p, rec.seed}, inner);
    const ComponentSummary s = summarize_components(g);
    rec.largest_component = s.largest;
    rec.all_simple = s.all_simple;
    long long rw = 0, tw = 0;
    for (const auto& comp : s.comps) {
      const ComponentWidths w = component_widths(g, comp, cfg.exact_width_cap);
      rw = combine_width(rw, w.rw);
      tw = combine_width(tw, w.tw);
    }
    rec.rw = rw;
    rec.tw = tw;
  });
}

namespace {

// Maximal induced subgraph of minimum degree >= 2, vertices in original ids.
// Empty when the component is a tree.  Connected whenever comp is.
VertexSet two_core(const Graph& g, const VertexSet& comp) {
  std::vector<std::uint32_t> deg(g.vertex_count(), 0);
  std::vector<char> member(g.vertex_count(), 0);
  for (std::uint32_t v : comp) member[v] = 1;
  for (std::uint32_t v : comp) {
    std::uint32_t d = 0;
    g.for_each_neighbor(v, [&](std::uint32_t u) { d += member[u]; });
    deg[v] = d;
  }
  std::vector<std::uint32_t> queue;
  std::vector<char> removed(g.vertex_count(), 0);
  for (std::uint32_t v : comp)
    if (deg[v] < 2) queue.push_back(v);
  while (!queue.empty()) {
    const std::uint32_t v = queue.back();
    queue.pop_back();
    if (removed[v]) continue;
    removed[v] = 1;
    g.for_each_neighbor(v, [&](std::uint32_t u) {
      if (member[u] && !removed[u] && --deg[u] < 2) queue.push_back(u);
    });
  }
  VertexSet core;
  for (std::uint32_t v : comp)
    if (!removed[v]) core.push_back(v);
  return core;
}

// First `limit` vertices of a breadth-first search inside G[core] from the
// max-core-degree vertex (ties to the lowest id); a BFS prefix is connected.
VertexSet bfs_ball(const Graph& g, const VertexSet& core, std::size_t limit) {
  std::vector<char> in_core(g.vertex_count(), 0);
  for (std::uint32_t v : core) in_core[v] = 1;
  std::uint32_t root = core.front();
  std::size_t best_deg = 0;
  for (std::uint32_t v : core) {
    std::size_t d = 0;
    g.for_each_neighbor(v, [&](std::uint32_t u) { d += in_core[u]; });
    if (d > best_deg) {
      best_deg = d;
      root = v;
    }
  }
  VertexSet ball;
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::uint32_t> queue{root};
  seen[root] = 1;
  for (std::size_t head = 0; head < queue.size() && ball.size() < limit; ++head) {
    const std::uint32_t v = queue[head];
    ball.push_back(v);
    g.for_each_neighbor(v, [&](std::uint32_t u) {
      if (in_core[u] && !seen[u]) {
        seen[u] = 1;
        queue.push_back(u);
      }
    });
  }
  std::sort(ball.begin(), ball.end());
  return ball;
}

}  // namespace

std::vector<ExperimentRecord> run_supercritical(const RegimeConfig& cfg) {
  if (!(cfg.c > 1.0))
    throw std::invalid_argument("supercritical regime needs c > 1");
  const double p = cfg.n ? cfg.c / static_cast<double>(cfg.n) : 0.0;
  return run_samples(cfg, p, [&, p](ExperimentRecord& rec, unsigned inner) {
    const Graph g = sample_gnp({cfg.n, p, rec.seed}, inner);
    const ComponentSummary s = summarize_components(g);
    rec.largest_component = s.largest;
    rec.all_simple = s.all_simple;
    if (cfg.n <= cfg.exact_width_cap) {
      rec.rw = static_cast<long long>(
          rank_width(g, false, cfg.exact_width_cap).width);
      rec.tw = static_cast<long long>(tree_width(g, cfg.exact_width_cap));
    }
    rec.certified_lb = 0;
    const VertexSet* giant = nullptr;
    for (const auto& comp : s.comps)
      if (comp.size() == s.largest) {
        giant = &comp;
        break;
      }
    if (!giant || giant->size() < 2) return;
    const VertexSet core = two_core(g, *giant);
    if (core.size() < 2) return;
    const VertexSet ball = bfs_ball(g, core, kCheegerCap);
    if (ball.size() < 2) return;
    // Smallest degree cap whose filtered edges fit the alpha|W|/6 budget
    // maximizes the certified bound; M = max degree + 1 always fits.
    const Rational alpha = cheeger_exact(induced_subgraph(g, ball)).phi;
    const DegreeStats deg = degree_stats(g);
    std::vector<std::uint64_t> edges_with_max_deg(deg.max + 2, 0);
    g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
      edges_with_max_deg[std::max(deg.sequence[u], deg.sequence[v])]++;
    });
    std::vector<std::uint64_t> filtered(deg.max + 2, 0);  // E_X per M
    for (std::size_t m = deg.max + 1; m-- > 1;)
      filtered[m] = filtered[m + 1] + edges_with_max_deg[m];
    std::size_t chosen = deg.max + 1;
    for (std::size_t m = 1; m <= deg.max + 1; ++m) {
      const unsigned __int128 lhs = static_cast<unsigned __int128>(6) *
                                    filtered[m] *
                                    static_cast<std::uint64_t>(alpha.den());
      const unsigned __int128 rhs =
          static_cast<unsigned __int128>(alpha.num()) * ball.size();
      if (lhs <= rhs) {
        chosen = m;
        break;
      }
    }
    rec.certified_lb = static_cast<long long>(
        certified_rw_lower_bound(g, ball, chosen).bound);
  });
}

std::vector<ExperimentRecord> run_experiment(const RegimeConfig& cfg) {
  switch (cfg.regime) {
    case Regime::Dense:
    case Regime::NearDense: return run_dense(cfg);
    case Regime::Subcritical: return run_subcritical(cfg);
    case Regime::Critical: return run_critical(cfg);
    case Regime::Supercritical: return run_supercritical(cfg);
  }
  throw std::logic_error("run_experiment: bad regime");
}

namespace {

const char* kCsvHeader =
    "regime,n,p,seed,sample_index,rw,tw,ceil_n3,gap,largest_component,"
    "all_simple,certified_lb,runtime_ms";

}  // namespace

void write_records(const std::vector<ExperimentRecord>& records,
                   std::ostream& out) {
  out << kCsvHeader << '\n';
  char pbuf[64];
  for (const auto& r : records) {
    std::snprintf(pbuf, sizeof pbuf, "%.17g", r.p);
    out << r.regime << ',' << r.n << ',' << pbuf << ',' << r.seed << ','
        << r.sample_index << ',' << r.rw << ',' << r.tw << ',' << r.ceil_n3
        << ',' << r.gap << ',' << r.largest_component << ','
        << (r.all_simple ? 1 : 0) << ',' << r.certified_lb << ','
        << r.runtime_ms << '\n';
  }
}

void write_records(const std::vector<ExperimentRecord>& records,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  write_records(records, out);
  if (!out) throw io_error("write failed: " + path);
}

std::vector<ExperimentRecord> parse_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      (line != kCsvHeader && line != std::string(kCsvHeader) + "\r"))
    throw parse_error("bad or missing CSV header");
  std::vector<ExperimentRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 13)
      throw parse_error("line " + std::to_string(lineno) +
                        ": expected 13 fields, got " + std::to_string(f.size()));
    try {
      ExperimentRecord r;
      r.regime = f[0];
      r.n = std::stoull(f[1]);
      r.p = std::stod(f[2]);
      r.seed = std::stoull(f[3]);
      r.sample_index = std::stoull(f[4]);
      r.rw = std::stoll(f[5]);
      r.tw = std::stoll(f[6]);
      r.ceil_n3 = std::stoull(f[7]);
      r.gap = std::stoll(f[8]);
      r.largest_component = std::stoull(f[9]);
      r.all_simple = f[10] == "1";
      r.certified_lb = std::stoll(f[11]);
      r.runtime_ms = std::stoll(f[12]);
      out.push_back(std::move(r));
    } catch (const std::exception&) {
      throw parse_error("line " + std::to_string(lineno) + ": bad field value");
    }
  }
  return out;
}

}  // namespace rwidth
