// rwidth: exact graph width parameters, expansion certificates, and seeded
// random-graph experiments from the command line.
//
// Exit codes: 0 success, 1 usage error, 2 capacity error, 3 I/O or parse
// error.  Every run echoes its resolved configuration (seed included) to
// stderr.  The default seed comes from the RWIDTH_SEED environment variable
// when set; an explicit --seed always wins.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rwidth/errors.hpp"
#include "rwidth/expansion.hpp"
#include "rwidth/experiments.hpp"
#include "rwidth/graph.hpp"
#include "rwidth/matrix_stats.hpp"
#include "rwidth/prng.hpp"
#include "rwidth/width.hpp"

namespace {

using nlohmann::json;

// Key/value output in the selected format: "key: value" lines (human),
// a two-line CSV, or a single JSON object line.
struct Output {
  std::string format = "human";
  std::vector<std::pair<std::string, json>> fields;

  void add(const std::string& key, json value) {
    fields.emplace_back(key, std::move(value));
  }

  static std::string flat(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const auto& e : v) {
        if (!s.empty()) s += ' ';
        s += flat(e);
      }
      return s;
    }
    return v.dump();
  }

  void print(std::ostream& out) const {
    if (format == "json-lines") {
      json obj = json::object();
      for (const auto& [k, v] : fields) obj[k] = v;
      out << obj.dump() << '\n';
    } else if (format == "csv") {
      std::string keys, values;
      for (const auto& [k, v] : fields) {
        if (!keys.empty()) {
          keys += ',';
          values += ',';
        }
        keys += k;
        values += flat(v);
      }
      out << keys << '\n' << values << '\n';
    } else {
      for (const auto& [k, v] : fields) out << k << ": " << flat(v) << '\n';
    }
  }
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RWIDTH_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    throw std::invalid_argument("RWIDTH_SEED is not an unsigned integer");
  }
  return 0;
}

rwidth::VertexSet parse_vertex_list(const std::string& text) {
  rwidth::VertexSet out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
    if (!end || *end != '\0')
      throw std::invalid_argument("bad vertex list entry: " + tok);
    out.push_back(static_cast<std::uint32_t>(v));
  }
  if (out.empty()) throw std::invalid_argument("empty vertex list");
  return out;
}

void echo_config(const std::string& line) { std::cerr << "config: " << line << '\n'; }

json rational_json(const rwidth::Rational& r) { return r.to_string(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rank-width, treewidth, expansion certificates, and "
               "seeded random-graph experiments"};
  app.require_subcommand(1);

  std::string format = "human";
  const auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"human", "csv", "json-lines"}))
        ->capture_default_str();
  };

  // ---- gnp ----------------------------------------------------------
  auto* gnp = app.add_subcommand("gnp", "sample G(n,p) to an edge-list file");
  add_format(gnp);
  std::size_t gnp_n = 0;
  double gnp_p = 0.0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_path;
  gnp->add_option("--n", gnp_n, "vertex count")->required();
  gnp->add_option("--p", gnp_p, "edge probability")->required();
  gnp->add_option("--seed", seed, "PRNG seed")->each([&](const std::string&) {
    seed_given = true;
  });
  gnp->add_option("--out", out_path, "output edge-list path")->required();
  gnp->callback([&] {
    if (!seed_given) seed = default_seed();
    echo_config("cmd=gnp n=" + std::to_string(gnp_n) +
                " p=" + std::to_string(gnp_p) +
                " seed=" + std::to_string(seed) + " out=" + out_path);
    const rwidth::Graph g = rwidth::sample_gnp({gnp_n, gnp_p, seed});
    rwidth::write_graph(g, out_path);
    Output o{format};
    o.add("n", g.vertex_count());
    o.add("edges", g.edge_count());
    o.add("seed", seed);
    o.print(std::cout);
  });

  // ---- rw -----------------------------------------------------------
  auto* rw = app.add_subcommand("rw", "exact rank-width of a graph file");
  add_format(rw);
  std::string rw_file;
  std::size_t cap = rwidth::kDefaultExactCap;
  std::string tree_out;
  bool full_report = false;
  rw->add_option("file", rw_file, "edge-list file")->required();
  rw->add_option("--cap", cap, "exact DP vertex cap")->capture_default_str();
  rw->add_option("--tree-out", tree_out, "write an optimal decomposition here");
  rw->add_flag("--full", full_report, "also print treewidth and clique-width bounds");
  rw->callback([&] {
    echo_config("cmd=rw file=" + rw_file + " cap=" + std::to_string(cap));
    const rwidth::Graph g = rwidth::read_graph(rw_file);
    Output o{format};
    if (full_report) {
      const rwidth::WidthReport rep = rwidth::width_report(g, cap);
      o.add("rank_width", rep.rank_width);
      o.add("tree_width", rep.tree_width);
      o.add("cw_lower", rep.cw_lower);
      o.add("cw_upper", rep.cw_upper);
      if (!tree_out.empty() && rep.decomposition) {
        std::ofstream f(tree_out);
        if (!f) throw rwidth::io_error("cannot open " + tree_out + " for writing");
        rwidth::write_decomposition(*rep.decomposition, f);
      }
    } else {
      const bool want_tree = !tree_out.empty();
      const rwidth::WidthResult res = rwidth::rank_width(g, want_tree, cap);
      o.add("rank_width", res.width);
      if (want_tree && res.decomposition) {
        std::ofstream f(tree_out);
        if (!f) throw rwidth::io_error("cannot open " + tree_out + " for writing");
        rwidth::write_decomposition(*res.decomposition, f);
      }
    }
    o.print(std::cout);
  });

  // ---- tw -----------------------------------------------------------
  auto* tw = app.add_subcommand("tw", "exact treewidth of a graph file");
  add_format(tw);
  std::string tw_file;
  tw->add_option("file", tw_file, "edge-list file")->required();
  tw->add_option("--cap", cap, "exact DP vertex cap")->capture_default_str();
  tw->callback([&] {
    echo_config("cmd=tw file=" + tw_file + " cap=" + std::to_string(cap));
    const rwidth::Graph g = rwidth::read_graph(tw_file);
    Output o{format};
    o.add("tree_width", rwidth::tree_width(g, cap));
    o.print(std::cout);
  });

  // ---- cutrank ------------------------------------------------------
  auto* cr = app.add_subcommand("cutrank", "GF(2) cutrank between two vertex sets");
  add_format(cr);
  std::string cr_file, cr_v1, cr_v2;
  cr->add_option("file", cr_file, "edge-list file")->required();
  cr->add_option("--v1", cr_v1, "comma-separated vertex set")->required();
  cr->add_option("--v2", cr_v2, "comma-separated vertex set")->required();
  cr->callback([&] {
    echo_config("cmd=cutrank file=" + cr_file + " v1=" + cr_v1 + " v2=" + cr_v2);
    const rwidth::Graph g = rwidth::read_graph(cr_file);
    Output o{format};
    o.add("cutrank", rwidth::cutrank(g, parse_vertex_list(cr_v1),
                                     parse_vertex_list(cr_v2)));
    o.print(std::cout);
  });

  // ---- cheeger ------------------------------------------------------
  auto* ch = app.add_subcommand("cheeger", "exact Cheeger constant (both definitions)");
  add_format(ch);
  std::string ch_file;
  ch->add_option("file", ch_file, "edge-list file")->required();
  ch->callback([&] {
    echo_config("cmd=cheeger file=" + ch_file);
    const rwidth::Graph g = rwidth::read_graph(ch_file);
    const rwidth::ExpansionReport rep = rwidth::cheeger_exact(g);
    const rwidth::Rational alt = rwidth::cheeger_alternative(g);
    Output o{format};
    o.add("phi", rational_json(rep.phi));
    o.add("phi_alternative", rational_json(alt));
    o.add("definitions_agree", rep.phi == alt);
    o.add("witness", rep.witness);
    o.add("cut_edges", rep.cut_edges);
    o.add("d_S", rep.d_s);
    o.add("d_complement", rep.d_comp);
    o.print(std::cout);
  });

  // ---- separate -----------------------------------------------------
  auto* sep = app.add_subcommand(
      "separate", "balanced separation extracted from an optimal decomposition");
  add_format(sep);
  std::string sep_file;
  sep->add_option("file", sep_file, "edge-list file")->required();
  sep->add_option("--cap", cap, "exact DP vertex cap")->capture_default_str();
  sep->callback([&] {
    echo_config("cmd=separate file=" + sep_file + " cap=" + std::to_string(cap));
    const rwidth::Graph g = rwidth::read_graph(sep_file);
    const rwidth::WidthResult res = rwidth::rank_width(g, true, cap);
    if (!res.decomposition)
      throw std::invalid_argument("separate: graph needs >= 2 vertices");
    const rwidth::Separation s =
        rwidth::balanced_separation(g, *res.decomposition);
    Output o{format};
    o.add("rank_width", res.width);
    o.add("v1", s.v1);
    o.add("v2", s.v2);
    o.add("rho", s.rho);
    o.print(std::cout);
  });

  // ---- certify ------------------------------------------------------
  auto* cert = app.add_subcommand(
      "certify", "rank-width lower-bound certificate from an expander core");
  add_format(cert);
  std::string cert_file, cert_core, cert_out;
  std::size_t cert_cap = 0;
  cert->add_option("file", cert_file, "edge-list file")->required();
  cert->add_option("--core", cert_core, "comma-separated core vertex set")->required();
  cert->add_option("--cap", cert_cap, "degree cap M")->required();
  cert->add_option("--out", cert_out, "also write the audit block to this path");
  cert->callback([&] {
    echo_config("cmd=certify file=" + cert_file + " core=" + cert_core +
                " cap=" + std::to_string(cert_cap));
    const rwidth::Graph g = rwidth::read_graph(cert_file);
    const rwidth::Certificate c = rwidth::certified_rw_lower_bound(
        g, parse_vertex_list(cert_core), cert_cap);
    if (!cert_out.empty()) {
      std::ofstream f(cert_out);
      if (!f) throw rwidth::io_error("cannot open " + cert_out + " for writing");
      rwidth::write_certificate(c, f);
    }
    if (format == "human") {
      rwidth::write_certificate(c, std::cout);
    } else {
      Output o{format};
      o.add("core", c.core);
      o.add("alpha", rational_json(c.alpha));
      o.add("delta", rational_json(c.delta));
      o.add("degree_cap", c.degree_cap);
      o.add("filtered_edge_count", c.filtered_edge_count);
      o.add("bound", c.bound);
      o.print(std::cout);
    }
  });

  // ---- matrix-stats -------------------------------------------------
  auto* ms = app.add_subcommand("matrix-stats",
                                "random-matrix probability experiments");
  add_format(ms);
  std::string ms_mode;
  std::size_t ms_n = 12, ms_samples = 200;
  double ms_p = 0.5, ms_c = 12.6;
  std::string ms_nlist;
  ms->add_option("--mode", ms_mode, "prop1 | tail | sweep")
      ->required()
      ->check(CLI::IsMember({"prop1", "tail", "sweep"}));
  ms->add_option("--n", ms_n, "vector length / matrix scale")->capture_default_str();
  ms->add_option("--p", ms_p, "entry probability")->capture_default_str();
  ms->add_option("--C", ms_c, "defect constant")->capture_default_str();
  ms->add_option("--samples", ms_samples, "sample count")->capture_default_str();
  ms->add_option("--seed", seed, "PRNG seed")->each([&](const std::string&) {
    seed_given = true;
  });
  ms->add_option("--n-list", ms_nlist, "comma-separated n values (sweep mode)");
  ms->add_option("--cap", cap, "exact DP vertex cap (sweep mode)")
      ->capture_default_str();
  ms->callback([&] {
    if (!seed_given) seed = default_seed();
    echo_config("cmd=matrix-stats mode=" + ms_mode + " n=" + std::to_string(ms_n) +
                " p=" + std::to_string(ms_p) + " C=" + std::to_string(ms_c) +
                " samples=" + std::to_string(ms_samples) +
                " seed=" + std::to_string(seed));
    if (ms_mode == "prop1") {
      // Membership-probability bound on random subspaces of random dimension.
      rwidth::SplitMix64 gen(seed);
      std::size_t violations = 0;
      double max_ratio = 0.0;
      const std::size_t kcap = std::min<std::size_t>(ms_n, 12);
      for (std::size_t s = 0; s < ms_samples; ++s) {
        const std::size_t k = gen.next_below(kcap + 1);
        rwidth::Gf2Basis basis;
        for (;;) {
          const rwidth::BitMatrix m =
              rwidth::sample_random_matrix(k, ms_n, 0.5, gen.next());
          basis = rwidth::echelonize(m);
          if (basis.dimension() == k) break;
        }
        const auto res = rwidth::check_membership_bound({ms_n, ms_p}, basis);
        if (!res.holds) ++violations;
        if (res.bound > 0)
          max_ratio = std::max(max_ratio, res.probability / res.bound);
      }
      Output o{format};
      o.add("n", ms_n);
      o.add("p", ms_p);
      o.add("samples", ms_samples);
      o.add("violations", violations);
      o.add("max_probability_over_bound", max_ratio);
      o.print(std::cout);
    } else if (ms_mode == "tail") {
      rwidth::DefectTailConfig cfg;
      cfg.n = ms_n;
      cfg.p = ms_p;
      cfg.C = ms_c;
      cfg.samples = ms_samples;
      cfg.seed = seed;
      const auto res = rwidth::defect_tail_experiment(cfg);
      if (format == "human") {
        Output o{format};
        o.add("n", res.n);
        o.add("p", res.p);
        o.add("C", res.C);
        o.add("alpha", res.alpha);
        o.add("defect_threshold_rank", res.defect_threshold);
        o.add("samples", res.samples);
        o.add("defects", res.defect_count);
        o.add("empirical_freq", res.empirical_freq);
        o.add("clopper_pearson_ucl", res.clopper_pearson_ucl);
        o.add("paper_bound", res.paper_bound);
        o.print(std::cout);
      } else {
        rwidth::write_stats_csv(std::vector<rwidth::DefectTailResult>{res},
                                std::cout);
      }
    } else {  // sweep
      std::vector<std::size_t> ns;
      if (ms_nlist.empty()) throw std::invalid_argument("sweep mode needs --n-list");
      for (std::uint32_t v : parse_vertex_list(ms_nlist)) ns.push_back(v);
      const auto rows =
          rwidth::dense_defect_sweep(ns, ms_p, ms_c, ms_samples, seed, cap);
      rwidth::write_stats_csv(rows, std::cout);
    }
  });

  // ---- experiment ---------------------------------------------------
  auto* ex = app.add_subcommand("experiment", "seeded regime experiment, CSV out");
  add_format(ex);
  std::string ex_regime;
  rwidth::RegimeConfig ex_cfg;
  std::string ex_out;
  bool ex_timings = false;
  unsigned ex_threads = 0;
  ex->add_option("--regime", ex_regime,
                 "dense | neardense | supercritical | critical | subcritical")
      ->required();
  ex->add_option("--n", ex_cfg.n, "vertex count")->required();
  ex->add_option("--p", ex_cfg.p, "edge probability (dense/neardense)");
  ex->add_option("--c", ex_cfg.c, "p = c/n (sparse regimes)");
  ex->add_option("--samples", ex_cfg.samples, "sample count")->capture_default_str();
  ex->add_option("--seed", seed, "PRNG seed")->each([&](const std::string&) {
    seed_given = true;
  });
  ex->add_option("--cap", ex_cfg.exact_width_cap, "exact width cap")
      ->capture_default_str();
  ex->add_option("--threads", ex_threads, "worker count (0 = hardware)");
  ex->add_flag("--timings", ex_timings,
               "record wall-clock runtime_ms (breaks byte-identical reruns)");
  ex->add_option("--out", ex_out, "CSV path (default: stdout)");
  ex->callback([&] {
    if (!seed_given) seed = default_seed();
    ex_cfg.regime = rwidth::regime_from_name(ex_regime);
    ex_cfg.seed = seed;
    ex_cfg.threads = ex_threads;
    ex_cfg.measure_runtime = ex_timings;
    echo_config("cmd=experiment regime=" + ex_regime + " n=" + std::to_string(ex_cfg.n) +
                " p=" + std::to_string(ex_cfg.p) + " c=" + std::to_string(ex_cfg.c) +
                " samples=" + std::to_string(ex_cfg.samples) +
                " seed=" + std::to_string(seed) +
                " cap=" + std::to_string(ex_cfg.exact_width_cap) +
                " threads=" + std::to_string(ex_threads));
    const auto records = rwidth::run_experiment(ex_cfg);
    if (ex_out.empty())
      rwidth::write_records(records, std::cout);
    else
      rwidth::write_records(records, ex_out);
    if (ex_cfg.regime == rwidth::Regime::Critical && ex_cfg.n > 0) {
      // descriptive trend: largest component against the n^(2/3) scale
      const double scale = std::cbrt(static_cast<double>(ex_cfg.n) *
                                     static_cast<double>(ex_cfg.n));
      double sum = 0.0, mx = 0.0;
      for (const auto& r : records) {
        const double ratio = static_cast<double>(r.largest_component) / scale;
        sum += ratio;
        mx = std::max(mx, ratio);
      }
      std::cerr << "largest_component / n^(2/3): mean="
                << sum / static_cast<double>(records.size()) << " max=" << mx
                << '\n';
    }
  });

  // ---- tail-threshold -------------------------------------------------
  auto* tt = app.add_subcommand("tail-threshold",
                                "smallest M with tail sum below eps/2");
  add_format(tt);
  double tt_c = 2.0, tt_eps = 1.0;
  tt->add_option("--c", tt_c, "growth constant, > 1")->required();
  tt->add_option("--eps", tt_eps, "edge budget epsilon")->required();
  tt->callback([&] {
    echo_config("cmd=tail-threshold c=" + std::to_string(tt_c) +
                " eps=" + std::to_string(tt_eps));
    const std::size_t m = rwidth::degree_tail_threshold(tt_c, tt_eps);
    const double tail = rwidth::degree_tail_sum_upper(tt_c, m);
    Output o{format};
    o.add("M", m);
    o.add("tail_at_M", tail);
    o.add("eps_over_2", tt_eps / 2.0);
    o.add("margin_10x", tail * 10.0 < tt_eps / 2.0);
    o.print(std::cout);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const rwidth::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 2;
  } catch (const rwidth::parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const rwidth::io_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
