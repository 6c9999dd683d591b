#include "mpcvc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "mpcvc/errors.hpp"
#include "mpcvc/random_structures.hpp"

namespace mpcvc {

using nlohmann::json;

namespace {

template <typename F>
void parallel_for(int threads, std::size_t count, F&& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t t =
      std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (std::size_t w = 0; w < t; ++w)
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += t) body(i);
    });
  for (auto& th : pool) th.join();
}

Graph load_graph(const ExperimentConfig& cfg, RngSeed run_seed) {
  if (!cfg.graph_file.empty() && !cfg.gen_spec.empty())
    throw ParameterError("graph file and generator spec are mutually exclusive");
  if (!cfg.graph_file.empty()) return read_graph_file(cfg.graph_file);
  if (!cfg.gen_spec.empty()) return graph_from_spec(cfg.gen_spec, run_seed.derive(1));
  throw ParameterError("no graph source: pass --graph or --gen");
}

json config_echo(const ExperimentConfig& cfg) {
  // threads deliberately omitted: reports must not depend on worker count
  return json{{"command", command_name(cfg.command)},
              {"graph_file", cfg.graph_file},
              {"gen", cfg.gen_spec},
              {"s", cfg.s},
              {"c_scale", cfg.c_scale},
              {"c_audit", cfg.c_audit},
              {"final_mode", cfg.final_mode == FinalPhaseMode::single_machine
                                 ? "single"
                                 : "iterated"},
              {"seed_lo", cfg.seed_lo},
              {"seed_hi", cfg.seed_hi},
              {"format", cfg.format}};
}

MpcConfig mpc_config(const ExperimentConfig& cfg, RngSeed run_seed, int threads) {
  MpcConfig mc;
  mc.s = cfg.s;
  mc.c_scale = cfg.c_scale;
  mc.c_audit = cfg.c_audit;
  mc.seed = run_seed.derive(2);
  mc.final_phase_mode = cfg.final_mode;
  mc.threads = threads;
  return mc;
}

struct Baseline {
  std::size_t value = 0;
  std::string oracle;
  bool exact = false;
};

// Exact opt when tractable, else the maximal-matching lower bound.
Baseline opt_baseline(const Graph& g, RngSeed seed) {
  if (g.num_vertices() <= 40) {
    return {exact_min_vc(g).size(), "exact branch-and-bound", true};
  }
  const auto m = greedy_maximal_matching(g, VertexSet::full(g.num_vertices()), seed);
  return {m.size(), "maximal-matching lower bound", false};
}

double ratio_vs(std::size_t cover, const Baseline& base) {
  if (base.value == 0) return cover == 0 ? 1.0 : 0.0;
  return static_cast<double>(cover) / static_cast<double>(base.value);
}

json schedule_to_json(const PhaseSchedule& sched) {
  return json{{"n", sched.n},
              {"s", sched.s},
              {"c_scale", sched.c_scale},
              {"sublinear", sched.sublinear},
              {"tau", sched.tau()},
              {"thresholds", sched.thresholds},
              {"probabilities", sched.probabilities},
              {"machine_counts", sched.machine_counts},
              {"degenerate", sched.degenerate}};
}

RunReport do_run_parallel(const ExperimentConfig& cfg) {
  RngSeed run_seed(cfg.seed_lo);
  Graph g = load_graph(cfg, run_seed);
  MpcTrace trace = parallel_peel(g, mpc_config(cfg, run_seed, cfg.threads));

  const bool cover_valid = is_vertex_cover(g, trace.final_cover.cover);
  const bool memory_ok = audit_memory(trace, cfg.c_audit);
  const std::size_t budget =
      round_budget(trace.schedule.n, trace.schedule.s, cfg.c_scale, cfg.final_mode);
  const bool rounds_ok = trace.total_rounds <= budget;
  Baseline base = opt_baseline(g, run_seed.derive(3));

  json rows = json::array();
  for (const auto& ph : trace.phases) {
    std::size_t max_edges = 0;
    for (const auto& ml : ph.machines) max_edges = std::max(max_edges, ml.edges_held);
    rows.push_back({{"phase", ph.index},
                    {"delta", ph.delta},
                    {"p", ph.p},
                    {"k", ph.k},
                    {"max_machine_edges", max_edges},
                    {"peeled", ph.peeled.size()},
                    {"cleanup_peeled", ph.cleanup_peeled.size()},
                    {"sample_coverage", ph.sample_coverage}});
  }

  RunReport rep;
  rep.doc = {
      {"config", config_echo(cfg)},
      {"n", g.num_vertices()},
      {"m", g.num_edges()},
      {"schedule", schedule_to_json(trace.schedule)},
      {"trace", trace_to_json(trace)},
      {"cover_size", trace.final_cover.size()},
      {"baseline", {{"value", base.value}, {"oracle", base.oracle}}},
      {"approx_ratio", ratio_vs(trace.final_cover.size(), base)},
      {"ratio_label",
       base.exact ? "ratio vs exact opt" : "upper estimate of true ratio"},
      {"total_rounds", trace.total_rounds},
      {"round_budget", budget},
      {"max_edges_any_machine", trace.max_edges_any_machine},
      {"audits",
       {{"cover_valid", cover_valid},
        {"rounds_within_budget", rounds_ok},
        {"memory_within_budget", memory_ok}}},
      {"columns", {"phase", "delta", "p", "k", "max_machine_edges", "peeled",
                   "cleanup_peeled", "sample_coverage"}},
      {"rows", rows}};
  rep.hard_audits_pass = cover_valid;
  return rep;
}

RunReport do_run_sequential(const ExperimentConfig& cfg) {
  RngSeed run_seed(cfg.seed_lo);
  Graph g = load_graph(cfg, run_seed);
  CoverResult cover = sequential_peel(g, cfg.c_scale);
  const bool cover_valid = is_vertex_cover(g, cover.cover);
  Baseline base = opt_baseline(g, run_seed.derive(3));

  RunReport rep;
  rep.doc = {
      {"config", config_echo(cfg)},
      {"n", g.num_vertices()},
      {"m", g.num_edges()},
      {"cover_size", cover.size()},
      {"baseline", {{"value", base.value}, {"oracle", base.oracle}}},
      {"approx_ratio", ratio_vs(cover.size(), base)},
      {"ratio_label",
       base.exact ? "ratio vs exact opt" : "upper estimate of true ratio"},
      {"audits", {{"cover_valid", cover_valid}}},
      {"columns", {"n", "m", "cover_size", "baseline", "approx_ratio"}},
      {"rows",
       json::array({{{"n", g.num_vertices()},
                     {"m", g.num_edges()},
                     {"cover_size", cover.size()},
                     {"baseline", base.value},
                     {"approx_ratio", ratio_vs(cover.size(), base)}}})}};
  rep.hard_audits_pass = cover_valid;
  return rep;
}

RunReport do_compare(const ExperimentConfig& cfg) {
  RngSeed run_seed(cfg.seed_lo);
  Graph g = load_graph(cfg, run_seed);
  CoverResult seq = sequential_peel(g, cfg.c_scale);
  MpcTrace par = parallel_peel(g, mpc_config(cfg, run_seed, cfg.threads));
  Baseline base = opt_baseline(g, run_seed.derive(3));
  const bool valid =
      is_vertex_cover(g, seq.cover) && is_vertex_cover(g, par.final_cover.cover);

  RunReport rep;
  rep.doc = {
      {"config", config_echo(cfg)},
      {"n", g.num_vertices()},
      {"m", g.num_edges()},
      {"baseline", {{"value", base.value}, {"oracle", base.oracle}}},
      {"ratio_label",
       base.exact ? "ratio vs exact opt" : "upper estimate of true ratio"},
      {"sequential", {{"cover_size", seq.size()}, {"ratio", ratio_vs(seq.size(), base)}}},
      {"parallel",
       {{"cover_size", par.final_cover.size()},
        {"ratio", ratio_vs(par.final_cover.size(), base)},
        {"total_rounds", par.total_rounds}}},
      {"audits", {{"cover_valid", valid}}},
      {"columns", {"algorithm", "cover_size", "approx_ratio"}},
      {"rows",
       json::array({{{"algorithm", "sequential"},
                     {"cover_size", seq.size()},
                     {"approx_ratio", ratio_vs(seq.size(), base)}},
                    {{"algorithm", "parallel"},
                     {"cover_size", par.final_cover.size()},
                     {"approx_ratio", ratio_vs(par.final_cover.size(), base)}}})}};
  rep.hard_audits_pass = valid;
  return rep;
}

RunReport do_sandwich(const ExperimentConfig& cfg) {
  const std::size_t runs = cfg.seed_hi - cfg.seed_lo + 1;
  struct Row {
    bool held = false, a_ok = false, b_ok = false, cover_valid = false;
    json violation;
  };
  std::vector<Row> results(runs);
  parallel_for(cfg.threads, runs, [&](std::size_t i) {
    RngSeed run_seed(cfg.seed_lo + i);
    Graph g = load_graph(cfg, run_seed);
    MpcTrace trace = parallel_peel(g, mpc_config(cfg, run_seed, 1));
    VertexSet o_star =
        matching_cover(g, VertexSet::full(g.num_vertices()), run_seed.derive(3));
    HypotheticalTrace hyp = hypothetical_process(g, o_star, trace.schedule);
    SandwichReport rep = sandwich_audit(trace, hyp);
    Row& row = results[i];
    row.held = rep.all_hold();
    row.a_ok = std::all_of(rep.phases.begin(), rep.phases.end(),
                           [](const auto& p) { return p.a_superset_o; });
    row.b_ok = std::all_of(rep.phases.begin(), rep.phases.end(),
                           [](const auto& p) { return p.b_subset_obar; });
    row.cover_valid = is_vertex_cover(g, trace.final_cover.cover);
    row.violation = sandwich_to_json(rep)["violation"];
  });

  json rows = json::array();
  std::size_t held = 0;
  bool covers_valid = true;
  for (std::size_t i = 0; i < runs; ++i) {
    const Row& r = results[i];
    held += r.held ? 1 : 0;
    covers_valid = covers_valid && r.cover_valid;
    rows.push_back({{"seed", cfg.seed_lo + i},
                    {"inclusions_held", r.held ? 1 : 0},
                    {"a_superset_o", r.a_ok ? 1 : 0},
                    {"b_subset_obar", r.b_ok ? 1 : 0},
                    {"violation", r.violation}});
  }
  const double rate = runs == 0 ? 1.0 : static_cast<double>(held) / static_cast<double>(runs);

  RunReport rep;
  rep.doc = {{"config", config_echo(cfg)},
             {"runs", runs},
             {"held_count", held},
             {"held_rate", rate},
             {"opt_oracle", "greedy maximal matching 2-approximate cover"},
             {"audits",
              {{"cover_valid", covers_valid},
               {"rate_above_bug_floor", rate >= 0.5}}},
             {"columns", {"seed", "inclusions_held", "a_superset_o", "b_subset_obar"}},
             {"rows", rows}};
  rep.hard_audits_pass = covers_valid && rate >= 0.5;
  return rep;
}

RunReport do_memory_sweep(const ExperimentConfig& cfg) {
  const std::size_t runs = cfg.seed_hi - cfg.seed_lo + 1;
  struct Row {
    std::size_t s = 0, rounds = 0, budget = 0, max_edges = 0;
    double mem_bound = 0.0;
    bool rounds_ok = false, memory_ok = false, cover_valid = false;
  };
  std::vector<Row> results(runs);
  parallel_for(cfg.threads, runs, [&](std::size_t i) {
    RngSeed run_seed(cfg.seed_lo + i);
    Graph g = load_graph(cfg, run_seed);
    MpcTrace trace = parallel_peel(g, mpc_config(cfg, run_seed, 1));
    Row& row = results[i];
    row.s = trace.schedule.s;
    row.rounds = trace.total_rounds;
    row.budget = round_budget(trace.schedule.n, trace.schedule.s, cfg.c_scale,
                              cfg.final_mode);
    row.max_edges = trace.max_edges_any_machine;
    const double log2n = std::log2(static_cast<double>(trace.schedule.n));
    row.mem_bound = cfg.c_audit * static_cast<double>(trace.schedule.s) * log2n * log2n;
    row.rounds_ok = row.rounds <= row.budget;
    row.memory_ok = audit_memory(trace, cfg.c_audit);
    row.cover_valid = is_vertex_cover(g, trace.final_cover.cover);
  });

  json rows = json::array();
  std::size_t memory_pass = 0;
  bool covers_valid = true, rounds_all = true;
  for (std::size_t i = 0; i < runs; ++i) {
    const Row& r = results[i];
    memory_pass += r.memory_ok ? 1 : 0;
    covers_valid = covers_valid && r.cover_valid;
    rounds_all = rounds_all && r.rounds_ok;
    rows.push_back({{"s", r.s},
                    {"seed", cfg.seed_lo + i},
                    {"rounds", r.rounds},
                    {"round_budget", r.budget},
                    {"rounds_ok", r.rounds_ok ? 1 : 0},
                    {"max_edges", r.max_edges},
                    {"memory_budget", r.mem_bound},
                    {"memory_ok", r.memory_ok ? 1 : 0}});
  }

  RunReport rep;
  rep.doc = {{"config", config_echo(cfg)},
             {"runs", runs},
             {"memory_pass_count", memory_pass},
             {"rounds_all_within_budget", rounds_all},
             {"audits", {{"cover_valid", covers_valid}}},
             {"columns",
              {"s", "seed", "rounds", "round_budget", "rounds_ok", "max_edges",
               "memory_budget", "memory_ok"}},
             {"rows", rows}};
  rep.hard_audits_pass = covers_valid;
  return rep;
}

RunReport do_appendix_matching(const ExperimentConfig& cfg) {
  if (cfg.gen_spec.rfind("bip:", 0) != 0)
    throw ParameterError("appendix-matching requires --gen bip:NL:NR:P");
  std::size_t n_left = 0;
  {
    std::istringstream ss(cfg.gen_spec.substr(4));
    char colon;
    if (!(ss >> n_left >> colon)) throw ParameterError("bad bip spec");
  }
  const std::size_t runs = cfg.seed_hi - cfg.seed_lo + 1;
  struct Row {
    std::size_t s_size = 0, t_size = 0, matching = 0;
    bool verified = false;
  };
  std::vector<Row> results(runs);
  parallel_for(cfg.threads, runs, [&](std::size_t i) {
    RngSeed run_seed(cfg.seed_lo + i);
    Graph g = graph_from_spec(cfg.gen_spec, run_seed.derive(1));
    InducedMatchingResult im = extract_induced_matching(g, n_left);
    results[i] = {im.s.size(), im.t.size(), im.matching.size(),
                  verify_induced_matching(g, im.matching)};
  });

  json rows = json::array();
  bool all_verified = true;
  for (std::size_t i = 0; i < runs; ++i) {
    const Row& r = results[i];
    all_verified = all_verified && r.verified;
    rows.push_back({{"seed", cfg.seed_lo + i},
                    {"s_size", r.s_size},
                    {"t_size", r.t_size},
                    {"matching_size", r.matching},
                    {"verified", r.verified ? 1 : 0}});
  }

  const double nd = static_cast<double>(n_left);
  RunReport rep;
  rep.doc = {{"config", config_echo(cfg)},
             {"runs", runs},
             {"n_left", n_left},
             {"expected_s", nd / std::exp(1.0)},
             {"expected_matching_floor", nd / std::exp(3.0)},
             {"audits", {{"all_verified_induced", all_verified}}},
             {"columns", {"seed", "s_size", "t_size", "matching_size", "verified"}},
             {"rows", rows}};
  rep.hard_audits_pass = all_verified;
  return rep;
}

RunReport do_appendix_concentration(const ExperimentConfig& cfg) {
  const std::size_t trials = 10000;
  RngSeed root(cfg.seed_lo);
  json rows = json::array();
  bool all_pass = true;

  struct CoinPoint {
    std::size_t n;
    double t;
  };
  const CoinPoint coin_points[] = {{100, 10.0}, {400, 40.0}, {1000, 50.0}};
  for (std::size_t pi = 0; pi < std::size(coin_points); ++pi) {
    const auto [n, t] = coin_points[pi];
    auto sampler = [n](RngSeed s) {
      auto eng = s.engine();
      std::size_t sum = 0;
      for (std::size_t i = 0; i < n; ++i) sum += eng() & 1;
      return static_cast<double>(sum);
    };
    const double observed = empirical_tail(sampler, trials, t,
                                           root.derive(0xC01, pi),
                                           static_cast<double>(n) / 2.0);
    const double bound = chernoff_bound(n, t);
    const bool pass = observed <= bound;
    all_pass = all_pass && pass;
    rows.push_back({{"experiment", "chernoff-coin-sum"},
                    {"n", n},
                    {"d", 1.0},
                    {"t", t},
                    {"trials", trials},
                    {"observed", observed},
                    {"bound", bound},
                    {"pass", pass ? 1 : 0}});
  }

  struct BinPoint {
    std::size_t balls, bins;
    double t;
  };
  const BinPoint bin_points[] = {{1000, 2000, 60.0}, {1000, 4000, 60.0},
                                 {2000, 8000, 80.0}};
  for (std::size_t pi = 0; pi < std::size(bin_points); ++pi) {
    const auto [balls, bins, t] = bin_points[pi];
    VertexSet all_bins = VertexSet::full(bins);
    auto sampler = [&, balls, bins](RngSeed s) {
      return static_cast<double>(
          throw_balls(balls, bins, all_bins, s).singleton_count_in_b);
    };
    // closed-form expectation of the singleton count over all bins
    const double mean =
        static_cast<double>(balls) *
        std::pow(1.0 - 1.0 / static_cast<double>(bins),
                 static_cast<double>(balls - 1));
    const double observed =
        empirical_tail(sampler, trials, t, root.derive(0xB15, pi), mean);
    const double bound = bounded_differences_bound(balls, 2.0, t);
    const bool pass = observed <= bound;
    all_pass = all_pass && pass;
    rows.push_back({{"experiment", "bounded-differences-balls-bins"},
                    {"n", balls},
                    {"d", 2.0},
                    {"t", t},
                    {"trials", trials},
                    {"observed", observed},
                    {"bound", bound},
                    {"pass", pass ? 1 : 0}});
  }

  RunReport rep;
  rep.doc = {{"config", config_echo(cfg)},
             {"trials_per_point", trials},
             {"audits", {{"all_points_within_bound", all_pass}}},
             {"columns",
              {"experiment", "n", "d", "t", "trials", "observed", "bound", "pass"}},
             {"rows", rows}};
  rep.hard_audits_pass = all_pass;
  return rep;
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::run_parallel: return "run-parallel";
    case Command::run_sequential: return "run-sequential";
    case Command::compare: return "compare";
    case Command::sandwich: return "sandwich";
    case Command::memory_sweep: return "memory-sweep";
    case Command::appendix_matching: return "appendix-matching";
    case Command::appendix_concentration: return "appendix-concentration";
  }
  return "?";
}

Graph graph_from_spec(const std::string& spec, RngSeed seed) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    if (parts.size() == 3 && parts[0] == "gnp")
      return gen_gnp(std::stoull(parts[1]), std::stod(parts[2]), seed);
    if (parts.size() == 4 && parts[0] == "bip")
      return gen_bipartite_gnp(std::stoull(parts[1]), std::stoull(parts[2]),
                               std::stod(parts[3]), seed);
  } catch (const ParameterError&) {
    throw;
  } catch (const std::logic_error&) {
    throw ParameterError("bad generator spec: " + spec);
  }
  throw ParameterError("unknown generator spec: " + spec +
                       " (expected gnp:N:P or bip:NL:NR:P)");
}

json trace_to_json(const MpcTrace& trace) {
  json phases = json::array();
  for (const auto& ph : trace.phases) {
    json machines = json::array();
    for (const auto& ml : ph.machines)
      machines.push_back({{"j", ml.machine},
                          {"vertices", ml.vertices_held},
                          {"edges", ml.edges_held}});
    phases.push_back({{"i", ph.index},
                      {"delta", ph.delta},
                      {"p", ph.p},
                      {"k", ph.k},
                      {"machines", machines},
                      {"peeled", ph.peeled},
                      {"cleanup_peeled", ph.cleanup_peeled},
                      {"sample_coverage", ph.sample_coverage}});
  }
  return json{{"n", trace.schedule.n},
              {"s", trace.schedule.s},
              {"c_scale", trace.schedule.c_scale},
              {"seed", trace.seed},
              {"phases", phases},
              {"final",
               {{"mode", trace.final_mode == FinalPhaseMode::single_machine
                             ? "single"
                             : "iterated"},
                {"rounds", trace.final_rounds},
                {"peeled", trace.final_peeled}}},
              {"total_rounds", trace.total_rounds},
              {"cover_size", trace.final_cover.size()},
              {"max_edges_any_machine", trace.max_edges_any_machine}};
}

json sandwich_to_json(const SandwichReport& report) {
  json phases = json::array();
  for (const auto& ph : report.phases)
    phases.push_back({{"i", ph.phase},
                      {"A_superset_O", ph.a_superset_o},
                      {"B_subset_Obar", ph.b_subset_obar}});
  json violation;
  if (report.violation) {
    violation = {{"phase", report.violation->phase},
                 {"side", std::string(1, report.violation->side)},
                 {"witness_vertex", report.violation->witness}};
  }
  return json{{"phases", phases}, {"violation", violation}};
}

std::string emit_plot_data(const json& rows, const std::vector<std::string>& axes) {
  if (!rows.is_array()) throw ParameterError("emit_plot_data: rows must be an array");
  std::ostringstream out;
  for (std::size_t i = 0; i < axes.size(); ++i)
    out << (i ? "," : "") << axes[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < axes.size(); ++i) {
      if (!row.contains(axes[i]))
        throw ParameterError("emit_plot_data: row missing column " + axes[i]);
      const auto& cell = row.at(axes[i]);
      out << (i ? "," : "");
      if (cell.is_string())
        out << cell.get<std::string>();
      else
        out << cell.dump();
    }
    out << '\n';
  }
  return out.str();
}

std::string RunReport::rendered(const std::string& format) const {
  if (format == "csv") {
    std::vector<std::string> axes;
    for (const auto& c : doc.at("columns")) axes.push_back(c.get<std::string>());
    return emit_plot_data(doc.at("rows"), axes);
  }
  return doc.dump(2) + "\n";
}

RunReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.seed_hi < cfg.seed_lo)
    throw ParameterError("seed range is empty");
  if (cfg.format != "json" && cfg.format != "csv")
    throw ParameterError("format must be json or csv");
  switch (cfg.command) {
    case Command::run_parallel: return do_run_parallel(cfg);
    case Command::run_sequential: return do_run_sequential(cfg);
    case Command::compare: return do_compare(cfg);
    case Command::sandwich: return do_sandwich(cfg);
    case Command::memory_sweep: return do_memory_sweep(cfg);
    case Command::appendix_matching: return do_appendix_matching(cfg);
    case Command::appendix_concentration: return do_appendix_concentration(cfg);
  }
  throw ParameterError("unknown command");
}

}  // namespace mpcvc
