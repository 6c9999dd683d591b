#include "mpcvc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "mpcvc/errors.hpp"

namespace mpcvc {

namespace {

// Branch-and-bound state over <= 64 vertices, masks throughout.
struct BnB {
  std::vector<std::uint64_t> adj;
  std::uint64_t best_cover = 0;
  std::size_t best_size = 0;

  [[nodiscard]] std::size_t matching_lb(std::uint64_t alive) const {
    std::size_t lb = 0;
    std::uint64_t rest = alive;
    while (rest) {
      const int v = std::countr_zero(rest);
      std::uint64_t nb = adj[static_cast<std::size_t>(v)] & rest;
      rest &= ~(1ULL << v);
      if (nb) {
        const int u = std::countr_zero(nb);
        rest &= ~(1ULL << u);
        ++lb;
      }
    }
    return lb;
  }

  void search(std::uint64_t alive, std::uint64_t chosen, std::size_t size) {
    // Degree-1 reduction: taking the neighbor is always at least as good.
    bool changed = true;
    while (changed) {
      changed = false;
      std::uint64_t rest = alive;
      while (rest) {
        const int v = std::countr_zero(rest);
        rest &= rest - 1;
        const std::uint64_t nb = adj[static_cast<std::size_t>(v)] & alive;
        if (std::popcount(nb) == 1) {
          const int u = std::countr_zero(nb);
          chosen |= 1ULL << u;
          ++size;
          alive &= ~((1ULL << u) | (1ULL << v));
          changed = true;
          break;
        }
      }
    }

    int max_v = -1;
    std::size_t max_d = 0;
    std::uint64_t rest = alive;
    while (rest) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      const auto d = static_cast<std::size_t>(
          std::popcount(adj[static_cast<std::size_t>(v)] & alive));
      if (d > max_d) {
        max_d = d;
        max_v = v;
      }
    }
    if (max_v < 0) {  // no edges left
      if (size < best_size) {
        best_size = size;
        best_cover = chosen;
      }
      return;
    }
    if (size + matching_lb(alive) >= best_size) return;

    const std::uint64_t vbit = 1ULL << max_v;
    const std::uint64_t nb = adj[static_cast<std::size_t>(max_v)] & alive;
    // take v
    search(alive & ~vbit, chosen | vbit, size + 1);
    // exclude v: every neighbor must be taken
    search(alive & ~(vbit | nb), chosen | nb,
           size + static_cast<std::size_t>(std::popcount(nb)));
  }
};

}  // namespace

VertexSet exact_min_vc(const Graph& g, std::size_t max_vertices) {
  const std::size_t n = g.num_vertices();
  if (n > max_vertices || n > 64)
    throw ParameterError("exact_min_vc: graph exceeds the tractability cap (" +
                         std::to_string(n) + " vertices)");
  BnB bnb;
  bnb.adj.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (Vertex u : g.neighbors(static_cast<Vertex>(v)))
      bnb.adj[v] |= 1ULL << u;

  // initial upper bound: all matched endpoints
  std::uint64_t alive = n == 64 ? ~0ULL : (1ULL << n) - 1;
  bnb.best_size = n + 1;
  bnb.best_cover = alive;
  std::uint64_t greedy = 0;
  {
    std::uint64_t rest = alive;
    std::size_t sz = 0;
    while (rest) {
      const int v = std::countr_zero(rest);
      std::uint64_t nb = bnb.adj[static_cast<std::size_t>(v)] & rest;
      rest &= ~(1ULL << v);
      if (nb) {
        const int u = std::countr_zero(nb);
        rest &= ~(1ULL << u);
        greedy |= (1ULL << v) | (1ULL << u);
        sz += 2;
      }
    }
    bnb.best_size = sz;
    bnb.best_cover = greedy;
  }
  bnb.search(alive, 0, 0);

  VertexSet out(n);
  for (std::size_t v = 0; v < n; ++v)
    if (bnb.best_cover & (1ULL << v)) out.insert(static_cast<Vertex>(v));
  return out;
}

std::vector<Edge> greedy_maximal_matching(const Graph& g, const VertexSet& alive,
                                          RngSeed seed) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    if (!alive.contains(static_cast<Vertex>(u))) continue;
    for (Vertex v : g.neighbors(static_cast<Vertex>(u)))
      if (u < v && alive.contains(v))
        edges.emplace_back(static_cast<Vertex>(u), v);
  }
  auto eng = seed.engine();
  for (std::size_t i = edges.size(); i > 1; --i)
    std::swap(edges[i - 1], edges[next_below(eng, i)]);

  std::vector<std::uint8_t> matched(g.num_vertices(), 0);
  std::vector<Edge> matching;
  for (auto [u, v] : edges) {
    if (!matched[u] && !matched[v]) {
      matched[u] = matched[v] = 1;
      matching.emplace_back(u, v);
    }
  }
  return matching;
}

VertexSet matching_cover(const Graph& g, const VertexSet& alive, RngSeed seed) {
  VertexSet out(g.num_vertices());
  for (auto [u, v] : greedy_maximal_matching(g, alive, seed)) {
    out.insert(u);
    out.insert(v);
  }
  return out;
}

std::size_t HypotheticalTrace::total_iterations() const {
  std::size_t total = 0;
  for (const auto& ph : phases) total += ph.o_peels.size();
  return total;
}

std::vector<Vertex> HypotheticalTrace::all_peeled() const {
  std::vector<Vertex> out;
  for (const auto& ph : phases) {
    out.insert(out.end(), ph.o_union.begin(), ph.o_union.end());
    out.insert(out.end(), ph.obar_union.begin(), ph.obar_union.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

HypotheticalTrace hypothetical_process(const Graph& g, const VertexSet& opt_cover,
                                       const PhaseSchedule& sched) {
  const std::size_t n = g.num_vertices();
  if (!is_vertex_cover(g, opt_cover))
    throw ParameterError("hypothetical_process: opt_cover is not a vertex cover");

  HypotheticalTrace trace;
  trace.schedule = sched;
  trace.opt_cover = opt_cover;

  // H_1 keeps exactly the edges crossing between O* and its complement, so a
  // vertex's H-degree is its count of alive opposite-side neighbors.
  std::vector<std::uint8_t> alive(n, 1);
  std::vector<std::size_t> deg(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const bool v_in = opt_cover.contains(static_cast<Vertex>(v));
    std::size_t d = 0;
    for (Vertex u : g.neighbors(static_cast<Vertex>(v)))
      if (opt_cover.contains(u) != v_in) ++d;
    deg[v] = d;
  }

  for (std::size_t pi = 0; pi < sched.num_phases(); ++pi) {
    const double delta_i = sched.thresholds[pi];
    const double delta_next = sched.thresholds[pi + 1];
    const auto iters = static_cast<std::size_t>(
        std::max(0.0, std::ceil(std::log2(std::max(delta_next, 1.0)))));
    HypotheticalTrace::Phase phase;
    VertexSet o_union(n), obar_union(n);
    for (std::size_t t = 1; t <= iters; ++t) {
      const double th_o = std::ldexp(delta_i, -static_cast<int>(t));
      const double th_obar = std::ldexp(delta_i, -static_cast<int>(t) - 2);
      std::vector<Vertex> o_peel, obar_peel;
      for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        const double d = static_cast<double>(deg[v]);
        if (opt_cover.contains(static_cast<Vertex>(v))) {
          if (d >= th_o) o_peel.push_back(static_cast<Vertex>(v));
        } else if (d >= th_obar) {
          obar_peel.push_back(static_cast<Vertex>(v));
        }
      }
      auto remove = [&](const std::vector<Vertex>& batch) {
        for (Vertex v : batch) alive[v] = 0;
        for (Vertex v : batch) {
          const bool v_in = opt_cover.contains(v);
          for (Vertex u : g.neighbors(v))
            if (alive[u] && opt_cover.contains(u) != v_in) --deg[u];
        }
      };
      remove(o_peel);
      remove(obar_peel);
      for (Vertex v : o_peel) o_union.insert(v);
      for (Vertex v : obar_peel) obar_union.insert(v);
      phase.o_peels.push_back(std::move(o_peel));
      phase.obar_peels.push_back(std::move(obar_peel));
    }
    phase.o_union = o_union.sorted();
    phase.obar_union = obar_union.sorted();
    trace.phases.push_back(std::move(phase));
  }
  return trace;
}

bool hypothetical_size_bound(const HypotheticalTrace& trace,
                             std::size_t opt_size) {
  VertexSet all(trace.opt_cover.universe());
  for (const auto& ph : trace.phases) {
    for (Vertex v : ph.o_union) all.insert(v);
    for (Vertex v : ph.obar_union) all.insert(v);
  }
  const std::size_t bound = (8 * trace.total_iterations() + 1) * opt_size;
  return all.size() <= bound;
}

SandwichReport sandwich_audit(const MpcTrace& mpc, const HypotheticalTrace& hyp) {
  if (mpc.schedule != hyp.schedule)
    throw ParameterError("sandwich_audit: traces were built from different schedules");
  const std::size_t n = hyp.opt_cover.universe();
  const VertexSet& opt = hyp.opt_cover;

  SandwichReport report;
  VertexSet a_prefix(n), b_prefix(n), o_prefix(n), obar_prefix(n);
  for (std::size_t pi = 0; pi < mpc.phases.size(); ++pi) {
    auto classify = [&](const std::vector<Vertex>& peeled) {
      for (Vertex v : peeled) {
        if (opt.contains(v))
          a_prefix.insert(v);
        else
          b_prefix.insert(v);
      }
    };
    classify(mpc.phases[pi].peeled);
    classify(mpc.phases[pi].cleanup_peeled);
    for (Vertex v : hyp.phases[pi].o_union) o_prefix.insert(v);
    for (Vertex v : hyp.phases[pi].obar_union) obar_prefix.insert(v);

    SandwichReport::PhaseVerdict verdict;
    verdict.phase = pi + 1;
    for (Vertex v : o_prefix.sorted()) {
      if (!a_prefix.contains(v)) {
        verdict.a_superset_o = false;
        if (!report.violation)
          report.violation = SandwichReport::Violation{pi + 1, 'A', v};
        break;
      }
    }
    for (Vertex v : b_prefix.sorted()) {
      if (!obar_prefix.contains(v)) {
        verdict.b_subset_obar = false;
        if (!report.violation)
          report.violation = SandwichReport::Violation{pi + 1, 'B', v};
        break;
      }
    }
    report.phases.push_back(verdict);
  }
  return report;
}

}  // namespace mpcvc
