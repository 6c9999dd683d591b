#include "mpcvc/peeling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mpcvc/errors.hpp"

namespace mpcvc {

std::vector<Vertex> PeelTrace::all_peeled() const {
  std::vector<Vertex> out;
  for (const auto& batch : peeled_per_iteration)
    out.insert(out.end(), batch.begin(), batch.end());
  std::sort(out.begin(), out.end());
  return out;
}

PhaseSchedule make_schedule(std::size_t n, std::size_t s, double c_scale) {
  if (n < 2) throw ParameterError("make_schedule: n < 2");
  if (s < 2 || s > n) throw ParameterError("make_schedule: s outside [2, n]");
  if (c_scale <= 0.0) throw ParameterError("make_schedule: c_scale <= 0");

  PhaseSchedule sched;
  sched.n = n;
  sched.s = s;
  sched.c_scale = c_scale;
  sched.sublinear = s < n;
  const double log2n = std::log2(static_cast<double>(n));
  const double nd = static_cast<double>(n);
  const double sd = static_cast<double>(s);
  sched.floor_value =
      sched.sublinear ? c_scale * (nd / sd) * log2n : c_scale * log2n;

  for (int i = 1; i <= 64; ++i) {
    const double exponent = 1.0 - std::ldexp(1.0, -(i - 1));  // 1 - 1/2^(i-1)
    const double value = sched.sublinear ? nd / std::pow(sd, exponent)
                                         : std::pow(nd, 1.0 - exponent);
    if (value <= sched.floor_value) {
      sched.thresholds.push_back(std::ceil(sched.floor_value));
      break;
    }
    sched.thresholds.push_back(std::ceil(value));
  }

  const std::size_t tau = sched.thresholds.size();
  for (std::size_t i = 0; i + 1 < tau; ++i) {
    const double delta_next = sched.thresholds[i + 1];
    double p = c_scale * log2n / delta_next;
    if (p > 1.0) {
      p = 1.0;
      sched.degenerate = true;
    }
    sched.probabilities.push_back(p);
    sched.machine_counts.push_back(static_cast<std::size_t>(delta_next));
  }
  if (tau == 1) sched.degenerate = true;
  return sched;
}

CoverResult sequential_peel(const Graph& g, double c_scale) {
  (void)c_scale;  // sequential process has no log-factor knob; kept for symmetry
  const std::size_t n = g.num_vertices();
  CoverResult result{VertexSet(n), std::vector<Provenance>(n)};

  std::vector<std::uint8_t> alive(n, 1);
  std::vector<std::size_t> deg(n, 0);
  for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(static_cast<Vertex>(v));

  std::vector<Vertex> peel;
  double th = static_cast<double>(n) / 2.0;
  for (std::int32_t t = 1;; ++t, th /= 2.0) {
    peel.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v] && static_cast<double>(deg[v]) >= th)
        peel.push_back(static_cast<Vertex>(v));
    for (Vertex v : peel) alive[v] = 0;
    for (Vertex v : peel)
      for (Vertex u : g.neighbors(v))
        if (alive[u]) --deg[u];
    for (Vertex v : peel) {
      result.cover.insert(v);
      result.provenance[v] = {Provenance::Kind::sequential, t, -1};
    }
    if (th <= 1.0) break;
  }

  // At the final threshold every endpoint of a surviving edge is peeled, so
  // coverage must hold; keep the claim as a runtime check.
  if (!is_vertex_cover(g, result.cover))
    throw std::logic_error("sequential_peel: output is not a vertex cover");
  return result;
}

PeelTrace local_peel(const Graph& g, const VertexSet& alive, double delta,
                     double c_scale) {
  if (delta <= 0.0) throw ParameterError("local_peel: delta <= 0");
  const std::size_t n = g.num_vertices();
  const double floor_value =
      c_scale * std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));

  int t_max = 0;
  while (std::ldexp(delta, -t_max) > floor_value && t_max < 128) ++t_max;

  PeelTrace trace;
  trace.peeled_per_iteration.resize(static_cast<std::size_t>(t_max));
  if (t_max == 0 || alive.empty()) return trace;

  std::vector<Vertex> live = alive.sorted();
  std::vector<std::uint8_t> inset(n, 0);
  for (Vertex v : live) inset[v] = 1;
  std::vector<std::size_t> deg(n, 0);
  for (Vertex v : live) {
    std::size_t d = 0;
    for (Vertex u : g.neighbors(v))
      if (inset[u]) ++d;
    deg[v] = d;
  }

  for (int t = 1; t <= t_max; ++t) {
    const double th = std::ldexp(delta, -(t + 1));  // delta / 2^(t+1)
    auto& peel = trace.peeled_per_iteration[static_cast<std::size_t>(t - 1)];
    for (Vertex v : live)
      if (inset[v] && static_cast<double>(deg[v]) >= th) peel.push_back(v);
    for (Vertex v : peel) inset[v] = 0;
    for (Vertex v : peel)
      for (Vertex u : g.neighbors(v))
        if (inset[u]) --deg[u];
    std::erase_if(live, [&](Vertex v) { return !inset[v]; });
  }
  return trace;
}

}  // namespace mpcvc
