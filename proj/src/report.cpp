#include "localppr/report.hpp"

#include <cmath>
#include <sstream>

#include "localppr/bounds.hpp"

namespace localppr {

namespace {

bool local_name(const std::string& name) {
  auto a = parse_algorithm(name);
  return a ? is_local(*a) : name == "loc_gs_sor_m";
}

}  // namespace

nlohmann::json bounds_json(const Problem& p, const Solution& s) {
  nlohmann::json b;
  b["anderson"] = anderson_bound(p);
  if (local_name(s.algorithm)) {
    const TraceSummary sum = summarize(s.trace);
    b["evolving_upper"] = evolving_upper_bound(p, sum, s.residual_support);
    b["evolving_lower"] = evolving_lower_bound(p, sum, s.l1_start, s.l1_end);
  }
  if (s.algorithm == "ch" || s.algorithm == "locch") b["chebyshev_iterations"] = chebyshev_iteration_bound(p);
  return b;
}

nlohmann::json trace_json(const Solution& s) {
  nlohmann::json rows = nlohmann::json::array();
  if (local_name(s.algorithm)) {
    for (const auto& r : s.trace.records()) {
      nlohmann::json row = {{"t", r.t},   {"vol", r.vol}, {"size", r.size},       {"gamma", r.gamma},
                            {"l1", r.l1}, {"l2", r.l2},   {"cum_ops", r.cum_ops}};
      if (!std::isnan(r.cheb_ratio)) row["cheb_ratio"] = r.cheb_ratio;
      rows.push_back(std::move(row));
    }
  } else {
    for (const auto& r : s.global_trace)
      rows.push_back({{"t", r.t},       {"l1", r.l1}, {"l2", r.l2}, {"linf", r.linf}, {"l2_unscaled", r.l2_unscaled},
                      {"cum_ops", r.cum_ops}});
  }
  return rows;
}

nlohmann::json solution_json(const Problem& p, const Solution& s, bool include_pi) {
  const Graph& g = p.graph();
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["algorithm"] = s.algorithm;
  j["alpha"] = p.alpha();
  j["eps"] = p.eps();
  j["source"] = g.original_ids()[p.source()];
  j["n"] = g.num_nodes();
  j["m"] = g.num_edges();
  j["converged"] = s.converged;
  j["total_ops"] = s.total_ops;
  j["epochs"] = s.epochs;
  j["wall_time_s"] = s.wall_time;
  j["l1_start"] = s.l1_start;
  j["l1_end"] = s.l1_end;
  j["residual_support"] = s.residual_support;
  if (local_name(s.algorithm)) {
    const TraceSummary sum = summarize(s.trace);
    j["summary"] = {{"T", sum.T}, {"vol_bar", sum.vol_bar}, {"gamma_bar", sum.gamma_bar}, {"total_ops", sum.total_ops}};
  } else {
    j["max_drift"] = s.max_drift;
  }
  j["bounds"] = bounds_json(p, s);
  j["trace"] = trace_json(s);
  if (include_pi) {
    nlohmann::json pi = nlohmann::json::array();
    for (NodeId u = 0; u < s.pi_hat.size(); ++u)
      if (s.pi_hat[u] != 0.0) pi.push_back({{"node", g.original_ids()[u]}, {"value", s.pi_hat[u]}});
    j["pi_hat"] = std::move(pi);
  }
  return j;
}

std::string trace_csv(const Solution& s) {
  std::ostringstream out;
  out.precision(17);
  if (local_name(s.algorithm)) {
    out << "t,vol,size,gamma,l1,l2,cum_ops\n";
    for (const auto& r : s.trace.records())
      out << r.t << ',' << r.vol << ',' << r.size << ',' << r.gamma << ',' << r.l1 << ',' << r.l2 << ',' << r.cum_ops
          << '\n';
  } else {
    out << "t,l1,l2,linf,l2_unscaled,cum_ops\n";
    for (const auto& r : s.global_trace)
      out << r.t << ',' << r.l1 << ',' << r.l2 << ',' << r.linf << ',' << r.l2_unscaled << ',' << r.cum_ops << '\n';
  }
  return out.str();
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream out;
  out.precision(17);
  out << "prefix_len,conductance\n";
  for (std::size_t i = 0; i < r.conductance_curve.size(); ++i) out << i + 1 << ',' << r.conductance_curve[i] << '\n';
  return out.str();
}

}  // namespace localppr
