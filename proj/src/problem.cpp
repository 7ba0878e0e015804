#include "localppr/problem.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace localppr {

Problem::Problem(const Graph& g, double alpha, NodeId source, double eps) : graph_(&g) {
  if (!(alpha >= kMinAlpha && alpha <= kMaxAlpha))
    throw std::invalid_argument("alpha must lie in [1e-6, 1-1e-6], got " + std::to_string(alpha));
  if (!(eps > 0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be positive and finite");
  if (source >= g.num_nodes()) throw std::invalid_argument("source " + std::to_string(source) + " not in graph");
  alpha_ = alpha;
  eps_ = eps;
  source_ = source;
  c_ = 2.0 * alpha / (1.0 + alpha);
  k_ = (1.0 - alpha) / (1.0 + alpha);
  atilde_ = accelerated_rate(alpha);
  omega_star_ = optimal_omega(alpha);
}

ScaledState init_state(const Problem& p) {
  const std::size_t n = p.graph().num_nodes();
  ScaledState s{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  s.r[p.source()] = p.c();
  return s;
}

bool is_active(const Problem& p, const ScaledState& s, NodeId u) {
  if (u >= s.r.size()) throw std::out_of_range("node out of range");
  return p.active(s.r, u);
}

bool is_converged(const Problem& p, std::span<const double> r) {
  for (NodeId u = 0; u < r.size(); ++u)
    if (p.active(r, u)) return false;
  return true;
}

void scaled_adjacency_product(const Graph& g, std::span<const double> in, std::span<double> out) {
  const auto off = g.offsets();
  const auto adj = g.adjacency();
  const auto deg = g.degrees();
  const std::size_t n = g.num_nodes();
  for (std::size_t v = 0; v < n; ++v) {
    double acc = 0.0;
    for (std::uint64_t i = off[v]; i < off[v + 1]; ++i) acc += in[adj[i]] / deg[adj[i]];
    out[v] = acc;
  }
}

std::vector<double> residual_from_solution(const Problem& p, std::span<const double> x_tilde) {
  const Graph& g = p.graph();
  if (x_tilde.size() != g.num_nodes()) throw std::invalid_argument("vector length mismatch");
  std::vector<double> r(g.num_nodes());
  scaled_adjacency_product(g, x_tilde, r);
  for (std::size_t u = 0; u < r.size(); ++u) r[u] = p.k() * r[u] - x_tilde[u];
  r[p.source()] += p.c();
  return r;
}

double error_vs_oracle(const Graph& g, std::span<const double> pi_hat, std::span<const double> pi_star) {
  if (pi_hat.size() != g.num_nodes() || pi_star.size() != g.num_nodes())
    throw std::invalid_argument("vector length mismatch");
  double err = 0.0;
  for (NodeId u = 0; u < pi_hat.size(); ++u)
    err = std::max(err, std::abs(pi_hat[u] - pi_star[u]) / g.degrees()[u]);
  return err;
}

}  // namespace localppr
