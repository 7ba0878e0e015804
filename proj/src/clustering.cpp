#include "localppr/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace localppr {

double conductance(const Graph& g, std::span<const NodeId> S) {
  if (S.empty()) throw std::invalid_argument("conductance of the empty set");
  std::vector<std::uint8_t> in(g.num_nodes(), 0);
  std::uint64_t vol = 0;
  for (NodeId u : S) {
    if (u >= g.num_nodes()) throw std::out_of_range("node id out of range");
    if (in[u]) throw std::invalid_argument("repeated node in set");
    in[u] = 1;
    vol += g.degree(u);
  }
  if (S.size() == g.num_nodes()) throw std::invalid_argument("conductance of the whole vertex set");
  std::uint64_t cut = 0;
  for (NodeId u : S)
    for (NodeId v : g.neighbors(u)) cut += in[v] ? 0 : 1;
  const std::uint64_t denom = std::min(vol, g.total_volume() - vol);
  return static_cast<double>(cut) / static_cast<double>(denom);
}

SweepResult sweep_cut(const Graph& g, std::span<const double> pi_hat) {
  if (pi_hat.size() != g.num_nodes()) throw std::invalid_argument("vector length mismatch");
  SweepResult res;
  std::vector<std::pair<double, NodeId>> keyed;
  for (NodeId u = 0; u < pi_hat.size(); ++u)
    if (pi_hat[u] != 0.0) keyed.emplace_back(pi_hat[u] / std::sqrt(double(g.degree(u))), u);
  if (keyed.empty()) throw std::invalid_argument("sweep over an all-zero vector");
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  res.ordering.reserve(keyed.size());
  for (const auto& [key, u] : keyed) res.ordering.push_back(u);

  const std::size_t proper = std::min(res.ordering.size(), g.num_nodes() - 1);
  std::vector<std::uint8_t> in(g.num_nodes(), 0);
  const std::uint64_t total = g.total_volume();
  std::uint64_t vol = 0;
  std::int64_t cut = 0;
  res.conductance_curve.reserve(proper);
  for (std::size_t i = 0; i < proper; ++i) {
    const NodeId u = res.ordering[i];
    std::int64_t inside = 0;
    for (NodeId v : g.neighbors(u)) inside += in[v];
    cut += static_cast<std::int64_t>(g.degree(u)) - 2 * inside;
    vol += g.degree(u);
    in[u] = 1;
    const double phi = static_cast<double>(cut) / static_cast<double>(std::min(vol, total - vol));
    res.conductance_curve.push_back(phi);
    if (i == 0 || phi < res.best_conductance) {
      res.best_conductance = phi;
      res.best_prefix_len = i + 1;
    }
  }
  return res;
}

}  // namespace localppr
