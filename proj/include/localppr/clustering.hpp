#pragma once

#include <span>
#include <vector>

#include "localppr/graph.hpp"

namespace localppr {

// |cut(S)| / min(vol S, 2m - vol S). Throws std::invalid_argument for an
// empty set, the whole vertex set, or repeated ids.
double conductance(const Graph& g, std::span<const NodeId> S);

struct SweepResult {
  std::vector<NodeId> ordering;         // by pi_u / sqrt(d_u) descending, then id
  std::size_t best_prefix_len = 0;
  double best_conductance = 1.0;
  std::vector<double> conductance_curve;  // entry i is the prefix of length i+1
};

// Proper prefixes only: if every node is in the support the full set is
// left off the curve. Throws std::invalid_argument when pi_hat is all zero.
SweepResult sweep_cut(const Graph& g, std::span<const double> pi_hat);

}  // namespace localppr
