#pragma once

#include <cstdint>

#include "localppr/graph.hpp"

namespace localppr {

Graph path_graph(std::size_t n);
inline Graph k2() { return path_graph(2); }
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
inline Graph triangle() { return complete_graph(3); }
// center 0, leaves 1..leaves
Graph star_graph(std::size_t leaves);
// two k-cliques {0..k-1}, {k..2k-1} joined by the edge (k-1, k)
Graph barbell_graph(std::size_t k = 3);

// G(n, M): M distinct edges drawn uniformly. Redraws (same stream) until the
// result is connected, so the node count is exactly n.
Graph erdos_renyi(std::size_t n, std::uint64_t edges, std::uint64_t seed);

}  // namespace localppr
