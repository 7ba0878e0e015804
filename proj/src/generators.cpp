#include "localppr/generators.hpp"

#include <stdexcept>
#include <unordered_set>

#include "localppr/rng.hpp"

namespace localppr {

namespace {
using EdgeList = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
}

Graph path_graph(std::size_t n) {
  if (n < 2) throw std::invalid_argument("path needs at least 2 nodes");
  EdgeList e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return build_graph(std::move(e));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
  EdgeList e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return build_graph(std::move(e));
}

Graph complete_graph(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complete graph needs at least 2 nodes");
  EdgeList e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return build_graph(std::move(e));
}

Graph star_graph(std::size_t leaves) {
  if (leaves < 1) throw std::invalid_argument("star needs a leaf");
  EdgeList e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return build_graph(std::move(e));
}

Graph barbell_graph(std::size_t k) {
  if (k < 2) throw std::invalid_argument("barbell cliques need at least 2 nodes");
  EdgeList e;
  for (std::size_t base : {std::size_t{0}, k})
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) e.emplace_back(base + i, base + j);
  e.emplace_back(k - 1, k);
  return build_graph(std::move(e));
}

Graph erdos_renyi(std::size_t n, std::uint64_t edges, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need at least 2 nodes");
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (edges < n - 1 || edges > max_edges) throw std::invalid_argument("edge count cannot give a connected simple graph");
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges * 2);
    EdgeList e;
    e.reserve(edges);
    while (e.size() < edges) {
      std::uint64_t a = rng.below(n), b = rng.below(n);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (!seen.insert(a * n + b).second) continue;
      e.emplace_back(a, b);
    }
    Graph g = build_graph(std::move(e));
    if (g.num_nodes() == n) return g;
  }
  throw std::runtime_error("could not draw a connected graph; raise the edge count");
}

}  // namespace localppr
