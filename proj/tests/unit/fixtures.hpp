#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "localppr/generators.hpp"
#include "localppr/graph.hpp"

namespace fixtures {

inline localppr::Graph from_text(const std::string& text) {
  std::istringstream in(text);
  return localppr::load_edge_list(in);
}

inline localppr::Graph er50() { return localppr::erdos_renyi(50, 150, 50); }
inline localppr::Graph er200() { return localppr::erdos_renyi(200, 800, 200); }
inline localppr::Graph er1000() { return localppr::erdos_renyi(1000, 5000, 1000); }

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace fixtures
