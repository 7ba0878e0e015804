#pragma once

// Shared state for the queue-driven solvers. Not installed.

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "localppr/local_solvers.hpp"

namespace localppr::detail {

// Neumaier summation; residual norms are updated incrementally and otherwise
// lose all precision once they shrink by many orders of magnitude.
struct Compensated {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
  void reset(double v) {
    sum = v;
    comp = 0.0;
  }
};

class LocalRun {
 public:
  // active iff |r_u| >= tol * d_u; reported residual is scale * r
  LocalRun(const Problem& p, std::string name, double tol, double scale, double r0);

  bool active(NodeId u) const { return std::abs(r[u]) >= tol * deg[u]; }
  bool push_if_active(NodeId v) { return !queue.contains(v) && active(v) && queue.push(v); }

  void set_r(NodeId u, double value) {
    const double old = r[u];
    l1_.add(std::abs(value) - std::abs(old));
    const double d2 = value * value - old * old;
    l2sq_.add(d2);
    l2sq_unscaled_.add(d2 / deg[u]);
    r[u] = value;
    touch(u);
  }
  void add_r(NodeId u, double delta) { set_r(u, r[u] + delta); }
  void add_x(NodeId u, double delta) {
    x[u] += delta;
    touch(u);
  }

  // reported (scaled) norms
  double l1() const { return scale * std::max(0.0, l1_.value()); }
  double l2() const { return scale * std::sqrt(std::max(0.0, l2sq_.value())); }
  double l2_unscaled() const { return scale * std::sqrt(std::max(0.0, l2sq_unscaled_.value())); }

  void begin_epoch();
  Solution finish(bool converged);

  const Problem& problem;
  const Graph& graph;
  std::span<const std::uint32_t> deg;
  double tol, scale;
  std::vector<double> x, r;
  EvolvingQueue queue;
  EpochTrace trace;

 private:
  void touch(NodeId u) {
    if (!seen_[u]) {
      seen_[u] = 1;
      touched_.push_back(u);
    }
  }
  void recompute_norms();

  std::string name_;
  std::vector<std::uint8_t> seen_;
  std::vector<NodeId> touched_;
  Compensated l1_, l2sq_, l2sq_unscaled_;
  double exact_l1_ = 0.0, exact_l2sq_ = 0.0;
  double l1_start_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace localppr::detail
