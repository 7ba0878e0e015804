#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "localppr/process.hpp"

namespace localppr {

// One row per iteration of a global solver; row 0 is the initial state.
struct GlobalRecord {
  std::int64_t t = 0;
  double l1 = 0.0, l2 = 0.0, linf = 0.0;  // of r~
  double l2_unscaled = 0.0;               // ||r||_2 = ||D^{-1/2} r~||_2
  std::uint64_t cum_ops = 0;              // t * 2m
};

struct Solution {
  std::string algorithm;
  std::vector<double> pi_hat;    // x~
  std::vector<double> residual;  // r~ as maintained by the solver
  EpochTrace trace;                        // local solvers
  std::vector<GlobalRecord> global_trace;  // global solvers
  bool converged = false;
  std::uint64_t total_ops = 0;
  std::int64_t epochs = 0;  // T, or iterations for global solvers
  double wall_time = 0.0;   // seconds
  std::size_t residual_support = 0;  // |supp(r~)|
  double l1_start = 0.0, l1_end = 0.0;
  double max_drift = 0.0;  // largest recurrence-vs-recomputed residual gap seen
};

}  // namespace localppr
