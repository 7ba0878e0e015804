#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "localppr/solution.hpp"

namespace localppr {

struct IterationView {
  std::int64_t t;  // 0 is the initial state
  std::span<const double> x;
  std::span<const double> r;
};

struct GlobalOptions {
  std::int64_t t_max = 100000;
  std::function<void(const IterationView&)> on_iteration;
};

// All work on x~, r~ with dense vectors and cost 2m per iteration; they stop
// on the same |r~_u| < c eps d_u test as the local solvers.
Solution global_gd(const Problem& p, const GlobalOptions& opts = {});
// one iteration = one forward sweep over 0..n-1
Solution global_sor(const Problem& p, double omega, const GlobalOptions& opts = {});
// x1 = r0; residual by the three-term recurrence with a periodic recompute
Solution global_chebyshev(const Problem& p, const GlobalOptions& opts = {});
// heavy ball with x0 = x1 = 0, momentum atilde^2
Solution global_hb(const Problem& p, const GlobalOptions& opts = {});
// CG on Q, run in scaled coordinates with the D^{-1} inner product
Solution conjugate_gradient(const Problem& p, const GlobalOptions& opts = {});

inline constexpr int kDriftCheckEvery = 64;
inline constexpr double kDriftTolerance = 1e-8;

}  // namespace localppr
