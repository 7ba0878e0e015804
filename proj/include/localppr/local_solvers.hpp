#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "localppr/solution.hpp"

namespace localppr {

// delta_1 = k, delta_{t+1} = 1/(2/k - delta_t); product() = delta_1 ... delta_t
class ChebSchedule {
 public:
  explicit ChebSchedule(double alpha);
  std::int64_t index() const noexcept { return t_; }
  double delta() const noexcept { return delta_; }
  double delta_next() const noexcept { return 1.0 / (two_over_k_ - delta_); }
  double product() const noexcept { return product_; }
  void advance();

 private:
  double two_over_k_;
  std::int64_t t_ = 1;
  double delta_;
  double product_;
};

struct EpochView {
  std::int64_t epoch;
  std::span<const NodeId> processed;
  std::span<const double> x;
  std::span<const double> r;
};

struct PushView {
  NodeId u;
  std::span<const double> x;
  std::span<const double> r;
};

struct LocalOptions {
  std::optional<std::int64_t> t_max;  // epoch cap; accelerated solvers have a default
  // S_t = V every epoch, no thresholding (locsor, locgd, locch, lochb)
  bool full_support = false;
  std::function<void(const EpochView&)> on_epoch;
  // after every single push (appr, locsor, loc_gs_sor_m)
  std::function<void(const PushView&)> on_push;
};

// APPR runs on the unsymmetric system: x/r in the views are p and z, while the
// trace and Solution::residual report r~ = c z.
Solution appr(const Problem& p, const LocalOptions& opts = {});
Solution loc_sor(const Problem& p, double omega, const LocalOptions& opts = {});
// local Gauss-Seidel SOR on M pi = e_s, M_uu = (1+a)/(2a); omega = (1+a)/2 is APPR
Solution loc_gs_sor_m(const Problem& p, double omega, const LocalOptions& opts = {});
Solution loc_gd(const Problem& p, const LocalOptions& opts = {});
Solution loc_ch(const Problem& p, const LocalOptions& opts = {});
Solution loc_hb(const Problem& p, const LocalOptions& opts = {});

// ceil((1+sqrt a)/sqrt a * ln(2/eps)) * 4
std::int64_t default_accelerated_tmax(const Problem& p);

}  // namespace localppr
