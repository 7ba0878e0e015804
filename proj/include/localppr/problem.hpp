#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "localppr/graph.hpp"

namespace localppr {

inline constexpr double kMinAlpha = 1e-6;
inline constexpr double kMaxAlpha = 1.0 - 1e-6;

// (1-sqrt a)/(1+sqrt a)
inline double accelerated_rate(double alpha) {
  const double s = std::sqrt(alpha);
  return (1.0 - s) / (1.0 + s);
}

// 2/(1+sqrt(1-k^2)), k = (1-a)/(1+a)
inline double optimal_omega(double alpha) {
  const double k = (1.0 - alpha) / (1.0 + alpha);
  return 2.0 / (1.0 + std::sqrt(1.0 - k * k));
}

// Qx = b with Q = I - k D^{-1/2} A D^{-1/2}, b = c D^{-1/2} e_s.
// Everything downstream works in scaled coordinates x~ = D^{1/2} x,
// r~ = D^{1/2} r, where x~ is the PPR estimate itself.
class Problem {
 public:
  // Throws std::invalid_argument for alpha outside [1e-6, 1-1e-6], eps <= 0
  // or a source outside the graph.
  Problem(const Graph& g, double alpha, NodeId source, double eps);

  const Graph& graph() const noexcept { return *graph_; }
  double alpha() const noexcept { return alpha_; }
  double eps() const noexcept { return eps_; }
  NodeId source() const noexcept { return source_; }

  double c() const noexcept { return c_; }          // 2a/(1+a)
  double k() const noexcept { return k_; }          // (1-a)/(1+a)
  double atilde() const noexcept { return atilde_; }
  double omega_star() const noexcept { return omega_star_; }

  // |r~_u| >= c eps d_u
  double threshold(NodeId u) const { return c_ * eps_ * graph_->degree(u); }
  bool active(std::span<const double> r, NodeId u) const {
    return std::abs(r[u]) >= c_ * eps_ * graph_->degrees()[u];
  }

 private:
  const Graph* graph_;
  double alpha_, eps_;
  NodeId source_;
  double c_, k_, atilde_, omega_star_;
};

struct ScaledState {
  std::vector<double> x;  // D^{1/2} x
  std::vector<double> r;  // D^{1/2} r
};

ScaledState init_state(const Problem& p);
bool is_active(const Problem& p, const ScaledState& s, NodeId u);
bool is_converged(const Problem& p, std::span<const double> r);
inline bool is_converged(const Problem& p, const ScaledState& s) { return is_converged(p, s.r); }

// out = A D^{-1} in, i.e. out_v = sum_{u in N(v)} in_u / d_u
void scaled_adjacency_product(const Graph& g, std::span<const double> in, std::span<double> out);

// c e_s - (I - k A D^{-1}) x~
std::vector<double> residual_from_solution(const Problem& p, std::span<const double> x_tilde);

// max_u |pi_hat_u - pi_star_u| / d_u
double error_vs_oracle(const Graph& g, std::span<const double> pi_hat, std::span<const double> pi_star);

}  // namespace localppr
