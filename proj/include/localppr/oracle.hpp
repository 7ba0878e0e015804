#pragma once

#include <memory>
#include <vector>

#include "localppr/graph.hpp"

namespace localppr {

inline constexpr std::size_t kDenseSolveLimit = 5000;
inline constexpr std::size_t kDenseEigenLimit = 500;

// Factorization of (I - (1-a)(I + A D^{-1})/2) for repeated sources.
class DenseOracle {
 public:
  DenseOracle(const Graph& g, double alpha);  // throws std::length_error past the size cap
  ~DenseOracle();
  DenseOracle(DenseOracle&&) noexcept;
  DenseOracle& operator=(DenseOracle&&) noexcept;

  std::vector<double> solve(NodeId s) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// pi* by partially pivoted LU on the lazy-walk system
std::vector<double> dense_ppr(const Graph& g, double alpha, NodeId s);
// pi* = D^{1/2} x* with x* from a Cholesky solve of Qx = b; a second route
std::vector<double> dense_ppr_symmetric(const Graph& g, double alpha, NodeId s);
// eigenvalues of Q, ascending
std::vector<double> dense_eigs_Q(const Graph& g, double alpha);

// first-kind Chebyshev polynomial by the three-term recurrence
double chebyshev_T(int t, double x);

}  // namespace localppr
