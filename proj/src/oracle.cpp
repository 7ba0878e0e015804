#include "localppr/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace localppr {

namespace {

void check_size(const Graph& g, std::size_t cap) {
  if (g.num_nodes() > cap)
    throw std::length_error("dense oracle limited to " + std::to_string(cap) + " nodes");
}

void check_source(const Graph& g, NodeId s) {
  if (s >= g.num_nodes()) throw std::invalid_argument("source not in graph");
}

// Q = I - k D^{-1/2} A D^{-1/2}
Eigen::MatrixXd dense_q(const Graph& g, double alpha) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  const double k = (1.0 - alpha) / (1.0 + alpha);
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : g.neighbors(u)) q(u, v) -= k / std::sqrt(double(g.degree(u)) * g.degree(v));
  return q;
}

}  // namespace

struct DenseOracle::Impl {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  double alpha;
  std::size_t n;
};

DenseOracle::DenseOracle(const Graph& g, double alpha) : impl_(std::make_unique<Impl>()) {
  check_size(g, kDenseSolveLimit);
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) * ((1.0 + alpha) / 2.0);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : g.neighbors(u)) m(v, u) -= (1.0 - alpha) / (2.0 * g.degree(u));  // column u of A D^{-1}
  impl_->lu.compute(m);
  impl_->alpha = alpha;
  impl_->n = g.num_nodes();
}

DenseOracle::~DenseOracle() = default;
DenseOracle::DenseOracle(DenseOracle&&) noexcept = default;
DenseOracle& DenseOracle::operator=(DenseOracle&&) noexcept = default;

std::vector<double> DenseOracle::solve(NodeId s) const {
  if (s >= impl_->n) throw std::invalid_argument("source not in graph");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(impl_->n));
  rhs(s) = impl_->alpha;
  Eigen::VectorXd pi = impl_->lu.solve(rhs);
  return {pi.data(), pi.data() + pi.size()};
}

std::vector<double> dense_ppr(const Graph& g, double alpha, NodeId s) {
  check_source(g, s);
  return DenseOracle(g, alpha).solve(s);
}

std::vector<double> dense_ppr_symmetric(const Graph& g, double alpha, NodeId s) {
  check_size(g, kDenseSolveLimit);
  check_source(g, s);
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(s) = 2.0 * alpha / (1.0 + alpha) / std::sqrt(double(g.degree(s)));
  Eigen::VectorXd x = dense_q(g, alpha).llt().solve(b);
  std::vector<double> pi(g.num_nodes());
  for (NodeId u = 0; u < n; ++u) pi[u] = std::sqrt(double(g.degree(u))) * x(u);
  return pi;
}

std::vector<double> dense_eigs_Q(const Graph& g, double alpha) {
  check_size(g, kDenseEigenLimit);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_q(g, alpha), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double chebyshev_T(int t, double x) {
  if (t < 0) throw std::invalid_argument("negative degree");
  if (t == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int i = 1; i < t; ++i) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace localppr
