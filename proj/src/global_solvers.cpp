#include "localppr/global_solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace localppr {

namespace {

class GlobalRun {
 public:
  GlobalRun(const Problem& p, std::string name, const GlobalOptions& opts)
      : problem(p),
        graph(p.graph()),
        deg(p.graph().degrees()),
        n(p.graph().num_nodes()),
        opts_(opts),
        start_(std::chrono::steady_clock::now()) {
    if (opts.t_max < 0) throw std::invalid_argument("t_max must be nonnegative");
    sol_.algorithm = std::move(name);
    x.assign(n, 0.0);
    r.assign(n, 0.0);
    r[p.source()] = p.c();
  }

  // Records row t and returns whether r satisfies the stop test.
  bool record(std::int64_t t) {
    GlobalRecord rec;
    rec.t = t;
    double l2sq = 0.0, l2u = 0.0;
    bool done = true;
    for (std::size_t u = 0; u < n; ++u) {
      const double a = std::abs(r[u]);
      rec.l1 += a;
      l2sq += a * a;
      l2u += a * a / deg[u];
      rec.linf = std::max(rec.linf, a);
      if (a >= problem.c() * problem.eps() * deg[u]) done = false;
    }
    rec.l2 = std::sqrt(l2sq);
    rec.l2_unscaled = std::sqrt(l2u);
    rec.cum_ops = static_cast<std::uint64_t>(t) * graph.total_volume();
    sol_.global_trace.push_back(rec);
    if (opts_.on_iteration) opts_.on_iteration({t, x, r});
    return done;
  }

  void drift(double gap) { sol_.max_drift = std::max(sol_.max_drift, gap); }

  Solution finish(bool converged, std::int64_t iterations) {
    sol_.converged = converged;
    sol_.epochs = iterations;
    sol_.total_ops = static_cast<std::uint64_t>(iterations) * graph.total_volume();
    sol_.l1_start = sol_.global_trace.front().l1;
    sol_.l1_end = sol_.global_trace.back().l1;
    sol_.residual_support = static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](double v) { return v != 0.0; }));
    sol_.pi_hat = std::move(x);
    sol_.residual = std::move(r);
    sol_.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(sol_);
  }

  std::int64_t t_max() const { return opts_.t_max; }

  const Problem& problem;
  const Graph& graph;
  std::span<const std::uint32_t> deg;
  std::size_t n;
  std::vector<double> x, r;

 private:
  const GlobalOptions& opts_;
  Solution sol_;
  std::chrono::steady_clock::time_point start_;
};

double gap_l2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Three-term residual recurrences drift from b - Qx over many steps. Compare
// every kDriftCheckEvery iterations and before declaring convergence; resync
// r and r_prev from x and x_prev when the gap exceeds tolerance.
// Returns whether the (possibly resynced) residual passes the stop test.
bool guard(GlobalRun& run, std::int64_t t, bool claims_done, std::vector<double>& r_prev,
           const std::vector<double>& x_prev) {
  if (t % kDriftCheckEvery != 0 && !claims_done) return claims_done;
  const double b_norm = run.problem.c();
  auto exact = residual_from_solution(run.problem, run.x);
  const double gap = gap_l2(run.r, exact) / b_norm;
  run.drift(gap);
  if (gap > kDriftTolerance) {
    run.r = std::move(exact);
    r_prev = residual_from_solution(run.problem, x_prev);
    return is_converged(run.problem, run.r);
  }
  return claims_done;
}

}  // namespace

Solution global_gd(const Problem& p, const GlobalOptions& opts) {
  GlobalRun run(p, "gd", opts);
  std::vector<double> tmp(run.n);
  bool done = run.record(0);
  std::int64_t t = 0;
  while (!done && t < run.t_max()) {
    for (std::size_t u = 0; u < run.n; ++u) run.x[u] += run.r[u];
    scaled_adjacency_product(run.graph, run.r, tmp);
    for (std::size_t u = 0; u < run.n; ++u) run.r[u] = p.k() * tmp[u];
    done = run.record(++t);
  }
  return run.finish(done, t);
}

Solution global_sor(const Problem& p, double omega, const GlobalOptions& opts) {
  if (!(omega > 0.0 && omega < 2.0)) throw std::invalid_argument("omega must lie in (0, 2)");
  GlobalRun run(p, "sor", opts);
  const auto n = static_cast<NodeId>(run.n);
  const double spread = omega * p.k();
  bool done = run.record(0);
  std::int64_t t = 0;
  while (!done && t < run.t_max()) {
    for (NodeId u = 0; u < n; ++u) {
      const double rho = run.r[u];
      run.x[u] += omega * rho;
      run.r[u] = rho - omega * rho;
      const double share = spread * rho / run.deg[u];
      for (NodeId v : run.graph.neighbors(u)) run.r[v] += share;
    }
    done = run.record(++t);
  }
  return run.finish(done, t);
}

Solution global_chebyshev(const Problem& p, const GlobalOptions& opts) {
  GlobalRun run(p, "ch", opts);
  const std::size_t n = run.n;
  std::vector<double> x_prev(n, 0.0), r_prev = run.r, w(n);
  bool done = run.record(0);
  std::int64_t t = 0;
  if (done || run.t_max() == 0) return run.finish(done, 0);

  // t = 1: x1 = r0, r1 = k A D^{-1} r0
  run.x = run.r;
  scaled_adjacency_product(run.graph, r_prev, w);
  for (std::size_t u = 0; u < n; ++u) run.r[u] = p.k() * w[u];
  done = run.record(++t);

  double delta = p.k();  // delta_t
  const double two_over_k = 2.0 / p.k();
  while (!done && t < run.t_max()) {
    const double next = 1.0 / (two_over_k - delta);
    const double dd = delta * next;
    scaled_adjacency_product(run.graph, run.r, w);
    for (std::size_t u = 0; u < n; ++u) {
      const double xn = run.x[u] + (1.0 + dd) * run.r[u] + dd * (run.x[u] - x_prev[u]);
      x_prev[u] = run.x[u];
      run.x[u] = xn;
      const double rn = 2.0 * next * w[u] - dd * r_prev[u];
      r_prev[u] = run.r[u];
      run.r[u] = rn;
    }
    delta = next;
    ++t;
    done = guard(run, t, is_converged(p, run.r), r_prev, x_prev);
    run.record(t);
  }
  return run.finish(done, t);
}

Solution global_hb(const Problem& p, const GlobalOptions& opts) {
  GlobalRun run(p, "hb", opts);
  const std::size_t n = run.n;
  const double a = p.atilde(), b = a * a;
  std::vector<double> x_prev(n, 0.0), r_prev = run.r, w(n);
  bool done = run.record(0);
  std::int64_t t = 0;
  while (!done && t < run.t_max()) {
    scaled_adjacency_product(run.graph, run.r, w);
    for (std::size_t u = 0; u < n; ++u) {
      const double xn = run.x[u] + (1.0 + b) * run.r[u] + b * (run.x[u] - x_prev[u]);
      x_prev[u] = run.x[u];
      run.x[u] = xn;
      const double rn = 2.0 * a * w[u] - b * r_prev[u];
      r_prev[u] = run.r[u];
      run.r[u] = rn;
    }
    ++t;
    done = guard(run, t, is_converged(p, run.r), r_prev, x_prev);
    run.record(t);
  }
  return run.finish(done, t);
}

Solution conjugate_gradient(const Problem& p, const GlobalOptions& opts) {
  GlobalRun run(p, "cg", opts);
  const std::size_t n = run.n;
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t u = 0; u < n; ++u) s += a[u] * b[u] / run.deg[u];
    return s;
  };
  std::vector<double> dir = run.r, q(n);
  double rr = dot(run.r, run.r);
  bool done = run.record(0);
  std::int64_t t = 0;
  while (!done && t < run.t_max() && rr > 0.0) {
    scaled_adjacency_product(run.graph, dir, q);
    for (std::size_t u = 0; u < n; ++u) q[u] = dir[u] - p.k() * q[u];
    const double step = rr / dot(dir, q);
    for (std::size_t u = 0; u < n; ++u) {
      run.x[u] += step * dir[u];
      run.r[u] -= step * q[u];
    }
    const double rr_next = dot(run.r, run.r);
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t u = 0; u < n; ++u) dir[u] = run.r[u] + beta * dir[u];
    done = run.record(++t);
  }
  return run.finish(done, t);
}

}  // namespace localppr
