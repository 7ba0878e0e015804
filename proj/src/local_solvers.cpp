#include "localppr/local_solvers.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "local_engine.hpp"

namespace localppr {

ChebSchedule::ChebSchedule(double alpha) {
  const double k = (1.0 - alpha) / (1.0 + alpha);
  two_over_k_ = 2.0 * (1.0 + alpha) / (1.0 - alpha);
  delta_ = k;
  product_ = k;
}

void ChebSchedule::advance() {
  delta_ = delta_next();
  product_ *= delta_;
  ++t_;
}

std::int64_t default_accelerated_tmax(const Problem& p) {
  const double sa = std::sqrt(p.alpha());
  const double t = std::ceil((1.0 + sa) / sa * std::log(2.0 / p.eps()));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(t)) * 4;
}

namespace detail {

LocalRun::LocalRun(const Problem& p, std::string name, double tol_, double scale_, double r0)
    : problem(p),
      graph(p.graph()),
      deg(p.graph().degrees()),
      tol(tol_),
      scale(scale_),
      x(p.graph().num_nodes(), 0.0),
      r(p.graph().num_nodes(), 0.0),
      queue(p.graph().num_nodes()),
      name_(std::move(name)),
      seen_(p.graph().num_nodes(), 0),
      start_(std::chrono::steady_clock::now()) {
  set_r(p.source(), r0);
  recompute_norms();
  l1_start_ = l1();
}

void LocalRun::recompute_norms() {
  Compensated a, b, c;
  for (NodeId u : touched_) {
    a.add(std::abs(r[u]));
    b.add(r[u] * r[u]);
    c.add(r[u] * r[u] / deg[u]);
  }
  l1_.reset(a.value());
  l2sq_.reset(b.value());
  l2sq_unscaled_.reset(c.value());
  exact_l1_ = l1_.value();
  exact_l2sq_ = l2sq_.value();
}

void LocalRun::begin_epoch() {
  if (l1_.value() < exact_l1_ * 1e-6 || l2sq_.value() < exact_l2sq_ * 1e-12) recompute_norms();
  trace.begin_epoch(l1(), l2());
}

Solution LocalRun::finish(bool converged) {
  if (trace.open()) trace.end_epoch();
  recompute_norms();
  trace.set_final(l1(), l2());
  Solution sol;
  sol.algorithm = name_;
  sol.converged = converged;
  const TraceSummary sum = summarize(trace);
  sol.total_ops = sum.total_ops;
  sol.epochs = static_cast<std::int64_t>(sum.T);
  sol.l1_start = l1_start_;
  sol.l1_end = l1();
  for (NodeId u : touched_)
    if (r[u] != 0.0) ++sol.residual_support;
  if (scale != 1.0)
    for (double& v : r) v *= scale;
  sol.pi_hat = std::move(x);
  sol.residual = std::move(r);
  sol.trace = std::move(trace);
  sol.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  return sol;
}

}  // namespace detail

namespace {

using detail::LocalRun;

std::int64_t cap_of(const LocalOptions& opts) {
  if (opts.t_max && *opts.t_max < 1) throw std::invalid_argument("t_max must be at least 1");
  return opts.t_max.value_or(std::numeric_limits<std::int64_t>::max());
}

void check_omega(double omega) {
  if (!(omega > 0.0 && omega < 2.0)) throw std::invalid_argument("omega must lie in (0, 2)");
}

// Node-at-a-time loop shared by APPR, LocSOR and the M-system SOR. `update`
// applies one push at u given its current residual.
template <typename Update>
Solution run_sequential(LocalRun& run, const LocalOptions& opts, Update&& update) {
  const std::int64_t cap = cap_of(opts);
  std::vector<NodeId> processed;
  auto close_epoch = [&] {
    run.trace.end_epoch();
    if (opts.on_epoch) opts.on_epoch({run.trace.records().back().t, processed, run.x, run.r});
    processed.clear();
  };

  if (opts.full_support) {
    const auto n = static_cast<NodeId>(run.graph.num_nodes());
    for (std::int64_t t = 0;; ++t) {
      bool any = false;
      for (NodeId u = 0; u < n && !any; ++u) any = run.active(u);
      if (!any) return run.finish(true);
      if (t >= cap) return run.finish(false);
      run.begin_epoch();
      for (NodeId u = 0; u < n; ++u) {
        const double rho = run.r[u];
        run.trace.record_processed(run.deg[u], run.scale * rho);
        if (opts.on_epoch) processed.push_back(u);
        update(u, rho);
        if (opts.on_push) opts.on_push({u, run.x, run.r});
      }
      close_epoch();
    }
  }

  run.push_if_active(run.problem.source());
  for (;;) {
    const auto ev = run.queue.next();
    if (ev.kind == EvolvingQueue::Kind::Node) {
      const NodeId u = ev.node;
      if (!run.active(u)) continue;  // went stale while queued
      const double rho = run.r[u];
      run.trace.record_processed(run.deg[u], run.scale * rho);
      if (opts.on_epoch) processed.push_back(u);
      update(u, rho);
      if (opts.on_push) opts.on_push({u, run.x, run.r});
      for (NodeId v : run.graph.neighbors(u)) run.push_if_active(v);
      run.push_if_active(u);
      continue;
    }
    if (run.trace.open()) close_epoch();
    if (ev.kind == EvolvingQueue::Kind::Exhausted) return run.finish(true);
    if (ev.epoch >= cap) return run.finish(false);
    run.begin_epoch();
  }
}

// Epoch-batched loop: the whole of S_t is read from the epoch-start residual,
// step_u = (1+beta) r_u + beta m_u, where m holds the previous epoch's step on
// S_{t-1} (dropped elsewhere).
template <typename Beta, typename Hook>
Solution run_batched(LocalRun& run, const LocalOptions& opts, std::int64_t cap, Beta&& beta_of, Hook&& on_begin) {
  const Graph& g = run.graph;
  const double k = run.problem.k();
  const auto n = static_cast<NodeId>(g.num_nodes());
  std::vector<double> m(n, 0.0);
  std::vector<NodeId> S, prev;
  std::vector<double> step;

  auto epoch_body = [&](std::int64_t t) {
    run.begin_epoch();
    on_begin(t);
    const double beta = beta_of(t);
    step.resize(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) {
      const NodeId u = S[i];
      step[i] = (1.0 + beta) * run.r[u] + beta * m[u];
      run.trace.record_processed(run.deg[u], run.r[u]);
    }
    for (NodeId u : prev) m[u] = 0.0;
    for (std::size_t i = 0; i < S.size(); ++i) m[S[i]] = step[i];
    prev.assign(S.begin(), S.end());

    for (std::size_t i = 0; i < S.size(); ++i) {
      run.add_x(S[i], step[i]);
      run.add_r(S[i], -step[i]);
    }
    for (std::size_t i = 0; i < S.size(); ++i) {
      const NodeId u = S[i];
      const double share = k * step[i] / run.deg[u];
      for (NodeId v : g.neighbors(u)) {
        run.add_r(v, share);
        if (!opts.full_support) run.push_if_active(v);
      }
    }
    if (!opts.full_support)
      for (NodeId u : S) run.push_if_active(u);
    run.trace.end_epoch();
    if (opts.on_epoch) opts.on_epoch({t, S, run.x, run.r});
  };

  if (opts.full_support) {
    S.resize(n);
    for (NodeId u = 0; u < n; ++u) S[u] = u;
    for (std::int64_t t = 0;; ++t) {
      bool any = false;
      for (NodeId u = 0; u < n && !any; ++u) any = run.active(u);
      if (!any) return run.finish(true);
      if (t >= cap) return run.finish(false);
      epoch_body(t);
    }
  }

  run.push_if_active(run.problem.source());
  for (;;) {
    const auto ev = run.queue.next();
    if (ev.kind == EvolvingQueue::Kind::Exhausted) return run.finish(true);
    if (ev.kind == EvolvingQueue::Kind::Node)
      throw std::logic_error("batched solver found a node outside an epoch");
    if (ev.epoch >= cap) return run.finish(run.queue.size() == 0);
    S.clear();
    run.queue.drain_epoch(S);
    std::erase_if(S, [&](NodeId u) { return !run.active(u); });
    epoch_body(ev.epoch);
  }
}

Solution m_system_sor(const Problem& p, double omega, const LocalOptions& opts, std::string name) {
  check_omega(omega);
  if (opts.full_support) throw std::invalid_argument("full-support mode is not available for this solver");
  // z = r~ / c, active iff z_u >= eps d_u
  LocalRun run(p, std::move(name), p.eps(), p.c(), 1.0);
  const double gain = omega * p.c();  // omega / M_uu
  const double spread = omega * p.k();
  return run_sequential(run, opts, [&](NodeId u, double z) {
    run.add_x(u, gain * z);
    run.set_r(u, z - omega * z);
    const double share = spread * z / run.deg[u];
    for (NodeId v : run.graph.neighbors(u)) run.add_r(v, share);
  });
}

}  // namespace

Solution appr(const Problem& p, const LocalOptions& opts) {
  if (opts.full_support) throw std::invalid_argument("full-support mode is not available for appr");
  LocalRun run(p, "appr", p.eps(), p.c(), 1.0);
  const double a = p.alpha();
  return run_sequential(run, opts, [&](NodeId u, double z) {
    run.add_x(u, a * z);
    run.set_r(u, (1.0 - a) * z / 2.0);
    const double share = (1.0 - a) * z / (2.0 * run.deg[u]);
    for (NodeId v : run.graph.neighbors(u)) run.add_r(v, share);
  });
}

Solution loc_gs_sor_m(const Problem& p, double omega, const LocalOptions& opts) {
  return m_system_sor(p, omega, opts, "loc_gs_sor_m");
}

Solution loc_sor(const Problem& p, double omega, const LocalOptions& opts) {
  check_omega(omega);
  LocalRun run(p, "locsor", p.c() * p.eps(), 1.0, p.c());
  const double spread = omega * p.k();
  return run_sequential(run, opts, [&](NodeId u, double rho) {
    run.add_x(u, omega * rho);
    run.set_r(u, rho - omega * rho);
    const double share = spread * rho / run.deg[u];
    for (NodeId v : run.graph.neighbors(u)) run.add_r(v, share);
  });
}

Solution loc_gd(const Problem& p, const LocalOptions& opts) {
  LocalRun run(p, "locgd", p.c() * p.eps(), 1.0, p.c());
  return run_batched(run, opts, cap_of(opts), [](std::int64_t) { return 0.0; }, [](std::int64_t) {});
}

Solution loc_ch(const Problem& p, const LocalOptions& opts) {
  LocalRun run(p, "locch", p.c() * p.eps(), 1.0, p.c());
  const std::int64_t cap = opts.t_max ? cap_of(opts) : default_accelerated_tmax(p);
  ChebSchedule sched(p.alpha());
  const double r0 = run.l2_unscaled();
  // epoch t >= 1 uses delta_t delta_{t+1}; epoch 0 is a plain step
  auto beta = [&](std::int64_t t) {
    if (t == 0) return 0.0;
    const double b = sched.delta() * sched.delta_next();
    sched.advance();
    return b;
  };
  auto ratio = [&](std::int64_t t) {
    const double prod = t == 0 ? 1.0 : sched.product();
    run.trace.set_cheb_ratio(run.l2_unscaled() / (prod * r0));
  };
  return run_batched(run, opts, cap, beta, ratio);
}

Solution loc_hb(const Problem& p, const LocalOptions& opts) {
  LocalRun run(p, "lochb", p.c() * p.eps(), 1.0, p.c());
  const std::int64_t cap = opts.t_max ? cap_of(opts) : default_accelerated_tmax(p);
  const double b = p.atilde() * p.atilde();
  return run_batched(run, opts, cap, [b](std::int64_t) { return b; }, [](std::int64_t) {});
}

}  // namespace localppr
