#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "localppr/bounds.hpp"
#include "localppr/generators.hpp"
#include "localppr/global_solvers.hpp"
#include "localppr/local_solvers.hpp"
#include "localppr/oracle.hpp"

using namespace localppr;
using doctest::Approx;

namespace {

double max_gap(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<Solution> all_local(const Problem& p) {
  return {appr(p), loc_sor(p, 1.0), loc_sor(p, p.omega_star()), loc_gd(p), loc_ch(p), loc_hb(p)};
}

}  // namespace

TEST_CASE("APPR first push on K2") {
  Graph g = k2();
  Problem p(g, 0.1, 0, 1e-4);
  std::vector<double> p_after, z_after;
  LocalOptions opts;
  opts.on_push = [&](const PushView& v) {
    if (p_after.empty()) {
      p_after.assign(v.x.begin(), v.x.end());
      z_after.assign(v.r.begin(), v.r.end());
    }
  };
  appr(p, opts);
  CHECK(p_after[0] == Approx(0.1).epsilon(1e-15));
  CHECK(p_after[1] == 0.0);
  CHECK(z_after[0] == Approx(0.45).epsilon(1e-15));
  CHECK(z_after[1] == Approx(0.45).epsilon(1e-15));
}

TEST_CASE("source below threshold converges with no work") {
  Graph g = star_graph(4);
  Problem p(g, 0.1, 0, 0.3);  // eps > 1/4
  for (const Solution& s : all_local(p)) {
    CHECK(s.converged);
    CHECK(s.total_ops == 0);
    CHECK(s.epochs == 0);
    for (double v : s.pi_hat) CHECK(v == 0.0);
  }
}

TEST_CASE("K2 reaches the closed form") {
  Graph g = k2();
  for (NodeId s : {NodeId{0}, NodeId{1}}) {
    Problem p(g, 0.1, s, 1e-8);
    std::vector<double> star = s == 0 ? std::vector<double>{0.55, 0.45} : std::vector<double>{0.45, 0.55};
    for (const Solution& sol : all_local(p)) {
      CAPTURE(sol.algorithm);
      CHECK(sol.converged);
      CHECK(error_vs_oracle(g, sol.pi_hat, star) <= 1e-8);
    }
  }
}

TEST_CASE("LocSOR first push on K2") {
  Graph g = k2();
  Problem p(g, 0.1, 0, 1e-4);
  std::vector<double> x, r;
  LocalOptions opts;
  opts.on_push = [&](const PushView& v) {
    if (x.empty()) {
      x.assign(v.x.begin(), v.x.end());
      r.assign(v.r.begin(), v.r.end());
    }
  };
  loc_sor(p, 1.0, opts);
  CHECK(x[0] == Approx(p.c()).epsilon(1e-15));
  CHECK(x[1] == 0.0);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == Approx(0.148760330578).epsilon(1e-11));
}

TEST_CASE("omega domain") {
  Graph g = k2();
  Problem p(g, 0.1, 0, 1e-4);
  CHECK_THROWS_AS(loc_sor(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(loc_sor(p, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(loc_gs_sor_m(p, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(appr(p, LocalOptions{.full_support = true}), std::invalid_argument);
  CHECK_THROWS_AS(loc_gd(p, LocalOptions{.t_max = 0}), std::invalid_argument);
}

TEST_CASE("M-system SOR with omega = (1+a)/2 replays APPR epoch by epoch") {
  for (const Graph& g : {k2(), star_graph(4), barbell_graph(), fixtures::er200()}) {
    for (double a : {0.05, 0.25}) {
      Problem p(g, a, 1, 1e-7);
      std::vector<std::vector<double>> ref;
      LocalOptions o1, o2;
      o1.on_epoch = [&](const EpochView& v) { ref.emplace_back(v.x.begin(), v.x.end()); };
      std::size_t i = 0;
      double worst = 0.0;
      o2.on_epoch = [&](const EpochView& v) {
        REQUIRE(i < ref.size());
        worst = std::max(worst, max_gap(v.x, ref[i++]));
      };
      Solution s1 = appr(p, o1);
      Solution s2 = loc_gs_sor_m(p, (1 + a) / 2, o2);
      CHECK(i == ref.size());
      CHECK(worst <= 1e-12);
      CHECK(s1.total_ops == s2.total_ops);
    }
  }
}

TEST_CASE("M-system SOR: large graph final vector and tiny omega") {
  Graph g = fixtures::er1000();
  Problem p(g, 0.1, 5, 1e-6);
  CHECK(max_gap(appr(p).pi_hat, loc_gs_sor_m(p, 0.55).pi_hat) <= 1e-10);

  // omega near zero barely moves the residual
  LocalOptions one;
  one.t_max = 1;
  Solution s = loc_gs_sor_m(p, 1e-9, one);
  CHECK_FALSE(s.converged);
  CHECK(s.l1_start - s.l1_end <= 1e-9 * s.l1_start);
}

TEST_CASE("LocGD epoch 0 on K2 matches LocSOR") {
  Graph g = k2();
  Problem p(g, 0.1, 0, 1e-4);
  std::vector<double> gd_x, gd_r, sor_x, sor_r;
  LocalOptions a, b;
  a.on_epoch = [&](const EpochView& v) {
    if (v.epoch == 0) gd_x.assign(v.x.begin(), v.x.end()), gd_r.assign(v.r.begin(), v.r.end());
  };
  b.on_epoch = [&](const EpochView& v) {
    if (v.epoch == 0) sor_x.assign(v.x.begin(), v.x.end()), sor_r.assign(v.r.begin(), v.r.end());
  };
  loc_gd(p, a);
  loc_sor(p, 1.0, b);
  CHECK(gd_x == sor_x);
  CHECK(gd_r == sor_r);
  CHECK(gd_x[0] == Approx(p.c()));
  CHECK(gd_r[1] == Approx(0.9 * p.c() / 1.1));
}

TEST_CASE("LocGD epoch 1 on a star is one batched matvec") {
  Graph g = star_graph(3);
  Problem p(g, 0.1, 0, 1e-6);
  std::vector<double> before, after;
  std::vector<NodeId> S1;
  LocalOptions opts;
  opts.on_epoch = [&](const EpochView& v) {
    if (v.epoch == 0) before.assign(v.r.begin(), v.r.end());
    if (v.epoch == 1) {
      after.assign(v.r.begin(), v.r.end());
      S1.assign(v.processed.begin(), v.processed.end());
    }
  };
  loc_gd(p, opts);
  CHECK(S1 == std::vector<NodeId>{1, 2, 3});
  // r - (I - k A D^{-1}) r_S computed densely
  std::vector<double> rs(4, 0.0), w(4);
  for (NodeId u : S1) rs[u] = before[u];
  scaled_adjacency_product(g, rs, w);
  for (NodeId u = 0; u < 4; ++u) CHECK(after[u] == Approx(before[u] - rs[u] + p.k() * w[u]).epsilon(1e-14));
}

TEST_CASE("Chebyshev schedule at alpha = 0.1") {
  ChebSchedule s(0.1);
  CHECK(s.index() == 1);
  CHECK(s.delta() == 0.9 / 1.1);
  CHECK(s.delta_next() == Approx(0.6149068322981367).epsilon(1e-14));
  s.advance();
  CHECK(s.product() == Approx(0.5031055900621118).epsilon(1e-14));
  CHECK(s.product() * chebyshev_T(2, 11.0 / 9.0) == Approx(1.0).epsilon(1e-14));
  for (int t = 3; t <= 50; ++t) {
    s.advance();
    CHECK(s.index() == t);
    CHECK(s.delta() > 0);
    CHECK(s.delta() < 1);
    CHECK(std::abs(s.product() * chebyshev_T(t, 11.0 / 9.0) - 1.0) <= 1e-12);
  }
}

TEST_CASE("heavy-ball momentum constant") {
  Graph g = k2();
  Problem p(g, 0.1, 0, 1e-4);
  CHECK(p.atilde() == Approx(0.519494).epsilon(1e-6));
  CHECK(p.atilde() * p.atilde() == Approx(0.269874).epsilon(1e-6));
}

TEST_CASE("default accelerated cap") {
  Graph g = k2();
  Problem p(g, 0.1, 0, 1e-6);
  const double sa = std::sqrt(0.1);
  CHECK(default_accelerated_tmax(p) == 4 * static_cast<std::int64_t>(std::ceil((1 + sa) / sa * std::log(2e6))));
  LocalOptions one;
  one.t_max = 2;
  Graph big = fixtures::er200();
  Solution s = loc_ch(Problem(big, 0.1, 0, 1e-8), one);
  CHECK_FALSE(s.converged);
  CHECK(s.epochs == 2);
}

namespace {

// r after local epoch t vs global iteration t+1
template <typename Local, typename Global>
double trajectory_gap(const Problem& p, Local&& local, Global&& global, std::size_t& compared) {
  std::vector<std::vector<double>> loc;
  LocalOptions lo;
  lo.full_support = true;
  lo.on_epoch = [&](const EpochView& v) { loc.emplace_back(v.r.begin(), v.r.end()); };
  Solution ls = local(p, lo);
  std::vector<std::vector<double>> glob;
  GlobalOptions go;
  go.on_iteration = [&](const IterationView& v) { glob.emplace_back(v.r.begin(), v.r.end()); };
  Solution gs = global(p, go);
  CHECK(ls.converged);
  CHECK(gs.converged);
  CHECK(loc.size() + 1 == glob.size());
  double worst = 0.0;
  compared = std::min(loc.size(), glob.size() - 1);
  for (std::size_t t = 0; t < compared; ++t) worst = std::max(worst, max_gap(loc[t], glob[t + 1]));
  return worst;
}

}  // namespace

TEST_CASE("full-support runs follow the global solvers") {
  Graph g = fixtures::er50();
  for (double a : {0.05, 0.1, 0.25}) {
    Problem p(g, a, 7, 1e-8);
    std::size_t k = 0;
    CHECK(trajectory_gap(p, [](auto& q, auto& o) { return loc_ch(q, o); },
                         [](auto& q, auto& o) { return global_chebyshev(q, o); }, k) <= 1e-10);
    CHECK(k > 5);
    CHECK(trajectory_gap(p, [](auto& q, auto& o) { return loc_hb(q, o); },
                         [](auto& q, auto& o) { return global_hb(q, o); }, k) <= 1e-10);
    CHECK(trajectory_gap(p, [](auto& q, auto& o) { return loc_gd(q, o); },
                         [](auto& q, auto& o) { return global_gd(q, o); }, k) <= 1e-10);
    CHECK(trajectory_gap(p, [](auto& q, auto& o) { return loc_sor(q, 1.0, o); },
                         [](auto& q, auto& o) { return global_sor(q, 1.0, o); }, k) <= 1e-10);
  }
}

TEST_CASE("monotone solvers: signs, per-epoch l1 identity, runtime ratio") {
  for (const Graph& g : {fixtures::er200(), barbell_graph(6), path_graph(30)}) {
    for (double a : {0.05, 0.25}) {
      for (double eps : {1e-4, 1e-7}) {
        Problem p(g, a, 2, eps);
        for (int which = 0; which < 3; ++which) {
          const double omega = which == 0 ? 1.0 : which == 1 ? 0.6 : 1.0;
          bool nonneg = true;
          LocalOptions opts;
          opts.on_epoch = [&](const EpochView& v) {
            for (double x : v.x) nonneg = nonneg && x >= 0;
            for (double r : v.r) nonneg = nonneg && r >= 0;
          };
          Solution s = which == 2 ? loc_gd(p, opts) : loc_sor(p, omega, opts);
          CAPTURE(which);
          CHECK(s.converged);
          CHECK(nonneg);
          const auto& rec = s.trace.records();
          for (std::size_t t = 0; t < rec.size(); ++t) {
            const double next = t + 1 < rec.size() ? rec[t + 1].l1 : s.trace.final_l1();
            const double predicted = (1 - 2 * a * omega * rec[t].gamma / (1 + a)) * rec[t].l1;
            CHECK(std::abs(next - predicted) <= 1e-9 * rec[t].l1);
            CHECK(rec[t].gamma <= 2.0);
          }
          auto sum = summarize(s.trace);
          CHECK(sum.vol_bar / sum.gamma_bar <= 1 / eps);
          CHECK(s.total_ops <= (1 + a) / (2 * a * eps) / omega + 1e-9);
          CHECK(evolving_lower_bound(p, sum, s.l1_start, s.l1_end) <= s.total_ops);
          if (omega == 1.0) CHECK(s.total_ops <= evolving_upper_bound(p, sum, s.residual_support));
        }
      }
    }
  }
}

TEST_CASE("APPR invariants per push") {
  Graph g = fixtures::er200();
  for (double eps : {1e-3, 1e-6}) {
    Problem p(g, 0.1, 0, eps);
    double prev = 1.0;
    bool ok = true;
    LocalOptions opts;
    opts.on_push = [&](const PushView& v) {
      double l1 = 0.0;
      for (double z : v.r) {
        ok = ok && z >= 0;
        l1 += z;
      }
      ok = ok && l1 < prev;
      prev = l1;
    };
    Solution s = appr(p, opts);
    CHECK(ok);
    CHECK(s.total_ops <= 1 / (0.1 * eps));
    std::uint64_t vol = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
      if (s.pi_hat[u] > 0) vol += g.degree(u);
    CHECK(vol <= 2 / (0.9 * eps));
  }
}

TEST_CASE("maintained residual matches b - Qx") {
  Graph g = fixtures::er1000();
  for (double a : {0.05, 0.25}) {
    Problem p(g, a, 11, 1e-7);
    for (const Solution& s : all_local(p)) {
      CAPTURE(s.algorithm);
      auto exact = residual_from_solution(p, s.pi_hat);
      CHECK(max_gap(exact, s.residual) <= 1e-9 * p.c());
      // stop test on the maintained residual
      CHECK(s.converged);
      CHECK(is_converged(p, s.residual));
      std::size_t support = 0;
      for (double v : s.residual) support += v != 0.0;
      CHECK(support == s.residual_support);
    }
  }
}

TEST_CASE("accelerated solvers record the Chebyshev ratio") {
  Graph g = fixtures::er200();
  Problem p(g, 0.1, 0, 1e-6);
  Solution s = loc_ch(p);
  REQUIRE(s.trace.epochs() > 2);
  CHECK(s.trace.records()[0].cheb_ratio == Approx(1.0));
  CHECK(std::isfinite(s.trace.records()[2].cheb_ratio));
  CHECK(std::isnan(loc_hb(p).trace.records()[1].cheb_ratio));
}

TEST_CASE("oracle accuracy on small fixtures") {
  for (const Graph& g : {path_graph(3), star_graph(4), triangle(), barbell_graph(), fixtures::er50()}) {
    for (double a : {0.05, 0.1, 0.25}) {
      auto star = dense_ppr(g, a, 0);
      for (double eps : {1e-4, 1e-6, 1e-8}) {
        Problem p(g, a, 0, eps);
        for (const Solution& s : all_local(p)) {
          CAPTURE(s.algorithm);
          CHECK(s.converged);
          CHECK(error_vs_oracle(g, s.pi_hat, star) <= eps);
        }
      }
    }
  }
}
