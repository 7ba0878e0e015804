#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "localppr/bounds.hpp"
#include "localppr/generators.hpp"
#include "localppr/global_solvers.hpp"
#include "localppr/oracle.hpp"
#include "localppr/solvers.hpp"

using namespace localppr;
using doctest::Approx;

namespace {

std::vector<Solution> all_global(const Problem& p) {
  return {global_gd(p), global_sor(p, 1.0), global_sor(p, p.omega_star()), global_chebyshev(p), global_hb(p),
          conjugate_gradient(p)};
}

}  // namespace

TEST_CASE("K2 accuracy for every global solver") {
  Graph g = k2();
  Problem p(g, 0.1, 0, 1e-8);
  std::vector<double> star{0.55, 0.45};
  for (const Solution& s : all_global(p)) {
    CAPTURE(s.algorithm);
    CHECK(s.converged);
    CHECK(error_vs_oracle(g, s.pi_hat, star) <= 1e-8);
    CHECK(s.total_ops == static_cast<std::uint64_t>(s.epochs) * 2);
    CHECK(s.global_trace.size() == static_cast<std::size_t>(s.epochs) + 1);
  }
}

TEST_CASE("one GD iteration on K2") {
  Graph g = k2();
  Problem p(g, 0.1, 0, 1e-8);
  std::vector<double> r1;
  GlobalOptions o;
  o.on_iteration = [&](const IterationView& v) {
    if (v.t == 1) r1.assign(v.r.begin(), v.r.end());
  };
  global_gd(p, o);
  CHECK(r1[0] == 0.0);
  CHECK(r1[1] == Approx(0.9 * p.c() / 1.1).epsilon(1e-15));
}

TEST_CASE("zero-residual start converges immediately") {
  Graph g = star_graph(5);
  Problem p(g, 0.2, 0, 0.5);  // eps > 1/d_s
  for (const Solution& s : all_global(p)) {
    CHECK(s.converged);
    CHECK(s.epochs == 0);
    CHECK(s.total_ops == 0);
  }
}

TEST_CASE("SOR domain and over-relaxation speedup") {
  Graph g = fixtures::er1000();
  Problem p(g, 0.1, 0, 1e-8);
  CHECK_THROWS_AS(global_sor(p, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(global_sor(p, 0.0), std::invalid_argument);
  Solution one = global_sor(p, 1.0), opt = global_sor(p, p.omega_star());
  CHECK(one.converged);
  CHECK(opt.converged);
  CHECK(opt.epochs < one.epochs);
}

TEST_CASE("SOR(omega*) contraction approaches atilde") {
  for (const Graph& g : {fixtures::er50(), fixtures::er200(), barbell_graph(8)}) {
    Problem p(g, 0.1, 0, 1e-12);
    Solution s = global_sor(p, p.omega_star());
    REQUIRE(s.global_trace.size() > 22);
    const auto& tr = s.global_trace;
    const std::size_t last = tr.size() - 1;
    const double factor = std::pow(tr[last].l2 / tr[last - 20].l2, 1.0 / 20.0);
    CHECK(factor <= p.atilde() + 0.05);
  }
}

TEST_CASE("Chebyshev residual bound and iteration count") {
  for (const Graph& g : {k2(), star_graph(4), barbell_graph(), fixtures::er50(), fixtures::er200()}) {
    for (double a : {0.05, 0.1, 0.25}) {
      for (double eps : {1e-4, 1e-8}) {
        Problem p(g, a, 0, eps);
        Solution s = global_chebyshev(p);
        CHECK(s.converged);
        CHECK(s.epochs <= chebyshev_iteration_bound(p));
        const double b = s.global_trace[0].l2_unscaled;
        for (const auto& rec : s.global_trace)
          CHECK(rec.l2_unscaled <= 2 * std::pow(p.atilde(), double(rec.t)) * b * (1 + 1e-12));
        CHECK(s.max_drift <= kDriftTolerance);
      }
    }
  }
}

TEST_CASE("HB and Chebyshev residual recurrences stay on b - Qx") {
  Graph g = fixtures::er1000();
  Problem p(g, 0.01, 0, 1e-10);
  for (Solution s : {global_chebyshev(p), global_hb(p)}) {
    CHECK(s.converged);
    CHECK(s.epochs > 64);  // at least one checkpoint
    CHECK(s.max_drift <= kDriftTolerance);
    auto exact = residual_from_solution(p, s.pi_hat);
    for (std::size_t u = 0; u < exact.size(); ++u) CHECK(std::abs(exact[u] - s.residual[u]) <= 1e-8 * p.c());
  }
}

TEST_CASE("CG: Krylov termination and orthogonal residuals") {
  Graph g = k2();
  Problem p(g, 0.1, 0, 1e-12);
  Solution s = conjugate_gradient(p);
  CHECK(s.converged);
  CHECK(s.epochs <= 2);

  Graph h = fixtures::er200();
  Problem q(h, 0.1, 3, 1e-10);
  std::vector<std::vector<double>> rs;
  GlobalOptions o;
  o.on_iteration = [&](const IterationView& v) { rs.emplace_back(v.r.begin(), v.r.end()); };
  Solution c = conjugate_gradient(q, o);
  CHECK(c.converged);
  CHECK(error_vs_oracle(h, c.pi_hat, dense_ppr(h, 0.1, 3)) <= 1e-10);
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (NodeId u = 0; u < a.size(); ++u) sum += a[u] * b[u] / h.degree(u);
    return sum;
  };
  const std::size_t k = std::min<std::size_t>(rs.size(), 8);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      CHECK(std::abs(dot(rs[i], rs[j])) <= 1e-8 * std::sqrt(dot(rs[i], rs[i]) * dot(rs[j], rs[j])));
}

TEST_CASE("oracle accuracy and cap") {
  Graph g = fixtures::er200();
  for (double a : {0.05, 0.25}) {
    auto star = dense_ppr(g, a, 17);
    for (double eps : {1e-4, 1e-8}) {
      Problem p(g, a, 17, eps);
      for (const Solution& s : all_global(p)) {
        CAPTURE(s.algorithm);
        CHECK(s.converged);
        CHECK(error_vs_oracle(g, s.pi_hat, star) <= eps);
      }
    }
  }
  Problem p(g, 0.1, 0, 1e-10);
  GlobalOptions cap;
  cap.t_max = 3;
  Solution s = global_gd(p, cap);
  CHECK_FALSE(s.converged);
  CHECK(s.epochs == 3);
  CHECK(s.total_ops == 3 * g.total_volume());
}

TEST_CASE("solver registry") {
  CHECK(parse_algorithm("locch") == Algorithm::locch);
  CHECK_FALSE(parse_algorithm("nope").has_value());
  for (Algorithm a : kAllAlgorithms) CHECK(parse_algorithm(algorithm_name(a)) == a);
  CHECK(global_counterpart({Algorithm::appr})->algorithm == Algorithm::sor);
  CHECK(global_counterpart({Algorithm::appr})->omega == 1.0);
  CHECK(global_counterpart({Algorithm::locsor, 1.3})->omega == 1.3);
  CHECK(global_counterpart({Algorithm::lochb})->algorithm == Algorithm::hb);
  CHECK_FALSE(global_counterpart({Algorithm::cg}).has_value());
  Graph g = k2();
  Problem p(g, 0.1, 0, 1e-6);
  for (Algorithm a : kAllAlgorithms) CHECK(run_solver(p, {a}).algorithm == algorithm_name(a));
}
