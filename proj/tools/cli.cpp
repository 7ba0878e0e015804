#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "localppr/bounds.hpp"
#include "localppr/clustering.hpp"
#include "localppr/generators.hpp"
#include "localppr/oracle.hpp"
#include "localppr/report.hpp"
#include "localppr/rng.hpp"
#include "localppr/solvers.hpp"

namespace localppr::cli {

namespace {

using nlohmann::json;

struct GraphArgs {
  std::string path;
  bool keep_all = false;
};

struct ProblemArgs {
  double alpha = 0.1;
  std::string eps = "1e-6";
  std::uint64_t source = 0;
  bool dense_ids = false;
};

struct OutputArgs {
  std::string out;
  std::string format = "json";
};

void add_graph(CLI::App* app, GraphArgs& g) {
  app->add_option("--graph", g.path, "edge list, or a .lprg binary")->required();
  app->add_flag("--keep-all-components", g.keep_all, "skip largest-component extraction");
}

void add_problem(CLI::App* app, ProblemArgs& p, bool with_source = true) {
  app->add_option("--alpha", p.alpha, "damping factor")->check(CLI::Range(kMinAlpha, kMaxAlpha));
  app->add_option("--eps", p.eps, "precision, or 'auto' for 1/n");
  if (with_source) app->add_option("--source", p.source, "source node (original id)");
  app->add_flag("--dense-ids", p.dense_ids, "read --source as a 0-based dense id");
}

void add_output(CLI::App* app, OutputArgs& o) {
  app->add_option("--out", o.out, "write the report here instead of stdout");
  app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

Graph load(const GraphArgs& a) {
  std::optional<std::filesystem::path> cache;
  if (const char* dir = std::getenv("LOCALPR_CACHE_DIR"); dir && *dir) cache = dir;
  return load_graph(a.path, PreprocessOptions{!a.keep_all}, cache);
}

double resolve_eps(const std::string& text, const Graph& g) {
  if (text == "auto") return 1.0 / static_cast<double>(g.num_nodes());
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v > 0)) throw std::invalid_argument("--eps must be a positive number or 'auto'");
  return v;
}

double resolve_omega(const std::string& text, double alpha) {
  if (text == "opt") return optimal_omega(alpha);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw std::invalid_argument("--omega must be a number or 'opt'");
  if (!(v > 0 && v < 2)) throw std::invalid_argument("--omega must lie in (0, 2)");
  return v;
}

NodeId resolve_source(const Graph& g, std::uint64_t id, bool dense) {
  if (dense) {
    if (id >= g.num_nodes()) throw std::invalid_argument("source " + std::to_string(id) + " out of range");
    return static_cast<NodeId>(id);
  }
  auto u = g.find_original(id);
  if (!u) throw std::invalid_argument("source " + std::to_string(id) + " is not in the (preprocessed) graph");
  return *u;
}

Algorithm resolve_alg(const std::string& name) {
  auto a = parse_algorithm(name);
  if (!a) throw std::invalid_argument("unknown algorithm " + name);
  return *a;
}

void emit(const OutputArgs& o, const std::string& body, std::ostream& out) {
  if (o.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << body;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> algorithm_names() {
  std::vector<std::string> v;
  for (Algorithm a : kAllAlgorithms) v.emplace_back(algorithm_name(a));
  return v;
}

// solve ----------------------------------------------------------------------

struct SolveArgs {
  GraphArgs graph;
  ProblemArgs problem;
  OutputArgs output;
  std::string alg;
  std::string omega = "1";
  std::int64_t tmax = 0;
  bool include_pi = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  Graph g = load(a.graph);
  Problem p(g, a.problem.alpha, resolve_source(g, a.problem.source, a.problem.dense_ids), resolve_eps(a.problem.eps, g));
  RunConfig cfg{resolve_alg(a.alg), resolve_omega(a.omega, p.alpha()), std::nullopt};
  if (a.tmax > 0) cfg.t_max = a.tmax;
  Solution s = run_solver(p, cfg);
  if (a.output.format == "csv") {
    emit(a.output, trace_csv(s), out);
  } else {
    json j = solution_json(p, s, a.include_pi);
    if (cfg.algorithm == Algorithm::sor || cfg.algorithm == Algorithm::locsor) j["omega"] = cfg.omega;
    emit(a.output, dump(j), out);
  }
  if (!a.output.out.empty() || a.output.format == "csv")
    out << "algorithm=" << s.algorithm << " converged=" << (s.converged ? "true" : "false") << " T=" << s.epochs
        << " ops=" << s.total_ops << '\n';
  return 0;
}

// compare --------------------------------------------------------------------

struct CompareArgs {
  GraphArgs graph;
  ProblemArgs problem;
  OutputArgs output;
  std::string alg = "locsor";
  std::string omega = "1";
  std::int64_t tmax = 0;
  std::size_t sources = 0;
  std::uint64_t seed = 1;
  bool eps_sweep = false;
  std::size_t eps_points = 8;
  double eps_min = 0.0;
  double eps_max = 0.0;
  unsigned threads = 1;
};

std::vector<NodeId> pick_sources(const Graph& g, std::size_t count, std::uint64_t seed) {
  count = std::min(count, g.num_nodes());
  Rng rng(seed);
  std::vector<NodeId> out;
  std::set<NodeId> seen;
  while (out.size() < count) {
    auto u = static_cast<NodeId>(rng.below(g.num_nodes()));
    if (seen.insert(u).second) out.push_back(u);
  }
  return out;
}

// log-spaced, largest first
std::vector<double> eps_grid(double hi, double lo, std::size_t points) {
  if (points <= 1 || hi <= lo) return {hi};
  std::vector<double> v(points);
  const double step = std::log(lo / hi) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) v[i] = hi * std::exp(step * static_cast<double>(i));
  v.back() = lo;
  return v;
}

struct Row {
  std::uint64_t source;
  double eps;
  Solution local, global;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  Graph g = load(a.graph);
  RunConfig local{resolve_alg(a.alg), resolve_omega(a.omega, a.problem.alpha), std::nullopt};
  if (!is_local(local.algorithm)) throw std::invalid_argument("compare needs a local algorithm");
  if (a.tmax > 0) local.t_max = a.tmax;
  RunConfig global = *global_counterpart(local);
  if (a.tmax > 0) global.t_max = a.tmax;

  std::vector<NodeId> sources = a.sources > 0 ? pick_sources(g, a.sources, a.seed)
                                              : std::vector<NodeId>{resolve_source(g, a.problem.source, a.problem.dense_ids)};
  const double n = static_cast<double>(g.num_nodes());
  const double alpha = a.problem.alpha;

  struct Job {
    NodeId s;
    double eps;
  };
  std::vector<Job> jobs;
  for (NodeId s : sources) {
    if (a.eps_sweep) {
      const double hi = a.eps_max > 0 ? a.eps_max : alpha / (2 * (1 + alpha) * g.degree(s));
      const double lo = a.eps_min > 0 ? a.eps_min : 1e-4 / n;
      for (double e : eps_grid(hi, lo, a.eps_points)) jobs.push_back({s, e});
    } else {
      jobs.push_back({s, resolve_eps(a.problem.eps, g)});
    }
  }

  std::vector<std::optional<Row>> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mu;
  std::string failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        Problem p(g, alpha, jobs[i].s, jobs[i].eps);
        Solution l = run_solver(p, local);
        Solution gl = run_solver(p, global);
        rows[i] = Row{g.original_ids()[jobs[i].s], jobs[i].eps, std::move(l), std::move(gl)};
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mu);
        if (failure.empty()) failure = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, a.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (!failure.empty()) throw std::runtime_error(failure);

  auto ratio = [](double num, double den) { return den > 0 ? num / den : std::numeric_limits<double>::quiet_NaN(); };
  if (a.output.format == "csv") {
    std::ostringstream csv;
    csv.precision(12);
    csv << "source,eps,local_alg,global_alg,local_ops,global_ops,local_time_s,global_time_s,speedup_ops,speedup_time,"
           "local_converged,global_converged\n";
    for (const auto& r : rows)
      csv << r->source << ',' << r->eps << ',' << r->local.algorithm << ',' << r->global.algorithm << ','
          << r->local.total_ops << ',' << r->global.total_ops << ',' << r->local.wall_time << ','
          << r->global.wall_time << ',' << ratio(double(r->global.total_ops), double(r->local.total_ops)) << ','
          << ratio(r->global.wall_time, r->local.wall_time) << ',' << r->local.converged << ','
          << r->global.converged << '\n';
    emit(a.output, csv.str(), out);
  } else {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["alpha"] = alpha;
    j["seed"] = a.seed;
    j["local"] = algorithm_name(local.algorithm);
    j["global"] = algorithm_name(global.algorithm);
    j["omega"] = local.omega;
    j["rows"] = json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"source", r->source},
                           {"eps", r->eps},
                           {"local_ops", r->local.total_ops},
                           {"global_ops", r->global.total_ops},
                           {"local_epochs", r->local.epochs},
                           {"global_iterations", r->global.epochs},
                           {"local_time_s", r->local.wall_time},
                           {"global_time_s", r->global.wall_time},
                           {"speedup_ops", ratio(double(r->global.total_ops), double(r->local.total_ops))},
                           {"speedup_time", ratio(r->global.wall_time, r->local.wall_time)},
                           {"local_converged", r->local.converged},
                           {"global_converged", r->global.converged}});
    emit(a.output, dump(j), out);
  }
  return 0;
}

// cluster --------------------------------------------------------------------

struct ClusterArgs {
  GraphArgs graph;
  ProblemArgs problem;
  OutputArgs output;
  std::string alg = "locsor";
  std::string omega = "1";
  std::int64_t tmax = 0;
};

int cmd_cluster(const ClusterArgs& a, std::ostream& out) {
  Graph g = load(a.graph);
  Problem p(g, a.problem.alpha, resolve_source(g, a.problem.source, a.problem.dense_ids), resolve_eps(a.problem.eps, g));
  RunConfig cfg{resolve_alg(a.alg), resolve_omega(a.omega, p.alpha()), std::nullopt};
  if (a.tmax > 0) cfg.t_max = a.tmax;
  Solution s = run_solver(p, cfg);
  // APPR-style estimates can be all zero when the source is below threshold
  std::vector<double> pi = s.pi_hat;
  if (std::all_of(pi.begin(), pi.end(), [](double v) { return v == 0.0; })) pi[p.source()] = 1.0;
  SweepResult r = sweep_cut(g, pi);
  if (a.output.format == "csv") {
    emit(a.output, sweep_csv(r), out);
    return 0;
  }
  json cluster = json::array();
  for (std::size_t i = 0; i < r.best_prefix_len; ++i) cluster.push_back(g.original_ids()[r.ordering[i]]);
  json j = {{"schema_version", kSchemaVersion},
            {"algorithm", s.algorithm},
            {"alpha", p.alpha()},
            {"eps", p.eps()},
            {"source", g.original_ids()[p.source()]},
            {"conductance", r.best_conductance},
            {"cluster_size", r.best_prefix_len},
            {"cluster", cluster},
            {"support_size", r.ordering.size()},
            {"operations", s.total_ops},
            {"run_time_s", s.wall_time},
            {"converged", s.converged}};
  emit(a.output, dump(j), out);
  return 0;
}

// validate -------------------------------------------------------------------

struct ValidateArgs {
  GraphArgs graph;
  std::vector<double> alphas{0.05, 0.1, 0.25};
  std::vector<double> eps{1e-4, 1e-6, 1e-8};
  std::vector<std::uint64_t> sources;
  bool dense_ids = false;
  bool verbose = false;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  Graph g = load(a.graph);
  if (g.num_nodes() > kDenseSolveLimit)
    throw std::invalid_argument("validate needs a graph with at most " + std::to_string(kDenseSolveLimit) + " nodes");
  std::vector<NodeId> sources;
  for (std::uint64_t s : a.sources) sources.push_back(resolve_source(g, s, a.dense_ids));
  if (sources.empty()) sources.push_back(0);

  std::size_t runs = 0, failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      out << "FAIL " << what << '\n';
    } else if (a.verbose) {
      out << "ok   " << what << '\n';
    }
  };

  for (double alpha : a.alphas) {
    if (!(alpha >= kMinAlpha && alpha <= kMaxAlpha)) throw std::invalid_argument("alpha out of range");
    DenseOracle oracle(g, alpha);
    for (NodeId s : sources) {
      const auto star = oracle.solve(s);
      for (double eps : a.eps) {
        Problem p(g, alpha, s, eps);
        std::vector<RunConfig> cfgs;
        for (Algorithm alg : kAllAlgorithms) cfgs.push_back({alg, 1.0, std::nullopt});
        cfgs.push_back({Algorithm::locsor, p.omega_star(), std::nullopt});
        cfgs.push_back({Algorithm::sor, p.omega_star(), std::nullopt});
        for (const RunConfig& cfg : cfgs) {
          Solution sol = run_solver(p, cfg);
          ++runs;
          std::ostringstream tag;
          tag << sol.algorithm << (cfg.omega != 1.0 ? "(omega*)" : "") << " alpha=" << alpha << " eps=" << eps
              << " source=" << g.original_ids()[s];
          const std::string t = tag.str();
          check(sol.converged, t + " converged");
          const double err = error_vs_oracle(g, sol.pi_hat, star);
          check(!sol.converged || err <= eps, t + " oracle error " + std::to_string(err));
          const auto exact = residual_from_solution(p, sol.pi_hat);
          double gap = 0.0;
          for (std::size_t u = 0; u < exact.size(); ++u) gap = std::max(gap, std::abs(exact[u] - sol.residual[u]));
          check(gap <= 1e-9 * p.c(), t + " residual consistency");
          const TraceSummary sum = summarize(sol.trace);
          if (cfg.algorithm == Algorithm::appr) check(sol.total_ops <= anderson_bound(p), t + " ops <= 1/(alpha eps)");
          if ((cfg.algorithm == Algorithm::locsor && cfg.omega == 1.0) || cfg.algorithm == Algorithm::locgd) {
            check(evolving_lower_bound(p, sum, sol.l1_start, sol.l1_end) <= sol.total_ops, t + " lower bound");
            check(sol.total_ops <= evolving_upper_bound(p, sum, sol.residual_support), t + " upper bound");
            check(sum.empty || sum.vol_bar / sum.gamma_bar <= 1 / eps, t + " vol/gamma <= 1/eps");
          }
          if (cfg.algorithm == Algorithm::ch) check(sol.epochs <= chebyshev_iteration_bound(p), t + " iteration bound");
        }
      }
    }
  }
  out << (failures == 0 ? "PASS" : "FAIL") << ": " << runs << " runs, " << failures << " failed checks\n";
  return failures == 0 ? 0 : 1;
}

// generate -------------------------------------------------------------------

struct GenerateArgs {
  std::string kind = "er";
  std::size_t n = 100;
  std::uint64_t m = 0;
  std::uint64_t seed = 1;
  std::string out;
  bool binary = false;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  Graph g;
  if (a.kind == "er")
    g = erdos_renyi(a.n, a.m > 0 ? a.m : 4 * a.n, a.seed);
  else if (a.kind == "path")
    g = path_graph(a.n);
  else if (a.kind == "cycle")
    g = cycle_graph(a.n);
  else if (a.kind == "star")
    g = star_graph(a.n);
  else if (a.kind == "complete")
    g = complete_graph(a.n);
  else if (a.kind == "barbell")
    g = barbell_graph(a.n);
  else
    throw std::invalid_argument("unknown graph kind " + a.kind);
  if (a.binary) {
    if (a.out.empty()) throw std::invalid_argument("--binary needs --out");
    save_binary(g, std::filesystem::path(a.out));
    return 0;
  }
  std::ostringstream text;
  text << "# " << a.kind << " n=" << g.num_nodes() << " m=" << g.num_edges() << '\n';
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (NodeId v : g.neighbors(u))
      if (u < v) text << g.original_ids()[u] << ' ' << g.original_ids()[v] << '\n';
  emit(OutputArgs{a.out, "csv"}, text.str(), out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local solvers for personalized PageRank"};
  app.name("localppr-cli");
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "run one solver");
  add_graph(s, solve.graph);
  add_problem(s, solve.problem);
  add_output(s, solve.output);
  s->add_option("--alg", solve.alg, "algorithm")->required()->check(CLI::IsMember(algorithm_names()));
  s->add_option("--omega", solve.omega, "relaxation for sor/locsor, or 'opt'");
  s->add_option("--tmax", solve.tmax, "iteration / epoch cap")->check(CLI::PositiveNumber);
  s->add_flag("--include-pi", solve.include_pi, "list the nonzero estimate entries");

  CompareArgs compare;
  auto* c = app.add_subcommand("compare", "local solver against its global counterpart");
  add_graph(c, compare.graph);
  add_problem(c, compare.problem);
  add_output(c, compare.output);
  c->add_option("--alg", compare.alg, "local algorithm")
      ->check(CLI::IsMember({"appr", "locsor", "locgd", "locch", "lochb"}));
  c->add_option("--omega", compare.omega, "relaxation for locsor, or 'opt'");
  c->add_option("--tmax", compare.tmax, "cap for both runs")->check(CLI::PositiveNumber);
  c->add_option("--sources", compare.sources, "number of random sources (overrides --source)");
  c->add_option("--seed", compare.seed, "seed for source selection");
  c->add_flag("--eps-sweep", compare.eps_sweep, "log grid of eps per source");
  c->add_option("--eps-points", compare.eps_points, "grid size for --eps-sweep")->check(CLI::PositiveNumber);
  c->add_option("--eps-min", compare.eps_min, "smallest eps of the sweep (default 1e-4/n)");
  c->add_option("--eps-max", compare.eps_max, "largest eps of the sweep (default alpha/(2(1+alpha)d_s))");
  c->add_option("--threads", compare.threads, "worker threads")->check(CLI::PositiveNumber);

  ClusterArgs cluster;
  auto* k = app.add_subcommand("cluster", "solve, then sweep cut");
  add_graph(k, cluster.graph);
  add_problem(k, cluster.problem);
  add_output(k, cluster.output);
  k->add_option("--alg", cluster.alg, "algorithm")->check(CLI::IsMember(algorithm_names()));
  k->add_option("--omega", cluster.omega, "relaxation for sor/locsor, or 'opt'");
  k->add_option("--tmax", cluster.tmax, "iteration / epoch cap")->check(CLI::PositiveNumber);

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "check every solver against the dense oracle");
  add_graph(v, validate.graph);
  v->add_option("--alpha", validate.alphas, "damping factors")->check(CLI::Range(kMinAlpha, kMaxAlpha));
  v->add_option("--eps", validate.eps, "precisions")->check(CLI::PositiveNumber);
  v->add_option("--source", validate.sources, "sources (original ids)");
  v->add_flag("--dense-ids", validate.dense_ids, "read --source as dense ids");
  v->add_flag("--verbose", validate.verbose, "print passing checks too");

  GenerateArgs generate;
  auto* gen = app.add_subcommand("generate", "write a synthetic edge list");
  gen->add_option("--kind", generate.kind, "er, path, cycle, star, complete, barbell")
      ->check(CLI::IsMember({"er", "path", "cycle", "star", "complete", "barbell"}));
  gen->add_option("--n", generate.n, "nodes (leaves for star, clique size for barbell)");
  gen->add_option("--m", generate.m, "edges for er (default 4n)");
  gen->add_option("--seed", generate.seed, "seed for er");
  gen->add_option("--out", generate.out, "output path");
  gen->add_flag("--binary", generate.binary, "write the binary CSR format");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    auto used = app.get_subcommands();
    out << (used.empty() ? app.help() : used.front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (s->parsed()) return cmd_solve(solve, out);
    if (c->parsed()) return cmd_compare(compare, out);
    if (k->parsed()) return cmd_cluster(cluster, out);
    if (v->parsed()) return cmd_validate(validate, out);
    if (gen->parsed()) return cmd_generate(generate, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace localppr::cli
