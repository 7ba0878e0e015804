#include "localppr/solvers.hpp"

#include <stdexcept>

namespace localppr {

namespace {
constexpr std::array<std::string_view, 10> kNames = {"appr", "locsor", "locgd", "locch", "lochb",
                                                     "gd",   "sor",    "ch",    "hb",    "cg"};
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return kAllAlgorithms[i];
  return std::nullopt;
}

std::string_view algorithm_name(Algorithm a) { return kNames[static_cast<std::size_t>(a)]; }

bool is_local(Algorithm a) { return static_cast<int>(a) <= static_cast<int>(Algorithm::lochb); }

std::optional<RunConfig> global_counterpart(const RunConfig& local) {
  RunConfig g;
  switch (local.algorithm) {
    case Algorithm::appr: g.algorithm = Algorithm::sor; break;
    case Algorithm::locsor:
      g.algorithm = Algorithm::sor;
      g.omega = local.omega;
      break;
    case Algorithm::locgd: g.algorithm = Algorithm::gd; break;
    case Algorithm::locch: g.algorithm = Algorithm::ch; break;
    case Algorithm::lochb: g.algorithm = Algorithm::hb; break;
    default: return std::nullopt;
  }
  return g;
}

Solution run_solver(const Problem& p, const RunConfig& cfg) {
  LocalOptions lo;
  lo.t_max = cfg.t_max;
  GlobalOptions go;
  if (cfg.t_max) go.t_max = *cfg.t_max;
  switch (cfg.algorithm) {
    case Algorithm::appr: return appr(p, lo);
    case Algorithm::locsor: return loc_sor(p, cfg.omega, lo);
    case Algorithm::locgd: return loc_gd(p, lo);
    case Algorithm::locch: return loc_ch(p, lo);
    case Algorithm::lochb: return loc_hb(p, lo);
    case Algorithm::gd: return global_gd(p, go);
    case Algorithm::sor: return global_sor(p, cfg.omega, go);
    case Algorithm::ch: return global_chebyshev(p, go);
    case Algorithm::hb: return global_hb(p, go);
    case Algorithm::cg: return conjugate_gradient(p, go);
  }
  throw std::logic_error("unknown algorithm");
}

}  // namespace localppr
