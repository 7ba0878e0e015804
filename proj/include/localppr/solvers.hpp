#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "localppr/global_solvers.hpp"
#include "localppr/local_solvers.hpp"

namespace localppr {

enum class Algorithm { appr, locsor, locgd, locch, lochb, gd, sor, ch, hb, cg };

inline constexpr std::array<Algorithm, 10> kAllAlgorithms = {
    Algorithm::appr, Algorithm::locsor, Algorithm::locgd, Algorithm::locch, Algorithm::lochb,
    Algorithm::gd,   Algorithm::sor,    Algorithm::ch,    Algorithm::hb,    Algorithm::cg};

std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm a);
bool is_local(Algorithm a);

struct RunConfig {
  Algorithm algorithm = Algorithm::locsor;
  double omega = 1.0;  // sor / locsor only
  std::optional<std::int64_t> t_max;
};

// appr -> sor(1), locsor -> sor(same omega), locgd -> gd, locch -> ch,
// lochb -> hb; nullopt for globals
std::optional<RunConfig> global_counterpart(const RunConfig& local);

Solution run_solver(const Problem& p, const RunConfig& cfg);

}  // namespace localppr
