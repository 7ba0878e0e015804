#pragma once

#include <json.hpp>
#include <string>

#include "localppr/clustering.hpp"
#include "localppr/solvers.hpp"

namespace localppr {

inline constexpr int kSchemaVersion = 1;

// bounds that apply to this run's algorithm
nlohmann::json bounds_json(const Problem& p, const Solution& s);

// Run report; node ids are original ids. pi_hat lists nonzeros only.
nlohmann::json solution_json(const Problem& p, const Solution& s, bool include_pi = false);

// local: t,vol,size,gamma,l1,l2,cum_ops; global: t,l1,l2,linf,l2_unscaled,cum_ops
std::string trace_csv(const Solution& s);
nlohmann::json trace_json(const Solution& s);

// prefix_len,conductance
std::string sweep_csv(const SweepResult& r);

}  // namespace localppr
