#pragma once

#include <cstdint>

#include "localppr/process.hpp"
#include "localppr/problem.hpp"

namespace localppr {

// 1/(a eps)
double anderson_bound(const Problem& p);

// (1+a)/2 * min{1/(a eps), vol_bar/(a gamma_bar) * ln(C/eps)},
// C = (1+a)/((1-a)|I_T|). Only the first branch when T = 0, gamma_bar = 0 or
// |I_T| = 0.
double evolving_upper_bound(const Problem& p, const TraceSummary& s, std::size_t residual_support);

// (1+a)/2 * vol_bar/(a gamma_bar) * (1 - l1_end/l1_start); 0 for an empty trace
double evolving_lower_bound(const Problem& p, const TraceSummary& s, double l1_start, double l1_end);

// ceil((1+sqrt a)/(2 sqrt a) * ln(2/eps)), clamped at 0
std::int64_t chebyshev_iteration_bound(const Problem& p);

}  // namespace localppr
