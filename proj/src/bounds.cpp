#include "localppr/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace localppr {

double anderson_bound(const Problem& p) { return 1.0 / (p.alpha() * p.eps()); }

double evolving_upper_bound(const Problem& p, const TraceSummary& s, std::size_t residual_support) {
  const double a = p.alpha();
  const double first = anderson_bound(p);
  double best = first;
  if (!s.empty && s.gamma_bar > 0.0 && residual_support > 0) {
    const double C = (1.0 + a) / ((1.0 - a) * static_cast<double>(residual_support));
    const double second = s.vol_bar / (a * s.gamma_bar) * std::log(C / p.eps());
    best = std::min(first, second);
  }
  return (1.0 + a) / 2.0 * best;
}

double evolving_lower_bound(const Problem& p, const TraceSummary& s, double l1_start, double l1_end) {
  if (s.empty || s.gamma_bar <= 0.0 || l1_start <= 0.0) return 0.0;
  const double a = p.alpha();
  return (1.0 + a) / 2.0 * s.vol_bar / (a * s.gamma_bar) * (1.0 - l1_end / l1_start);
}

std::int64_t chebyshev_iteration_bound(const Problem& p) {
  const double sa = std::sqrt(p.alpha());
  const double t = std::ceil((1.0 + sa) / (2.0 * sa) * std::log(2.0 / p.eps()));
  return t > 0 ? static_cast<std::int64_t>(t) : 0;
}

}  // namespace localppr
