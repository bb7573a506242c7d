#include "framing/stats.hpp"

#include "framing/error.hpp"

#include <algorithm>
#include <cmath>

namespace framing::stats {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

ZTest two_proportion_z_test(std::size_t successes1, std::size_t n1, std::size_t successes2, std::size_t n2) {
  if (n1 == 0 || n2 == 0) fail(ErrorKind::validation, "z-test needs two non-empty samples");
  if (successes1 > n1 || successes2 > n2) fail(ErrorKind::validation, "more successes than trials");
  const double p1 = static_cast<double>(successes1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(successes2) / static_cast<double>(n2);
  const double pooled = static_cast<double>(successes1 + successes2) / static_cast<double>(n1 + n2);
  const double variance = pooled * (1.0 - pooled) * (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2));
  if (variance <= 0.0) return {};
  ZTest out;
  out.z = (p1 - p2) / std::sqrt(variance);
  out.p_value = std::clamp(2.0 * normal_cdf(-std::abs(out.z)), 0.0, 1.0);
  return out;
}

}  // namespace framing::stats
