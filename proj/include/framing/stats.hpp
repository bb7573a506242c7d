#pragma once

#include <cstddef>

namespace framing::stats {

/// Standard normal CDF via erfc; absolute error well below 1e-7.
double normal_cdf(double x);

struct ZTest {
  double z = 0.0;
  double p_value = 1.0;  // two-sided
};

/// Pooled two-proportion z-test of sample 1 against sample 2
/// (z > 0 when sample 1 has the larger share). When the pooled share is 0
/// or 1 there is no variance and the result is z = 0, p = 1.
ZTest two_proportion_z_test(std::size_t successes1, std::size_t n1, std::size_t successes2, std::size_t n2);

}  // namespace framing::stats
