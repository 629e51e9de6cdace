#pragma once

#include <cmath>
#include <complex>

#include "baryrat/core.hpp"

namespace baryrat {

/// sum_{k=1}^{10000} k^{-z}, accumulated from k = 10000 down to 1 so the
/// smallest terms are added first.
inline Complex zeta_truncated(Complex z) {
  Complex sum = 0.0;
  for (int k = 10000; k >= 1; --k) sum += std::exp(-z * std::log(static_cast<double>(k)));
  return sum;
}

}  // namespace baryrat
