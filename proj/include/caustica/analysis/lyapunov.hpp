#pragma once

#include <cstdint>
#include <span>

#include "caustica/dynamics/orbit.hpp"

namespace caustica::analysis {

struct LyapunovEstimate {
  // Least-squares slope of ln(discrepancy) per iteration over the growth
  // phase; 0 when indeterminate.
  double slope = 0.0;
  // True when no entry rises above growth_factor times the minimum, i.e.
  // the log never leaves the rounding floor.
  bool indeterminate = false;
  // First iteration of the growth phase.
  std::int64_t growth_start = 0;
  std::size_t samples = 0;
  // Largest slope a quadratic power law d ~ k^2 yields over the fitted
  // window: 2 ln(k_end / k_start) / (k_end - k_start). Round-off on an
  // invariant curve grows polynomially (linearly, from the twist), so its
  // log-slope is positive but stays under this bound.
  double polynomial_bound = 0.0;
  // slope > polynomial_bound: separation is exponential.
  bool exponential = false;
};

// Exponential separation rate from a shadow-run discrepancy log. The growth
// phase starts at the first entry whose discrepancy exceeds growth_factor
// times the log's minimum. Throws InvalidArgument with fewer than 3 positive
// entries.
LyapunovEstimate lyapunov_from_discrepancy(std::span<const dynamics::DiscrepancySample> log,
                                           double growth_factor = 10.0);

}  // namespace caustica::analysis
