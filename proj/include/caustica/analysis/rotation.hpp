#pragma once

#include <span>

#include "caustica/dynamics/orbit.hpp"
#include "caustica/geometry/caustic.hpp"

namespace caustica::analysis {

using dynamics::OrbitPoint;
using dynamics::OrbitRecord;
using numerics::BigReal;

// (phi_N - phi_0) / (2 pi N) from unwrapped angles, N being the iteration
// distance between the first and last point. Throws InvalidArgument when
// fewer than two distinct iterations are available.
BigReal rotation_number(std::span<const OrbitPoint> points);
// Uses the start and the final iterate of the record.
BigReal rotation_number(const OrbitRecord& orbit);

// max over stored points of |p_k - h_gamma(phi_k)|.
BigReal caustic_deviation(const OrbitRecord& orbit, const geometry::CausticPolygon& polygon);
BigReal caustic_deviation(std::span<const OrbitPoint> points, const geometry::CausticPolygon& polygon);

}  // namespace caustica::analysis
