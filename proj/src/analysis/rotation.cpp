#include "caustica/analysis/rotation.hpp"

#include <vector>

#include "caustica/error.hpp"

namespace caustica::analysis {

BigReal rotation_number(std::span<const OrbitPoint> points) {
  if (points.size() < 2 || points.back().iteration <= points.front().iteration) {
    throw InvalidArgument("rotation_number: need at least two iterates");
  }
  const OrbitPoint& first = points.front();
  const OrbitPoint& last = points.back();
  BigReal two_pi(last.phi.bits());
  mpfr_const_pi(two_pi.get(), MPFR_RNDN);
  two_pi *= 2L;
  const BigReal advance = last.phi - first.phi + two_pi * static_cast<long>(last.turns - first.turns);
  return advance / (two_pi * static_cast<long>(last.iteration - first.iteration));
}

BigReal rotation_number(const OrbitRecord& orbit) {
  if (orbit.points.empty()) throw InvalidArgument("rotation_number: empty orbit");
  const std::vector<OrbitPoint> ends{orbit.points.front(), orbit.last};
  return rotation_number(ends);
}

BigReal caustic_deviation(std::span<const OrbitPoint> points, const geometry::CausticPolygon& polygon) {
  if (points.empty()) throw InvalidArgument("caustic_deviation: empty orbit");
  BigReal worst(points.front().p.bits());
  for (const OrbitPoint& pt : points) {
    BigReal d = abs(pt.p - geometry::caustic_support(polygon, pt.phi));
    if (d > worst) worst = std::move(d);
  }
  return worst;
}

BigReal caustic_deviation(const OrbitRecord& orbit, const geometry::CausticPolygon& polygon) {
  return caustic_deviation(orbit.points, polygon);
}

}  // namespace caustica::analysis
