#pragma once

#include <utility>
#include <vector>

#include "caustica/geometry/support_curve.hpp"

namespace caustica::geometry {

// Convex polygon around which the string is wrapped. Its support function
// gives the invariant curve p = h_gamma(phi) of tangent lines.
struct CausticPolygon {
  std::vector<std::pair<BigReal, BigReal>> vertices;
  BigReal string_length;

  // Unit regular hexagon with vertices at angles k*pi/3, V1 = (1, 0), and
  // string length 7.
  static CausticPolygon regular_hexagon(const Precision& prec);
};

// max over vertices of <v, (cos phi, sin phi)>. Throws InvalidArgument for
// an empty polygon.
BigReal caustic_support(const CausticPolygon& polygon, const BigReal& phi);

// |P - F1| + |P - F2| for the boundary point P at normal angle theta on the
// fundamental arc [pi/6, pi/2] of the hexagonal table, with the arc's foci
// F1 = (1, 0) and F2 = (-1/2, sqrt(3)/2). Equals the major axis 3 there.
BigReal focal_sum_check(const BigReal& theta, const Precision& prec);

struct SupportRange {
  BigReal min_h;
  BigReal max_h;
  BigReal deviation() const { return max_h - min_h; }
};

// Extremes of h over one symmetry period (a full turn when none is
// declared), sampled at `samples` equispaced angles plus the multiples of
// pi/6 inside the period. Throws InvalidArgument for samples < 2.
SupportRange circularity_deviation(const SupportCurve& curve, int samples, const Precision& prec);

}  // namespace caustica::geometry
