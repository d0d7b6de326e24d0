#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "caustica/dynamics/orbit.hpp"

namespace caustica::analysis {

struct PlanePoint {
  double phi;
  double p;
};

// Calibrated verdict thresholds for chaos_thickness.
inline constexpr double kCurveLikeThickness = 1e-3;
inline constexpr double kChaoticThickness = 1e-1;

struct ChaosReport {
  double thickness = 0.0;
  int neighbors = 0;
  // "curve-like", "chaotic" or "ambiguous".
  std::string verdict_hint;
};

// Median over all points of the local aspect ratio of the point cloud:
// for each point, its k nearest neighbours (Euclidean after scaling each
// axis by the cloud's extent) are fitted by second moments, and the RMS
// deviation across the principal direction is divided by the RMS spread
// along it. Zero for collinear points; O(1) for a point cloud that fills an
// area. Throws InvalidArgument when k < 4 or fewer than k + 1 points.
ChaosReport chaos_thickness(std::span<const PlanePoint> points, int k = 16, unsigned threads = 0);

// Stored iterates of an orbit as doubles.
std::vector<PlanePoint> to_plane(std::span<const dynamics::OrbitPoint> points);

}  // namespace caustica::analysis
