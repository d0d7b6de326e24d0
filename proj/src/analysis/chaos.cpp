#include "caustica/analysis/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "caustica/error.hpp"
#include "caustica/kernels/knn.hpp"

namespace caustica::analysis {

namespace {

// Power of two close to the extent, so that rescaling is exact and keeps
// exactly collinear inputs collinear.
double axis_scale(double lo, double hi) {
  const double extent = hi - lo;
  if (!(extent > 0.0) || !std::isfinite(extent)) return 1.0;
  int e = 0;
  std::frexp(extent, &e);
  return std::ldexp(1.0, -e);
}

// RMS transverse / RMS tangential spread of a neighbourhood, from moments
// taken about the query point.
double local_aspect(std::span<const double> xs, std::span<const double> ys, std::size_t centre,
                    std::span<const kernels::Neighbor> nbrs) {
  const double n = static_cast<double>(nbrs.size() + 1);
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (const auto& nb : nbrs) {
    const double dx = xs[nb.index] - xs[centre];
    const double dy = ys[nb.index] - ys[centre];
    sx += dx;
    sy += dy;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  // n^2 times the covariance matrix [[a, b], [b, c]].
  const double a = n * sxx - sx * sx;
  const double c = n * syy - sy * sy;
  const double b = n * sxy - sx * sy;
  const double half_trace = 0.5 * (a + c);
  const double lambda_max = half_trace + std::hypot(0.5 * (a - c), b);
  if (!(lambda_max > 0.0)) return 0.0;
  // det = a c - b^2 with the b^2 rounding error compensated.
  const double bb = b * b;
  const double bb_err = std::fma(b, b, -bb);
  const double det = std::fma(a, c, -bb) - bb_err;
  const double lambda_min = std::max(det / lambda_max, 0.0);
  return std::sqrt(lambda_min / lambda_max);
}

}  // namespace

ChaosReport chaos_thickness(std::span<const PlanePoint> points, int k, unsigned threads) {
  if (k < 4) throw InvalidArgument("chaos_thickness: neighbour count must be >= 4");
  if (points.size() < static_cast<std::size_t>(k) + 1) {
    throw InvalidArgument("chaos_thickness: need at least " + std::to_string(k + 1) + " points, got " +
                          std::to_string(points.size()));
  }
  const std::size_t n = points.size();
  auto [min_phi, max_phi] = std::minmax_element(points.begin(), points.end(),
                                                [](const PlanePoint& l, const PlanePoint& r) { return l.phi < r.phi; });
  auto [min_p, max_p] = std::minmax_element(points.begin(), points.end(),
                                            [](const PlanePoint& l, const PlanePoint& r) { return l.p < r.p; });
  const double scale_x = axis_scale(min_phi->phi, max_phi->phi);
  const double scale_y = axis_scale(min_p->p, max_p->p);

  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = points[i].phi * scale_x;
    ys[i] = points[i].p * scale_y;
  }

  std::vector<double> aspect(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads ? threads : std::thread::hardware_concurrency(),
                                                           static_cast<unsigned>(n)));
  const kernels::SimdLevel level = kernels::active_simd_level();
  auto run = [&](std::size_t begin, std::size_t end) {
    std::vector<kernels::Neighbor> nbrs(static_cast<std::size_t>(k));
    for (std::size_t i = begin; i < end; ++i) {
      kernels::k_nearest(xs, ys, xs[i], ys[i], i, nbrs, level);
      aspect[i] = local_aspect(xs, ys, i, nbrs);
    }
  };
  if (workers == 1) {
    run(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
  }

  const auto mid = aspect.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(aspect.begin(), mid, aspect.end());
  ChaosReport out;
  out.thickness = *mid;
  out.neighbors = k;
  out.verdict_hint = out.thickness < kCurveLikeThickness ? "curve-like"
                     : out.thickness > kChaoticThickness ? "chaotic"
                                                         : "ambiguous";
  return out;
}

std::vector<PlanePoint> to_plane(std::span<const dynamics::OrbitPoint> points) {
  std::vector<PlanePoint> out;
  out.reserve(points.size());
  for (const auto& pt : points) out.push_back(PlanePoint{pt.phi.to_double(), pt.p.to_double()});
  return out;
}

}  // namespace caustica::analysis
