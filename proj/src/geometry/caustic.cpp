#include "caustica/geometry/caustic.hpp"

#include "caustica/error.hpp"

namespace caustica::geometry {

CausticPolygon CausticPolygon::regular_hexagon(const Precision& prec) {
  CausticPolygon out{{}, BigReal(7L, prec)};
  const BigReal pi = BigReal::pi(prec);
  for (long k = 0; k < 6; ++k) {
    auto [s, c] = sin_cos(pi * k / 3L);
    out.vertices.emplace_back(std::move(c), std::move(s));
  }
  return out;
}

BigReal caustic_support(const CausticPolygon& polygon, const BigReal& phi) {
  if (polygon.vertices.empty()) throw InvalidArgument("caustic_support: polygon has no vertices");
  const auto [s, c] = sin_cos(phi);
  BigReal best = polygon.vertices.front().first * c + polygon.vertices.front().second * s;
  for (std::size_t i = 1; i < polygon.vertices.size(); ++i) {
    BigReal v = polygon.vertices[i].first * c + polygon.vertices[i].second * s;
    if (v > best) best = std::move(v);
  }
  return best;
}

BigReal focal_sum_check(const BigReal& theta, const Precision& prec) {
  const BoundaryPoint pt = boundary_point(SupportCurve::hexagonal(), theta, prec);
  const BigReal half_root3 = sqrt(BigReal(3L, prec)) / 2L;
  const BigReal dx1 = pt.x - 1L;
  const BigReal dx2 = pt.x + BigReal(1L, prec) / 2L;
  const BigReal dy2 = pt.y - half_root3;
  return sqrt(dx1 * dx1 + pt.y * pt.y) + sqrt(dx2 * dx2 + dy2 * dy2);
}

SupportRange circularity_deviation(const SupportCurve& curve, int samples, const Precision& prec) {
  if (samples < 2) throw InvalidArgument("circularity_deviation: need at least 2 samples");
  const SupportEvaluator table = curve.at(prec);
  const BigReal pi = BigReal::pi(prec);
  const int order = curve.symmetry_order() > 0 ? curve.symmetry_order() : 1;
  const BigReal period = pi * 2L / static_cast<long>(order);

  BigReal lo = table.h(BigReal(prec));
  BigReal hi = lo;
  auto visit = [&](const BigReal& theta) {
    BigReal h = table.h(theta);
    if (h < lo) lo = h;
    if (h > hi) hi = std::move(h);
  };
  for (int i = 0; i < samples; ++i) visit(period * static_cast<long>(i) / static_cast<long>(samples));
  // 12 / order multiples of pi/6 fit in one period.
  for (long k = 0; k * order < 12; ++k) visit(pi * k / 6L);
  return SupportRange{std::move(lo), std::move(hi)};
}

}  // namespace caustica::geometry
