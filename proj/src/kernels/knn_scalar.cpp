#include "caustica/kernels/knn.hpp"

namespace caustica::kernels::scalar {

void k_nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy, std::size_t skip,
               std::span<Neighbor> out) {
  std::size_t filled = 0;
  const std::size_t n = xs.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (j == skip) continue;
    const double dx = xs[j] - qx;
    const double dy = ys[j] - qy;
    const double d2 = dx * dx + dy * dy;
    if (filled == out.size() && d2 > out[filled - 1].dist2) continue;
    filled = detail::insert_sorted(out, filled, Neighbor{d2, static_cast<std::uint32_t>(j)});
  }
}

}  // namespace caustica::kernels::scalar
