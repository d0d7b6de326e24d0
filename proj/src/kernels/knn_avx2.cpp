#include "caustica/kernels/knn.hpp"

#include <limits>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define CAUSTICA_HAVE_AVX2_KERNEL 1
#endif

namespace caustica::kernels::avx2 {

#ifdef CAUSTICA_HAVE_AVX2_KERNEL

// Distances are formed with separate multiply and add (no FMA) so every
// lane matches the scalar kernel bit for bit.
__attribute__((target("avx2"))) void k_nearest(std::span<const double> xs, std::span<const double> ys, double qx,
                                               double qy, std::size_t skip, std::span<Neighbor> out) {
  const std::size_t n = xs.size();
  const std::size_t k = out.size();
  std::size_t filled = 0;
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  alignas(32) double lanes[4];

  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + j), vqx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + j), vqy);
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const double limit = filled == k ? out[k - 1].dist2 : std::numeric_limits<double>::infinity();
    int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, _mm256_set1_pd(limit), _CMP_LE_OQ));
    if (mask == 0) continue;
    _mm256_store_pd(lanes, d2);
    while (mask != 0) {
      const int lane = __builtin_ctz(static_cast<unsigned>(mask));
      mask &= mask - 1;
      const std::size_t idx = j + static_cast<std::size_t>(lane);
      if (idx == skip) continue;
      if (filled == k && lanes[lane] > out[k - 1].dist2) continue;
      filled = detail::insert_sorted(out, filled, Neighbor{lanes[lane], static_cast<std::uint32_t>(idx)});
    }
  }
  for (; j < n; ++j) {
    if (j == skip) continue;
    const double dx = xs[j] - qx;
    const double dy = ys[j] - qy;
    const double d2 = dx * dx + dy * dy;
    if (filled == k && d2 > out[k - 1].dist2) continue;
    filled = detail::insert_sorted(out, filled, Neighbor{d2, static_cast<std::uint32_t>(j)});
  }
}

#else

void k_nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy, std::size_t skip,
               std::span<Neighbor> out) {
  scalar::k_nearest(xs, ys, qx, qy, skip, out);
}

#endif

}  // namespace caustica::kernels::avx2
