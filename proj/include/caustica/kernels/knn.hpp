#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace caustica::kernels {

// Candidate neighbour, ordered by (dist2, index).
struct Neighbor {
  double dist2;
  std::uint32_t index;
};

enum class SimdLevel { kScalar, kAvx2 };

const char* to_string(SimdLevel level);

// Best level the running CPU supports.
SimdLevel detected_simd_level();

// Level used by the dispatching entry point: the detected level, capped by
// the CAUSTICA_SIMD environment variable ("scalar" or "avx2") when set.
SimdLevel active_simd_level();

// The out.size() nearest points to (qx, qy) among (xs[j], ys[j]), j != skip,
// sorted by (squared distance, index). Requires out.size() + 1 <= xs.size()
// and xs.size() == ys.size(). All variants return identical results.
void k_nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy, std::size_t skip,
               std::span<Neighbor> out);
void k_nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy, std::size_t skip,
               std::span<Neighbor> out, SimdLevel level);

namespace scalar {
void k_nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy, std::size_t skip,
               std::span<Neighbor> out);
}

namespace avx2 {
// Only valid when detected_simd_level() == kAvx2.
void k_nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy, std::size_t skip,
               std::span<Neighbor> out);
}

namespace detail {

// Insert `cand` into the sorted prefix out[0, filled); drops the worst
// entry once full. Returns the new fill count.
inline std::size_t insert_sorted(std::span<Neighbor> out, std::size_t filled, Neighbor cand) {
  auto before = [](const Neighbor& l, const Neighbor& r) {
    return l.dist2 < r.dist2 || (l.dist2 == r.dist2 && l.index < r.index);
  };
  const std::size_t k = out.size();
  if (filled == k) {
    if (!before(cand, out[k - 1])) return filled;
    --filled;
  }
  std::size_t pos = filled;
  while (pos > 0 && before(cand, out[pos - 1])) {
    out[pos] = out[pos - 1];
    --pos;
  }
  out[pos] = cand;
  return filled + 1;
}

}  // namespace detail

}  // namespace caustica::kernels
