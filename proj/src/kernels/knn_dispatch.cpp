#include <cstdlib>
#include <string_view>

#include "caustica/error.hpp"
#include "caustica/kernels/knn.hpp"

namespace caustica::kernels {

const char* to_string(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar:
      return "scalar";
    case SimdLevel::kAvx2:
      return "avx2";
  }
  return "unknown";
}

SimdLevel detected_simd_level() {
#if defined(__x86_64__) || defined(_M_X64)
  static const SimdLevel level = __builtin_cpu_supports("avx2") ? SimdLevel::kAvx2 : SimdLevel::kScalar;
  return level;
#else
  return SimdLevel::kScalar;
#endif
}

SimdLevel active_simd_level() {
  const char* env = std::getenv("CAUSTICA_SIMD");
  if (env != nullptr && std::string_view(env) == "scalar") return SimdLevel::kScalar;
  return detected_simd_level();
}

void k_nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy, std::size_t skip,
               std::span<Neighbor> out, SimdLevel level) {
  if (xs.size() != ys.size()) throw InvalidArgument("k_nearest: coordinate arrays differ in length");
  if (out.empty() || out.size() + 1 > xs.size()) throw InvalidArgument("k_nearest: not enough points");
  if (level == SimdLevel::kAvx2 && detected_simd_level() == SimdLevel::kAvx2) {
    avx2::k_nearest(xs, ys, qx, qy, skip, out);
  } else {
    scalar::k_nearest(xs, ys, qx, qy, skip, out);
  }
}

void k_nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy, std::size_t skip,
               std::span<Neighbor> out) {
  k_nearest(xs, ys, qx, qy, skip, out, active_simd_level());
}

}  // namespace caustica::kernels
