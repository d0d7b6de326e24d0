#include "caustica/analysis/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "caustica/error.hpp"

namespace caustica::analysis {

LyapunovEstimate lyapunov_from_discrepancy(std::span<const dynamics::DiscrepancySample> log, double growth_factor) {
  if (!(growth_factor > 1.0)) throw InvalidArgument("lyapunov_from_discrepancy: growth factor must exceed 1");
  // ln taken in MPFR: discrepancies of high-precision runs underflow double.
  std::vector<std::pair<double, double>> series;
  for (const auto& s : log) {
    if (s.discrepancy > 0L) series.emplace_back(static_cast<double>(s.iteration), numerics::log(s.discrepancy).to_double());
  }
  if (series.size() < 3) throw InvalidArgument("lyapunov_from_discrepancy: need at least 3 positive entries");

  const double floor_ln =
      std::min_element(series.begin(), series.end(), [](auto& l, auto& r) { return l.second < r.second; })->second;
  const double threshold = floor_ln + std::log(growth_factor);
  const auto first = std::find_if(series.begin(), series.end(), [&](auto& e) { return e.second > threshold; });

  LyapunovEstimate out;
  const auto count = static_cast<std::size_t>(series.end() - first);
  if (first == series.end() || count < 2) {
    out.indeterminate = true;
    return out;
  }
  out.growth_start = static_cast<std::int64_t>(first->first);
  out.samples = count;

  double mean_k = 0, mean_l = 0;
  for (auto it = first; it != series.end(); ++it) {
    mean_k += it->first;
    mean_l += it->second;
  }
  mean_k /= static_cast<double>(count);
  mean_l /= static_cast<double>(count);
  double skk = 0, skl = 0;
  for (auto it = first; it != series.end(); ++it) {
    skk += (it->first - mean_k) * (it->first - mean_k);
    skl += (it->first - mean_k) * (it->second - mean_l);
  }
  out.slope = skk > 0 ? skl / skk : 0.0;
  const double k_start = std::max(first->first, 1.0);
  const double k_end = series.back().first;
  if (k_end > k_start) out.polynomial_bound = 2.0 * std::log(k_end / k_start) / (k_end - k_start);
  out.exponential = out.slope > out.polynomial_bound;
  return out;
}

}  // namespace caustica::analysis
