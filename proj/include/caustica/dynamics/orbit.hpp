#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "caustica/dynamics/billiard_map.hpp"
#include "caustica/numerics/precision.hpp"

namespace caustica::dynamics {

using numerics::PrecisionConfig;

// One stored iterate. The unwrapped angle is phi + 2*pi*turns.
struct OrbitPoint {
  std::int64_t iteration = 0;
  BigReal phi;
  BigReal p;
  std::int64_t turns = 0;
};

struct DiscrepancySample {
  std::int64_t iteration = 0;
  BigReal discrepancy;
};

struct OrbitRecord {
  std::string table;
  PhasePoint start;
  int decimals = 0;
  // Present only for shadow runs.
  std::optional<PrecisionConfig> precision;
  std::int64_t requested_iterations = 0;
  // Iterations actually performed (less than requested after an abort).
  std::int64_t completed_iterations = 0;
  std::int64_t stride = 1;
  // points[0] is the start; then every stride-th iterate.
  std::vector<OrbitPoint> points;
  // Last iterate computed, whether or not the stride stored it.
  OrbitPoint last;
  // Non-empty exactly when a control run was made.
  std::vector<DiscrepancySample> discrepancy_log;
  std::optional<BigReal> max_discrepancy;
  std::optional<std::int64_t> aborted_at;
};

// count applications of the map from `start` at `decimals` digits, storing
// iterates 0, stride, 2*stride, ... Deterministic: the same arguments give
// bit-identical records. Step errors are rethrown with the index of the
// failing step attached.
OrbitRecord iterate(const SupportCurve& table, const PhasePoint& start, std::int64_t count, int decimals,
                    std::int64_t stride = 1, int solver_slack = kDefaultSolverSlack);

// Paired run: the orbit from the decimal start is advanced in lockstep at
// cfg.decimals and cfg.control_decimals. The discrepancy at step k is
// max(|dphi|, |dp|) between the two (phi unwrapped). It is logged every
// `log_every` steps and at the last step; the run stops, recording
// aborted_at, once it exceeds cfg.abort_threshold(). The returned points
// are those of the working-precision run.
OrbitRecord shadow_run(const SupportCurve& table, const DecimalPoint& start, std::int64_t count,
                       const PrecisionConfig& cfg, std::int64_t log_every, std::int64_t stride = 1,
                       int solver_slack = kDefaultSolverSlack);

}  // namespace caustica::dynamics
