#include "caustica/dynamics/orbit.hpp"

#include "caustica/error.hpp"

namespace caustica::dynamics {

namespace {

void check_counts(std::int64_t count, std::int64_t stride) {
  if (count < 1) throw InvalidArgument("iteration count must be >= 1");
  if (stride < 1) throw InvalidArgument("stride must be >= 1");
}

template <typename Fn>
auto with_iteration(std::int64_t k, Fn&& fn) {
  try {
    return fn();
  } catch (StepError& e) {
    e.set_iteration(k);
    throw;
  }
}

}  // namespace

OrbitRecord iterate(const SupportCurve& table, const PhasePoint& start, std::int64_t count, int decimals,
                    std::int64_t stride, int solver_slack) {
  check_counts(count, stride);
  const Precision prec(decimals);
  const BilliardMap map(table, prec, solver_slack);

  OrbitRecord rec;
  rec.table = table.label();
  rec.start = PhasePoint{normalize_angle(start.phi.rounded_to(prec)), start.p.rounded_to(prec)};
  rec.decimals = decimals;
  rec.requested_iterations = count;
  rec.stride = stride;
  rec.points.reserve(static_cast<std::size_t>(count / stride + 1));

  OrbitPoint current{0, rec.start.phi, rec.start.p, 0};
  rec.points.push_back(current);
  for (std::int64_t k = 1; k <= count; ++k) {
    StepOutcome out = with_iteration(k, [&] { return map.advance(PhasePoint{current.phi, current.p}); });
    current.iteration = k;
    current.phi = std::move(out.point.phi);
    current.p = std::move(out.point.p);
    current.turns += out.turns;
    if (k % stride == 0) rec.points.push_back(current);
  }
  rec.completed_iterations = count;
  rec.last = std::move(current);
  return rec;
}

OrbitRecord shadow_run(const SupportCurve& table, const DecimalPoint& start, std::int64_t count,
                       const PrecisionConfig& cfg, std::int64_t log_every, std::int64_t stride,
                       int solver_slack) {
  check_counts(count, stride);
  if (log_every < 1) throw InvalidArgument("log interval must be >= 1");
  const BilliardMap work(table, cfg.working(), solver_slack);
  const BilliardMap control(table, cfg.control(), solver_slack);
  const BigReal threshold = cfg.abort_threshold();
  const BigReal& two_pi = control.two_pi();

  OrbitRecord rec;
  rec.table = table.label();
  rec.start = PhasePoint::parse(start, cfg.working());
  rec.decimals = cfg.decimals();
  rec.precision = cfg;
  rec.requested_iterations = count;
  rec.stride = stride;

  OrbitPoint a{0, rec.start.phi, rec.start.p, 0};
  const PhasePoint control_start = PhasePoint::parse(start, cfg.control());
  OrbitPoint b{0, control_start.phi, control_start.p, 0};
  rec.points.push_back(a);

  BigReal worst(cfg.control());
  std::int64_t k = 1;
  for (; k <= count; ++k) {
    StepOutcome sa = with_iteration(k, [&] { return work.advance(PhasePoint{a.phi, a.p}); });
    StepOutcome sb = with_iteration(k, [&] { return control.advance(PhasePoint{b.phi, b.p}); });
    a = OrbitPoint{k, std::move(sa.point.phi), std::move(sa.point.p), a.turns + sa.turns};
    b = OrbitPoint{k, std::move(sb.point.phi), std::move(sb.point.p), b.turns + sb.turns};

    const BigReal dphi = abs(a.phi - b.phi + two_pi * static_cast<long>(a.turns - b.turns));
    const BigReal dp = abs(a.p - b.p);
    BigReal disc = dphi > dp ? dphi : dp;
    if (disc > worst) worst = disc;
    const bool abort = disc > threshold;

    if (k % stride == 0) rec.points.push_back(a);
    if (k % log_every == 0 || k == count || abort) rec.discrepancy_log.push_back({k, std::move(disc)});
    if (abort) {
      rec.aborted_at = k;
      break;
    }
  }
  rec.completed_iterations = rec.aborted_at ? *rec.aborted_at : count;
  rec.max_discrepancy = std::move(worst);
  rec.last = std::move(a);
  return rec;
}

}  // namespace caustica::dynamics
