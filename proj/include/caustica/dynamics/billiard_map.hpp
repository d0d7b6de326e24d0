#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "caustica/geometry/support_curve.hpp"
#include "caustica/numerics/big_real.hpp"
#include "caustica/numerics/precision.hpp"

namespace caustica::dynamics {

using geometry::SupportCurve;
using geometry::SupportEvaluator;
using numerics::BigReal;
using numerics::Precision;

// Decimal text of a phase point, kept verbatim so that runs at different
// precisions start from the same decimal number.
struct DecimalPoint {
  std::string phi;
  std::string p;
};

// Oriented line {x cos(phi) + y sin(phi) = p}: phi is the angle of the
// line's right normal, p its signed distance from the origin.
struct PhasePoint {
  BigReal phi;
  BigReal p;

  // Parses both coordinates at `prec`; phi is reduced to [0, 2pi).
  static PhasePoint parse(const DecimalPoint& text, const Precision& prec);
};

// F(theta) = h(theta) cos(theta - phi) - h'(theta) sin(theta - phi) - p.
// Zero exactly where the boundary point with normal angle theta lies on the
// line (phi, p).
BigReal chord_function(const SupportEvaluator& table, const BigReal& phi, const BigReal& p, const BigReal& theta);
BigReal chord_function(const SupportCurve& table, const BigReal& phi, const BigReal& p, const BigReal& theta,
                       const Precision& prec);

struct StepOutcome {
  PhasePoint point;       // phi in [0, 2pi)
  std::int64_t turns = 0;  // full turns removed; unwrapped phi1 = phi1 + 2pi*turns
  BigReal theta;          // normal angle at the reflection point
};

// The billiard map on one table at one precision.
// Default solver slack: the root of the chord function is solved to
// 10^-(decimals - kDefaultSolverSlack).
inline constexpr int kDefaultSolverSlack = 5;

class BilliardMap {
 public:
  // Throws InvalidArgument unless 0 <= solver_slack < decimals.
  BilliardMap(const SupportCurve& table, const Precision& prec, int solver_slack = kDefaultSolverSlack);

  // T(phi, p). Throws TangentLineError when the line misses the table or is
  // within 10^-(decimals-3) of tangency, SolverFailure if the root solve
  // does not converge.
  StepOutcome advance(const PhasePoint& point) const;

  // -h(phi + pi) < p < h(phi), with the tangency margin.
  bool crosses(const PhasePoint& point) const;

  const SupportEvaluator& table() const { return table_; }
  const Precision& precision() const { return prec_; }
  const BigReal& two_pi() const { return two_pi_; }

 private:
  std::optional<BigReal> seed_root(const BigReal& phi, const BigReal& p, const BigReal& h_phi) const;

  Precision prec_;
  SupportEvaluator table_;
  SupportEvaluator seed_table_;
  BigReal pi_;
  BigReal two_pi_;
  BigReal tangent_margin_;
  BigReal solve_tolerance_;
  BigReal bracket_inset_;
};

// One application of the map at `decimals` digits.
PhasePoint billiard_step(const SupportCurve& table, const PhasePoint& point, int decimals);

// phi reduced to [0, 2pi) at the precision of phi.
BigReal normalize_angle(const BigReal& phi);

}  // namespace caustica::dynamics
