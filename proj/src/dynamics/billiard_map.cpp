#include "caustica/dynamics/billiard_map.hpp"

#include <optional>

#include "caustica/error.hpp"
#include "caustica/numerics/solver.hpp"

namespace caustica::dynamics {

namespace {

// Low-precision pass that hands the full-precision Newton iteration a
// starting point good to ~13 digits.
constexpr int kSeedDecimals = 16;
constexpr int kSeedToleranceExponent = -13;

numerics::ValueAndSlope chord_with_slope(const SupportEvaluator& table, const BigReal& phi, const BigReal& p,
                                         const BigReal& theta) {
  const geometry::SupportValue v = table(theta);
  const auto [s, c] = sin_cos(theta - phi);
  // dF/dtheta = -(h + h'') sin(theta - phi) < 0 on (phi, phi + pi).
  return {v.h * c - v.dh * s - p, -(v.radius_of_curvature() * s)};
}

}  // namespace

BigReal normalize_angle(const BigReal& phi) {
  BigReal full(phi.bits());
  mpfr_const_pi(full.get(), MPFR_RNDN);
  full *= 2L;
  BigReal out = phi - floor(phi / full) * full;
  if (out >= full) out -= full;
  return out;
}

PhasePoint PhasePoint::parse(const DecimalPoint& text, const Precision& prec) {
  return PhasePoint{normalize_angle(BigReal::parse(text.phi, prec)), BigReal::parse(text.p, prec)};
}

BigReal chord_function(const SupportEvaluator& table, const BigReal& phi, const BigReal& p, const BigReal& theta) {
  const geometry::SupportValue v = table(theta);
  const auto [s, c] = sin_cos(theta - phi);
  return v.h * c - v.dh * s - p;
}

BigReal chord_function(const SupportCurve& table, const BigReal& phi, const BigReal& p, const BigReal& theta,
                       const Precision& prec) {
  return chord_function(table.at(prec), phi.rounded_to(prec), p.rounded_to(prec), theta.rounded_to(prec));
}

namespace {

int checked_slack(const Precision& prec, int slack) {
  if (slack < 0 || slack >= prec.decimals()) {
    throw InvalidArgument("solver slack must lie in [0, " + std::to_string(prec.decimals()) + ")");
  }
  return slack;
}

}  // namespace

BilliardMap::BilliardMap(const SupportCurve& table, const Precision& prec, int solver_slack)
    : prec_(prec),
      table_(table.at(prec)),
      seed_table_(table.at(Precision(kSeedDecimals))),
      pi_(BigReal::pi(prec)),
      two_pi_(pi_ * 2L),
      tangent_margin_(numerics::pow10(-(prec.decimals() - 3), prec)),
      solve_tolerance_(numerics::pow10(-(prec.decimals() - checked_slack(prec, solver_slack)), prec)),
      bracket_inset_(numerics::pow10(-prec.decimals(), prec) * pi_) {}

bool BilliardMap::crosses(const PhasePoint& point) const {
  const BigReal phi = point.phi.rounded_to(prec_);
  const BigReal p = point.p.rounded_to(prec_);
  return p < table_.h(phi) - tangent_margin_ && p > tangent_margin_ - table_.h(phi + pi_);
}

std::optional<BigReal> BilliardMap::seed_root(const BigReal& phi, const BigReal& p, const BigReal& h_phi) const {
  const Precision seed_prec(kSeedDecimals);
  const BigReal phi_s = phi.rounded_to(seed_prec);
  const BigReal p_s = p.rounded_to(seed_prec);
  // Circle guess: theta - phi = arccos(p / h(phi)).
  BigReal ratio = p_s / h_phi.rounded_to(seed_prec);
  if (ratio > 1L) ratio = BigReal(1L, seed_prec);
  if (ratio < -1L) ratio = BigReal(-1L, seed_prec);
  numerics::SolveOptions opts;
  opts.initial_guess = phi_s + acos(ratio);
  opts.check_bracket = false;
  try {
    return numerics::solve_decreasing(
        [&](const BigReal& theta) { return chord_with_slope(seed_table_, phi_s, p_s, theta); }, phi_s,
        phi_s + BigReal::pi(seed_prec), numerics::pow10(kSeedToleranceExponent, seed_prec), opts);
  } catch (const Error&) {
    // Near-tangent lines can defeat the low-precision pass; the full solve
    // then starts from the circle guess instead.
    return opts.initial_guess;
  }
}

StepOutcome BilliardMap::advance(const PhasePoint& point) const {
  BigReal phi = point.phi.rounded_to(prec_);
  const BigReal p = point.p.rounded_to(prec_);
  std::int64_t turns = 0;
  if (phi < 0L || phi >= two_pi_) {
    const BigReal k = floor(phi / two_pi_);
    turns = k.to_long_floor();
    phi -= k * two_pi_;
  }

  const BigReal h_phi = table_.h(phi);
  if (!(p < h_phi - tangent_margin_) || !(p > tangent_margin_ - table_.h(phi + pi_))) {
    throw TangentLineError("line (phi=" + phi.to_string(20) + ", p=" + p.to_string(20) +
                           ") is tangent to or misses the table");
  }

  numerics::SolveOptions opts;
  opts.initial_guess = seed_root(phi, p, h_phi);
  // F(phi) = h(phi) - p > 0 and F(phi + pi) = -h(phi + pi) - p < 0 were just
  // checked; the inset endpoints inherit those signs since F'(phi) = 0.
  opts.check_bracket = false;
  BigReal theta(prec_);
  try {
    theta = numerics::solve_decreasing(
        [&](const BigReal& t) { return chord_with_slope(table_, phi, p, t); }, phi + bracket_inset_,
        phi + pi_ - bracket_inset_, solve_tolerance_, opts);
  } catch (const ConvergenceError& e) {
    throw SolverFailure(e.what());
  } catch (const BracketError& e) {
    throw SolverFailure(e.what());
  }

  // p1 = x cos(phi1) + y sin(phi1) at the reflection point reduces to
  // h cos(theta - phi) + h' sin(theta - phi) since theta - phi1 = phi - theta.
  const geometry::SupportValue v = table_(theta);
  const auto [s, c] = sin_cos(theta - phi);
  StepOutcome out{PhasePoint{theta * 2L - phi, v.h * c + v.dh * s}, turns, theta};
  if (out.point.phi >= two_pi_) {
    out.point.phi -= two_pi_;
    out.turns += 1;
  }
  return out;
}

PhasePoint billiard_step(const SupportCurve& table, const PhasePoint& point, int decimals) {
  return BilliardMap(table, Precision(decimals)).advance(point).point;
}

}  // namespace caustica::dynamics
