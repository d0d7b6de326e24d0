#include "caustica/analysis/periodic.hpp"

#include <cmath>
#include <string>

#include "caustica/error.hpp"

namespace caustica::analysis {

using dynamics::BilliardMap;
using numerics::Precision;

namespace {

constexpr int kMaxNewtonSteps = 50;
constexpr int kMaxHalvings = 40;

struct Image {
  BigReal phi;  // unwrapped, in the frame of the input angle
  BigReal p;
};

Image apply_power(const BilliardMap& map, const PhasePoint& x, int q) {
  PhasePoint cur = x;
  std::int64_t turns = 0;
  for (int i = 0; i < q; ++i) {
    dynamics::StepOutcome out = map.advance(cur);
    turns += out.turns;
    cur = std::move(out.point);
  }
  return Image{cur.phi + map.two_pi() * static_cast<long>(turns), std::move(cur.p)};
}

Matrix2 jacobian(const BilliardMap& map, const PhasePoint& x, int q) {
  const Precision& prec = map.precision();
  const BigReal h = numerics::pow10(-(prec.decimals() / 3), prec);
  const BigReal two_h = h * 2L;
  const Image phi_plus = apply_power(map, PhasePoint{x.phi + h, x.p}, q);
  const Image phi_minus = apply_power(map, PhasePoint{x.phi - h, x.p}, q);
  const Image p_plus = apply_power(map, PhasePoint{x.phi, x.p + h}, q);
  const Image p_minus = apply_power(map, PhasePoint{x.phi, x.p - h}, q);
  return Matrix2{(phi_plus.phi - phi_minus.phi) / two_h, (p_plus.phi - p_minus.phi) / two_h,
                 (phi_plus.p - phi_minus.p) / two_h, (p_plus.p - p_minus.p) / two_h};
}

BigReal max_abs(const std::array<BigReal, 2>& v) {
  BigReal a = abs(v[0]);
  BigReal b = abs(v[1]);
  return a > b ? a : b;
}

void require_fd_precision(int decimals) {
  if (decimals < 12) {
    throw PrecisionError("finite-difference Jacobian needs at least 12 decimals, got " + std::to_string(decimals));
  }
}

}  // namespace

std::string to_string(Stability s) {
  switch (s) {
    case Stability::kHyperbolic:
      return "hyperbolic";
    case Stability::kElliptic:
      return "elliptic";
    case Stability::kParabolic:
      return "parabolic";
  }
  return "unknown";
}

std::array<std::complex<double>, 2> OrbitClassification::eigenvalues() const {
  const double tr = trace.to_double();
  const double det = jacobian.determinant().to_double();
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr / 4.0 - det, 0.0));
  // Larger-magnitude root first; the other from det / lambda to avoid
  // cancellation.
  const std::complex<double> big = tr >= 0 ? tr / 2.0 + disc : tr / 2.0 - disc;
  if (std::abs(big) == 0.0) return {big, big};
  return {big, det / big};
}

std::array<BigReal, 2> return_map_offset(const BilliardMap& map, const PhasePoint& x, int q, long m) {
  const Image img = apply_power(map, x, q);
  return {img.phi - x.phi - map.two_pi() * m, img.p - x.p};
}

Matrix2 return_map_jacobian(const SupportCurve& table, const PhasePoint& x, int q, int decimals) {
  require_fd_precision(decimals);
  if (q < 1) throw InvalidArgument("period must be >= 1");
  const Precision prec(decimals);
  const BilliardMap map(table, prec);
  return jacobian(map, PhasePoint{x.phi.rounded_to(prec), x.p.rounded_to(prec)}, q);
}

PeriodicOrbit find_periodic(const SupportCurve& table, int q, long m, const PhasePoint& seed, int decimals,
                            std::optional<BigReal> tol) {
  if (q < 1) throw InvalidArgument("period must be >= 1");
  require_fd_precision(decimals);
  const Precision prec(decimals);
  const BigReal floor_tol = numerics::pow10(-(decimals - 10), prec);
  const BigReal target = tol ? max(tol->rounded_to(prec), floor_tol) : floor_tol;
  const BilliardMap map(table, prec);

  PhasePoint x{dynamics::normalize_angle(seed.phi.rounded_to(prec)), seed.p.rounded_to(prec)};
  std::array<BigReal, 2> g = return_map_offset(map, x, q, m);
  BigReal r = max_abs(g);

  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    if (r <= target) return PeriodicOrbit{std::move(x), q, m, std::move(r)};

    Matrix2 dg = jacobian(map, x, q);
    dg.a -= BigReal(1L, prec);
    dg.d -= BigReal(1L, prec);
    const BigReal det = dg.determinant();
    if (abs(det) < floor_tol) {
      throw DegenerateJacobian("find_periodic: singular return-map Jacobian (|det| = " + abs(det).to_string(6) + ")");
    }
    // delta = -DG^{-1} g
    const BigReal d_phi = (dg.b * g[1] - dg.d * g[0]) / det;
    const BigReal d_p = (dg.c * g[0] - dg.a * g[1]) / det;

    BigReal lambda(1L, prec);
    bool accepted = false;
    for (int halving = 0; halving < kMaxHalvings && !accepted; ++halving, lambda /= 2L) {
      PhasePoint trial{dynamics::normalize_angle(x.phi + lambda * d_phi), x.p + lambda * d_p};
      try {
        std::array<BigReal, 2> gt = return_map_offset(map, trial, q, m);
        BigReal rt = max_abs(gt);
        if (rt < r) {
          x = std::move(trial);
          g = std::move(gt);
          r = std::move(rt);
          accepted = true;
        }
      } catch (const StepError&) {
        // Trial left the table; shorten the step.
      }
    }
    if (!accepted) throw NoConvergence("find_periodic: damping failed to reduce the residual", r.to_double());
  }
  if (r <= target) return PeriodicOrbit{std::move(x), q, m, std::move(r)};
  throw NoConvergence("find_periodic: residual above tolerance after " + std::to_string(kMaxNewtonSteps) +
                          " Newton steps",
                      r.to_double());
}

OrbitClassification classify(const SupportCurve& table, const PeriodicOrbit& orbit, int decimals) {
  require_fd_precision(decimals);
  OrbitClassification out;
  out.jacobian = return_map_jacobian(table, orbit.point, orbit.period, decimals);
  out.trace = out.jacobian.trace();
  out.residue = (2L - out.trace) / 4L;
  const double abs_trace = std::fabs(out.trace.to_double());
  if (abs_trace > 2.0 + kParabolicBand) {
    out.verdict = Stability::kHyperbolic;
  } else if (abs_trace < 2.0 - kParabolicBand) {
    out.verdict = Stability::kElliptic;
  } else {
    out.verdict = Stability::kParabolic;
  }
  return out;
}

}  // namespace caustica::analysis
