#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>

#include "caustica/dynamics/billiard_map.hpp"

namespace caustica::analysis {

using dynamics::PhasePoint;
using geometry::SupportCurve;
using numerics::BigReal;

struct Matrix2 {
  BigReal a, b;  // row 0
  BigReal c, d;  // row 1

  BigReal trace() const { return a + d; }
  BigReal determinant() const { return a * d - b * c; }
};

struct PeriodicOrbit {
  PhasePoint point;
  int period = 0;
  long winding = 0;
  // max(|dphi|, |dp|) of T^q(point) - (point + (2 pi m, 0)), phi unwrapped.
  BigReal residual;
};

enum class Stability { kHyperbolic, kElliptic, kParabolic };
std::string to_string(Stability s);

struct OrbitClassification {
  Matrix2 jacobian;  // D(T^q) at the periodic point
  BigReal trace;
  BigReal residue;  // (2 - trace) / 4
  Stability verdict = Stability::kParabolic;

  // Roots of lambda^2 - trace lambda + det.
  std::array<std::complex<double>, 2> eigenvalues() const;
};

// Band around |trace| = 2 reported as parabolic.
inline constexpr double kParabolicBand = 1e-6;

// T^q(x) - (x + (2 pi m, 0)) with the angle unwrapped.
std::array<BigReal, 2> return_map_offset(const dynamics::BilliardMap& map, const PhasePoint& x, int q, long m);

// Jacobian of T^q at `x` by centered differences with step
// 10^-floor(decimals/3). Throws PrecisionError when decimals < 12.
Matrix2 return_map_jacobian(const SupportCurve& table, const PhasePoint& x, int q, int decimals);

// Damped Newton iteration on G(x) = T^q(x) - (x + (2 pi m, 0)) from
// `seed`. The tolerance defaults to 10^-(decimals-10), the smallest the
// search accepts.
//
// Throws NoConvergence when 50 Newton steps do not bring the residual below
// tol or a step cannot be damped into a reduction, DegenerateJacobian when
// |det DG| < 10^-(decimals-10).
PeriodicOrbit find_periodic(const SupportCurve& table, int q, long m, const PhasePoint& seed, int decimals,
                            std::optional<BigReal> tol = std::nullopt);

// Hyperbolic when |trace| > 2 + kParabolicBand, elliptic when
// |trace| < 2 - kParabolicBand, parabolic otherwise.
OrbitClassification classify(const SupportCurve& table, const PeriodicOrbit& orbit, int decimals);

}  // namespace caustica::analysis
