#pragma once

#include <random>
#include <string>

#include "caustica/dynamics/billiard_map.hpp"
#include "caustica/numerics/big_real.hpp"
#include "caustica/numerics/precision.hpp"

namespace testing {

using caustica::numerics::BigReal;
using caustica::numerics::Precision;

inline BigReal num(const std::string& text, int decimals) { return BigReal::parse(text, Precision(decimals)); }

inline BigReal ten_to(int exponent, int decimals) { return caustica::numerics::pow10(exponent, Precision(decimals)); }

inline bool within(const BigReal& a, const BigReal& b, const BigReal& tol) { return abs(a - b) <= tol; }

// |a - b| reduced to the nearest multiple of 2*pi.
inline BigReal angle_gap(const BigReal& a, const BigReal& b, const Precision& prec) {
  const BigReal two_pi = BigReal::pi(prec) * 2L;
  BigReal d = a - b;
  d = d - caustica::numerics::floor(d / two_pi + BigReal(0.5, prec)) * two_pi;
  return abs(d);
}

// Phase point whose line crosses the table with some room on both sides:
// p drawn from (-0.9 h(phi + pi), 0.9 h(phi)).
inline caustica::dynamics::PhasePoint random_crossing(const caustica::dynamics::BilliardMap& map,
                                                      std::mt19937_64& rng) {
  const Precision& prec = map.precision();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const BigReal phi = BigReal(unit(rng), prec) * map.two_pi();
  const BigReal hi = map.table().h(phi) * BigReal(0.9, prec);
  const BigReal lo = map.table().h(phi + BigReal::pi(prec)) * BigReal(-0.9, prec);
  const BigReal p = lo + (hi - lo) * BigReal(unit(rng), prec);
  return {phi, p};
}

}  // namespace testing
