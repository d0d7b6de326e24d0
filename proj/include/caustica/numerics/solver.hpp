#pragma once

#include <functional>
#include <optional>

#include "caustica/numerics/big_real.hpp"

namespace caustica::numerics {

struct ValueAndSlope {
  BigReal value;
  BigReal slope;
};

using ScalarFunction = std::function<BigReal(const BigReal&)>;
using ScalarFunctionWithSlope = std::function<ValueAndSlope(const BigReal&)>;

struct SolveOptions {
  // Starting iterate; ignored unless strictly inside the bracket.
  std::optional<BigReal> initial_guess;
  // 0 selects the default cap of 64 + 4 * (decimals carried by `lo`).
  int max_iterations = 0;
  // Evaluate f at both endpoints to confirm f(lo) > 0 > f(hi). Callers that
  // already know the endpoint signs analytically may switch this off.
  bool check_bracket = true;
};

// Root of a strictly decreasing function on [lo, hi] by a safeguarded
// hybrid: secant steps (or Newton steps for the overload that supplies a
// slope), replaced by bisection whenever the step would leave the current
// bracket or fails to shrink fast enough. Stops once the last step or the
// bracket is no wider than `tol`.
//
// Throws BracketError when f(lo) <= 0 or f(hi) >= 0 (with check_bracket)
// and ConvergenceError when the iteration cap is exhausted.
BigReal solve_decreasing(const ScalarFunction& f, const BigReal& lo, const BigReal& hi, const BigReal& tol,
                         const SolveOptions& options = {});

BigReal solve_decreasing(const ScalarFunctionWithSlope& f, const BigReal& lo, const BigReal& hi, const BigReal& tol,
                         const SolveOptions& options = {});

// Default iteration cap for values carrying `bits` of precision.
int default_iteration_cap(long bits);

}  // namespace caustica::numerics
