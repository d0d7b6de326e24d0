#include "caustica/numerics/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <string>

#include "caustica/error.hpp"

namespace caustica::numerics {

int default_iteration_cap(long bits) {
  const int decimals = static_cast<int>(std::floor(static_cast<double>(bits - 32) / 3.32192809488736234787));
  return 64 + 4 * std::max(decimals, 1);
}

namespace {

// One safeguarded loop for both variants; `propose` supplies the secant or
// Newton candidate from the current iterate.
template <typename Evaluate, typename Propose>
BigReal hybrid_solve(Evaluate&& evaluate, Propose&& propose, const BigReal& lo, const BigReal& hi, const BigReal& tol,
                     const SolveOptions& options) {
  if (!(lo < hi)) throw BracketError("solve_decreasing: empty bracket");
  BigReal a = lo;
  BigReal b = hi;
  if (options.check_bracket) {
    const BigReal fa = evaluate(a).first;
    const BigReal fb = evaluate(b).first;
    if (!(fa > 0L) || !(fb < 0L)) {
      throw BracketError("solve_decreasing: need f(lo) > 0 > f(hi), got f(lo)=" + fa.to_string(8) +
                         ", f(hi)=" + fb.to_string(8));
    }
  }
  const int cap = options.max_iterations > 0 ? options.max_iterations : default_iteration_cap(lo.bits());

  BigReal x = (a + b) / 2L;
  if (options.initial_guess && *options.initial_guess > a && *options.initial_guess < b) {
    mpfr_set(x.get(), options.initial_guess->get(), MPFR_RNDN);
  }
  BigReal step_before_last = b - a;
  BigReal last_step = b - a;

  for (int it = 0; it < cap; ++it) {
    auto [fx, aux] = evaluate(x);
    if (fx.is_zero()) return x;
    if (fx > 0L) {
      a = x;
    } else {
      b = x;
    }
    BigReal mid = (a + b) / 2L;
    std::optional<BigReal> candidate = propose(x, fx, aux);
    if (candidate && *candidate >= a && *candidate <= b && abs(*candidate - x) <= tol) return std::move(*candidate);
    BigReal next = mid;
    if (candidate && *candidate > a && *candidate < b) {
      // Reject steps that do not shrink at least as fast as bisection would
      // over two iterations.
      if (abs(*candidate - x) * 2L <= abs(step_before_last)) next = std::move(*candidate);
    }
    BigReal step = abs(next - x);
    if (step <= tol || (b - a) <= tol) return next;
    step_before_last = std::move(last_step);
    last_step = std::move(step);
    x = std::move(next);
  }
  throw ConvergenceError("solve_decreasing: no convergence within " + std::to_string(cap) + " iterations");
}

}  // namespace

BigReal solve_decreasing(const ScalarFunction& f, const BigReal& lo, const BigReal& hi, const BigReal& tol,
                         const SolveOptions& options) {
  // Secant variant: `aux` is unused; the previous iterate is kept here.
  std::optional<BigReal> prev_x;
  std::optional<BigReal> prev_f;
  auto evaluate = [&](const BigReal& x) { return std::pair<BigReal, int>(f(x), 0); };
  auto propose = [&](const BigReal& x, const BigReal& fx, int) -> std::optional<BigReal> {
    std::optional<BigReal> out;
    if (prev_x && prev_f && !(*prev_f == fx)) out = x - fx * (x - *prev_x) / (fx - *prev_f);
    prev_x = x;
    prev_f = fx;
    return out;
  };
  return hybrid_solve(evaluate, propose, lo, hi, tol, options);
}

BigReal solve_decreasing(const ScalarFunctionWithSlope& f, const BigReal& lo, const BigReal& hi, const BigReal& tol,
                         const SolveOptions& options) {
  auto evaluate = [&](const BigReal& x) {
    ValueAndSlope v = f(x);
    return std::pair<BigReal, BigReal>(std::move(v.value), std::move(v.slope));
  };
  auto propose = [](const BigReal& x, const BigReal& fx, const BigReal& slope) -> std::optional<BigReal> {
    if (!(slope < 0L)) return std::nullopt;
    return x - fx / slope;
  };
  return hybrid_solve(evaluate, propose, lo, hi, tol, options);
}

}  // namespace caustica::numerics
