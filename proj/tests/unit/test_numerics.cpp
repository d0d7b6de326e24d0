#include <doctest.h>

#include <cmath>
#include <random>

#include "caustica/error.hpp"
#include "caustica/numerics/solver.hpp"
#include "helpers.hpp"

using namespace caustica;
using namespace caustica::numerics;
using testing::num;
using testing::ten_to;

TEST_SUITE("numerics") {
  TEST_CASE("decimals_to_bits") {
    CHECK(decimals_to_bits(30) == 132);
    CHECK(decimals_to_bits(1) == 36);
    CHECK(decimals_to_bits(1000) == 3354);
    CHECK_THROWS_AS(decimals_to_bits(0), InvalidArgument);
    CHECK_THROWS_AS(decimals_to_bits(-3), InvalidArgument);
    long prev = 0;
    for (int d = 1; d <= 2000; ++d) {
      const long b = decimals_to_bits(d);
      REQUIRE(b > prev);
      REQUIRE(b == static_cast<long>(std::ceil(d * 3.321928094887362)) + 32);
      prev = b;
    }
  }

  TEST_CASE("precision config") {
    const PrecisionConfig cfg(30, 40, "1e-15");
    CHECK(cfg.working().bits() == 132);
    CHECK(cfg.control().decimals() == 40);
    CHECK(cfg.abort_threshold() == num("1e-15", 40));
    CHECK_THROWS_AS(PrecisionConfig(150, 155), InvalidArgument);
    CHECK_THROWS_AS(PrecisionConfig(30, 40, "0"), InvalidArgument);
    CHECK_THROWS_AS(PrecisionConfig(30, 40, "-1"), InvalidArgument);
    CHECK_NOTHROW(PrecisionConfig(150, 160));
  }

  TEST_CASE("decimal text round trips exactly") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int d : {16, 30, 150}) {
      const Precision prec(d);
      for (int i = 0; i < 200; ++i) {
        const BigReal x = sqrt(abs(BigReal(u(rng), prec))) / 7L;
        REQUIRE(BigReal::parse(x.to_string(), prec) == x);
      }
    }
    CHECK_THROWS_AS(BigReal::parse("0.1x", Precision(20)), InvalidArgument);
    CHECK_THROWS_AS(BigReal::parse("", Precision(20)), InvalidArgument);
  }

  TEST_CASE("solve_decreasing: cos on [1, 2] gives pi/2") {
    const Precision prec(40);
    const ScalarFunction f = [](const BigReal& t) { return cos(t); };
    const BigReal root = solve_decreasing(f, BigReal(1L, prec), BigReal(2L, prec), ten_to(-30, 40));
    CHECK(abs(root - BigReal::pi(prec) / 2L) <= ten_to(-30, 40));
  }

  TEST_CASE("solve_decreasing: linear") {
    const Precision prec(30);
    const ScalarFunction f = [&](const BigReal& t) { return BigReal(1L, prec) - t; };
    const BigReal root = solve_decreasing(f, BigReal(0L, prec), BigReal(2L, prec), ten_to(-25, 30));
    CHECK(abs(root - 1L) <= ten_to(-25, 30));
  }

  TEST_CASE("solve_decreasing: unit-circle chord at (0, 1/2) gives pi/3") {
    const Precision prec(30);
    const BigReal half = num("0.5", 30);
    const ScalarFunctionWithSlope f = [&](const BigReal& t) {
      auto [s, c] = sin_cos(t);
      return ValueAndSlope{c - half, -s};
    };
    const BigReal eps = ten_to(-30, 30) * BigReal::pi(prec);
    const BigReal root = solve_decreasing(f, eps, BigReal::pi(prec) - eps, ten_to(-25, 30));
    CHECK(abs(root - BigReal::pi(prec) / 3L) <= ten_to(-25, 30));
  }

  TEST_CASE("solve_decreasing: errors") {
    const Precision prec(30);
    const ScalarFunction f = [](const BigReal& t) { return cos(t); };
    CHECK_THROWS_AS(solve_decreasing(f, BigReal(2L, prec), BigReal(3L, prec), ten_to(-20, 30)), BracketError);
    SolveOptions capped;
    capped.max_iterations = 2;
    const ScalarFunction kinked = [&](const BigReal& t) {
      const BigReal x = t - num("0.3", 30);
      return x < 0L ? -x * 1000L : -x / 1000L;
    };
    CHECK_THROWS_AS(solve_decreasing(kinked, BigReal(0L, prec), BigReal(1L, prec), ten_to(-25, 30), capped),
                    ConvergenceError);
    CHECK(default_iteration_cap(decimals_to_bits(30)) == 64 + 4 * 30);
  }

  TEST_CASE("solve_decreasing: decreasing cubics with known roots") {
    // f(t) = -(t - r)^3 - a (t - r) for a > 0 is strictly decreasing with
    // its only root at r.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int d : {20, 60, 200}) {
      const Precision prec(d);
      const BigReal tol = ten_to(-(d - 5), d);
      for (int i = 0; i < 25; ++i) {
        const BigReal r = BigReal(u(rng), prec) / 3L + num("0.1", d);
        const BigReal a = BigReal(u(rng), prec) * BigReal(u(rng), prec);
        const ScalarFunction f = [&](const BigReal& t) {
          const BigReal x = t - r;
          return -(x * x * x) - a * x;
        };
        const BigReal root = solve_decreasing(f, BigReal(-1L, prec), BigReal(2L, prec), tol);
        REQUIRE(abs(root - r) <= tol);
      }
    }
  }

  TEST_CASE("solve_decreasing: doubling the precision moves the root by less than tol") {
    const ScalarFunction f30 = [](const BigReal& t) { return BigReal::parse("0.7", Precision(30)) - sin(t); };
    const ScalarFunction f60 = [](const BigReal& t) { return BigReal::parse("0.7", Precision(60)) - sin(t); };
    const BigReal tol = ten_to(-25, 30);
    const BigReal r30 = solve_decreasing(f30, num("0.1", 30), num("1.5", 30), tol);
    const BigReal r60 = solve_decreasing(f60, num("0.1", 60), num("1.5", 60), ten_to(-55, 60));
    CHECK(abs(r30 - r60) < tol);
  }
}
