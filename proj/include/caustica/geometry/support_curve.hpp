#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "caustica/numerics/big_real.hpp"
#include "caustica/numerics/precision.hpp"

namespace caustica::geometry {

using numerics::BigReal;
using numerics::Precision;

// Support function and its first two derivatives at one normal angle.
struct SupportValue {
  BigReal h;
  BigReal dh;
  BigReal d2h;

  // rho = h + h''; positive everywhere for a strictly convex table.
  BigReal radius_of_curvature() const { return h + d2h; }
};

// Point of the boundary with outward normal angle `theta`.
struct BoundaryPoint {
  BigReal theta;
  BigReal x;
  BigReal y;
};

namespace detail {

struct HexagonalEvaluator {
  explicit HexagonalEvaluator(const Precision& prec);
  SupportValue operator()(const BigReal& theta) const;

  BigReal pi_over_3;
  BigReal pi_over_6;
  // Reduction is done with this many extra bits so that a point within
  // 10^-decimals of a junction is assigned to a piece consistently.
  BigReal pi_over_3_wide;
  BigReal pi_over_6_wide;
};

struct CircleEvaluator {
  SupportValue operator()(const BigReal& theta) const;
  BigReal radius;
};

struct EllipseEvaluator {
  SupportValue operator()(const BigReal& theta) const;
  BigReal a_squared;
  BigReal b_squared;
};

}  // namespace detail

// A table bound to one working precision. Holds the table constants at
// that precision so repeated evaluations do not recompute them.
class SupportEvaluator {
 public:
  SupportValue operator()(const BigReal& theta) const;
  // h alone; same cost as the full triple for the built-in tables.
  BigReal h(const BigReal& theta) const { return (*this)(theta).h; }
  const Precision& precision() const { return precision_; }

 private:
  friend class SupportCurve;
  using Impl = std::variant<detail::HexagonalEvaluator, detail::CircleEvaluator, detail::EllipseEvaluator>;
  SupportEvaluator(Precision prec, Impl impl) : precision_(prec), impl_(std::move(impl)) {}

  Precision precision_;
  Impl impl_;
};

// A strictly convex table described by its support function h(theta).
// Immutable; parameters are kept as decimal text and materialized at
// whatever precision an evaluator is requested for.
class SupportCurve {
 public:
  enum class Kind { kHexagonal, kCircle, kEllipse };

  // The string-construction table around the unit regular hexagon with
  // string length 7: six congruent elliptic arcs, pi/3-periodic.
  static SupportCurve hexagonal();
  static SupportCurve circle(std::string radius);
  // Centered ellipse with semi-axis `a` along x and `b` along y.
  static SupportCurve ellipse(std::string a, std::string b);
  // "hexagonal", "circle:R" or "ellipse:a,b". Throws InvalidArgument.
  static SupportCurve from_name(std::string_view name);

  SupportEvaluator at(const Precision& prec) const;
  SupportValue evaluate(const BigReal& theta, const Precision& prec) const { return at(prec)(theta); }

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  // Number of copies of the fundamental piece in a full turn (6 for the
  // hexagonal table, 2 for an ellipse); 0 when no period is declared.
  int symmetry_order() const { return symmetry_order_; }
  // 2*pi / symmetry_order, or 0 when none is declared.
  BigReal symmetry_period(const Precision& prec) const;

 private:
  SupportCurve(Kind kind, std::string label, int order, std::string p1 = {}, std::string p2 = {})
      : kind_(kind), label_(std::move(label)), symmetry_order_(order), param1_(std::move(p1)), param2_(std::move(p2)) {}

  Kind kind_;
  std::string label_;
  int symmetry_order_;
  std::string param1_;
  std::string param2_;
};

// Support function of the hexagonal table with closed-form h' and h''.
// theta may be any real; it is reduced to the fundamental piece
// [pi/6, pi/2) using the pi/3 period.
SupportValue hex_support(const BigReal& theta, const Precision& prec);

// (x, y) = h (cos t, sin t) + h' (-sin t, cos t).
BoundaryPoint boundary_point(const SupportCurve& curve, const BigReal& theta, const Precision& prec);
BoundaryPoint boundary_point(const SupportEvaluator& table, const BigReal& theta);

}  // namespace caustica::geometry
