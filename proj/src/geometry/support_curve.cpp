#include "caustica/geometry/support_curve.hpp"

#include <string>

#include "caustica/error.hpp"

namespace caustica::geometry {

namespace detail {

namespace {
constexpr int kReductionExtraDecimals = 20;
}

HexagonalEvaluator::HexagonalEvaluator(const Precision& prec)
    : pi_over_3(BigReal::pi(prec) / 3L),
      pi_over_6(BigReal::pi(prec) / 6L),
      pi_over_3_wide(BigReal::pi(prec.widened(kReductionExtraDecimals)) / 3L),
      pi_over_6_wide(BigReal::pi(prec.widened(kReductionExtraDecimals)) / 6L) {}

SupportValue HexagonalEvaluator::operator()(const BigReal& theta) const {
  const mpfr_prec_t bits = pi_over_3.bits();
  // Piece index k = floor((theta - pi/6) / (pi/3)), taken from a quotient
  // carried with extra bits.
  BigReal wide(pi_over_3_wide.bits());
  mpfr_set(wide.get(), theta.get(), MPFR_RNDN);
  const BigReal k = floor((wide - pi_over_6_wide) / pi_over_3_wide);
  // u = theta_reduced + pi/6 lies in [pi/3, 2pi/3).
  const BigReal u_wide = wide - k * pi_over_3_wide + pi_over_6_wide;
  BigReal u(bits);
  mpfr_set(u.get(), u_wide.get(), MPFR_RNDN);

  const auto [s, c] = sin_cos(u);
  const BigReal cc = c * c;
  const BigReal ss = s * s;
  // Q = 9/4 cos^2 u + 3/2 sin^2 u
  const BigReal q = (cc * 9L + ss * 6L) / 4L;
  const BigReal root = sqrt(q);
  const BigReal sc = s * c;
  // dQ/du = 2 (3/2 - 9/4) sin u cos u,  d2Q/du2 = 2 (3/2 - 9/4) cos 2u
  const BigReal dq = sc * -3L / 2L;
  const BigReal d2q = (cc - ss) * -3L / 2L;

  SupportValue out{root + s / 2L, dq / (root * 2L) + c / 2L, BigReal(bits)};
  out.d2h = d2q / (root * 2L) - dq * dq / (q * root * 4L) - s / 2L;
  return out;
}

SupportValue CircleEvaluator::operator()(const BigReal& theta) const {
  return SupportValue{radius, BigReal(theta.bits()), BigReal(theta.bits())};
}

SupportValue EllipseEvaluator::operator()(const BigReal& theta) const {
  const auto [s, c] = sin_cos(theta);
  const BigReal cc = c * c;
  const BigReal ss = s * s;
  const BigReal q = a_squared * cc + b_squared * ss;
  const BigReal root = sqrt(q);
  const BigReal diff = b_squared - a_squared;
  const BigReal dq = diff * s * c * 2L;
  const BigReal d2q = diff * (cc - ss) * 2L;
  SupportValue out{root, dq / (root * 2L), BigReal(theta.bits())};
  out.d2h = d2q / (root * 2L) - dq * dq / (q * root * 4L);
  return out;
}

}  // namespace detail

SupportValue SupportEvaluator::operator()(const BigReal& theta) const {
  const BigReal t = theta.bits() == static_cast<mpfr_prec_t>(precision_.bits()) ? theta : theta.rounded_to(precision_);
  return std::visit([&](const auto& impl) { return impl(t); }, impl_);
}

SupportCurve SupportCurve::hexagonal() { return SupportCurve(Kind::kHexagonal, "hexagonal", 6); }

namespace {

void require_positive(const std::string& text, const std::string& what) {
  const BigReal v = BigReal::parse(text, Precision(20));
  if (!(v > 0L)) throw InvalidArgument(what + " must be positive, got '" + text + "'");
}

}  // namespace

SupportCurve SupportCurve::circle(std::string radius) {
  require_positive(radius, "circle radius");
  return SupportCurve(Kind::kCircle, "circle:" + radius, 0, std::move(radius));
}

SupportCurve SupportCurve::ellipse(std::string a, std::string b) {
  require_positive(a, "ellipse semi-axis a");
  require_positive(b, "ellipse semi-axis b");
  std::string label = "ellipse:" + a + "," + b;
  return SupportCurve(Kind::kEllipse, std::move(label), 2, std::move(a), std::move(b));
}

SupportCurve SupportCurve::from_name(std::string_view name) {
  if (name == "hexagonal") return hexagonal();
  if (name.starts_with("circle:")) return circle(std::string(name.substr(7)));
  if (name.starts_with("ellipse:")) {
    const std::string_view rest = name.substr(8);
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw InvalidArgument("ellipse table needs 'ellipse:a,b'");
    return ellipse(std::string(rest.substr(0, comma)), std::string(rest.substr(comma + 1)));
  }
  throw InvalidArgument("unknown table '" + std::string(name) + "' (expected hexagonal, circle:R or ellipse:a,b)");
}

SupportEvaluator SupportCurve::at(const Precision& prec) const {
  switch (kind_) {
    case Kind::kHexagonal:
      return SupportEvaluator(prec, detail::HexagonalEvaluator(prec));
    case Kind::kCircle:
      return SupportEvaluator(prec, detail::CircleEvaluator{BigReal::parse(param1_, prec)});
    case Kind::kEllipse: {
      const BigReal a = BigReal::parse(param1_, prec);
      const BigReal b = BigReal::parse(param2_, prec);
      return SupportEvaluator(prec, detail::EllipseEvaluator{a * a, b * b});
    }
  }
  throw Error("unreachable table kind");
}

BigReal SupportCurve::symmetry_period(const Precision& prec) const {
  if (symmetry_order_ == 0) return BigReal(prec);
  return BigReal::pi(prec) * 2L / static_cast<long>(symmetry_order_);
}

SupportValue hex_support(const BigReal& theta, const Precision& prec) {
  return SupportCurve::hexagonal().evaluate(theta, prec);
}

BoundaryPoint boundary_point(const SupportEvaluator& table, const BigReal& theta) {
  const SupportValue v = table(theta);
  const auto [s, c] = sin_cos(theta.rounded_to(table.precision()));
  const BigReal two_pi = BigReal::pi(table.precision()) * 2L;
  BigReal reduced = theta.rounded_to(table.precision());
  reduced -= floor(reduced / two_pi) * two_pi;
  return BoundaryPoint{std::move(reduced), v.h * c - v.dh * s, v.h * s + v.dh * c};
}

BoundaryPoint boundary_point(const SupportCurve& curve, const BigReal& theta, const Precision& prec) {
  return boundary_point(curve.at(prec), theta);
}

}  // namespace caustica::geometry
