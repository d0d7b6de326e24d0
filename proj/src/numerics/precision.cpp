#include "caustica/numerics/precision.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "caustica/error.hpp"

namespace caustica::numerics {

namespace {
constexpr long kGuardBits = 32;
constexpr double kLog2Of10 = 3.32192809488736234787;
}  // namespace

long decimals_to_bits(int decimals) {
  if (decimals < 1) throw InvalidArgument("decimal precision must be >= 1, got " + std::to_string(decimals));
  // d*log2(10) is never an integer for d >= 1, so ceil is unambiguous.
  return static_cast<long>(std::ceil(decimals * kLog2Of10)) + kGuardBits;
}

Precision::Precision(int decimals) : decimals_(decimals), bits_(decimals_to_bits(decimals)) {}

BigReal pow10(int exponent, const Precision& prec) {
  BigReal out(prec);
  mpfr_set_ui(out.get(), 10, MPFR_RNDN);
  mpfr_pow_si(out.get(), out.get(), exponent, MPFR_RNDN);
  return out;
}

PrecisionConfig::PrecisionConfig(int decimals, int control_decimals, std::string abort_threshold)
    : decimals_(decimals), control_decimals_(control_decimals), abort_text_(std::move(abort_threshold)) {
  if (decimals < 1) throw InvalidArgument("decimals must be positive");
  if (control_decimals < decimals + kControlMargin) {
    throw InvalidArgument("control decimals (" + std::to_string(control_decimals) + ") must be at least decimals + " +
                          std::to_string(kControlMargin) + " (" + std::to_string(decimals + kControlMargin) + ")");
  }
  if (!(this->abort_threshold() > 0L)) throw InvalidArgument("abort threshold must be positive");
}

BigReal PrecisionConfig::abort_threshold() const { return BigReal::parse(abort_text_, control()); }

}  // namespace caustica::numerics
