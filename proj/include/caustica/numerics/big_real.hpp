#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>
#include <utility>

namespace caustica::numerics {

class Precision;

// Owning handle to an MPFR number. Every value carries its own binary
// precision; binary operations round to the larger precision of the two
// operands, so mixing a working-precision value with a control-precision
// value yields a control-precision result.
class BigReal {
 public:
  // Zero at 53 bits; placeholder for members assigned later.
  BigReal() : BigReal(static_cast<mpfr_prec_t>(53)) {}
  // Zero at the given precision.
  explicit BigReal(const Precision& prec);
  BigReal(long value, const Precision& prec);
  BigReal(int value, const Precision& prec) : BigReal(static_cast<long>(value), prec) {}
  BigReal(double value, const Precision& prec);
  // Zero with an explicit bit count (>= MPFR_PREC_MIN).
  explicit BigReal(mpfr_prec_t bits);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  // Parses a decimal literal ("0.4806888855", "1e-15", "-3") rounding to
  // nearest at `prec`. Throws InvalidArgument on malformed input.
  static BigReal parse(std::string_view text, const Precision& prec);
  static BigReal pi(const Precision& prec);

  mpfr_prec_t bits() const { return mpfr_get_prec(value_); }
  // Same value re-rounded to `prec`.
  BigReal rounded_to(const Precision& prec) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long to_long_floor() const { return mpfr_get_si(value_, MPFR_RNDD); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  // Shortest decimal string that reads back to the identical binary value
  // at this precision. `digits` > 0 forces that many significant digits.
  std::string to_string(int digits = 0) const;

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a, long b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator-(const BigReal& a);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b);

 private:
  void release() noexcept;

  mpfr_t value_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
// {sin x, cos x} from a single MPFR call.
std::pair<BigReal, BigReal> sin_cos(const BigReal& x);
BigReal acos(const BigReal& x);
BigReal log(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal floor(const BigReal& x);
const BigReal& max(const BigReal& a, const BigReal& b);
const BigReal& min(const BigReal& a, const BigReal& b);

}  // namespace caustica::numerics
