#include "caustica/numerics/big_real.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "caustica/error.hpp"
#include "caustica/numerics/precision.hpp"

namespace caustica::numerics {

namespace {

mpfr_prec_t wider(const BigReal& a, const BigReal& b) { return std::max(a.bits(), b.bits()); }

}  // namespace

BigReal::BigReal(const Precision& prec) : BigReal(static_cast<mpfr_prec_t>(prec.bits())) {}

BigReal::BigReal(mpfr_prec_t bits) {
  mpfr_init2(value_, std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, const Precision& prec) : BigReal(prec) { mpfr_set_si(value_, value, MPFR_RNDN); }

BigReal::BigReal(double value, const Precision& prec) : BigReal(prec) { mpfr_set_d(value_, value, MPFR_RNDN); }

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(value_, other.bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  // Steal the limb storage; the source is left in a released state that is
  // only valid for destruction or assignment.
  *value_ = *other.value_;
  other.value_->_mpfr_d = nullptr;
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this == &other) return *this;
  if (value_->_mpfr_d == nullptr) {
    mpfr_init2(value_, other.bits());
  } else if (bits() != other.bits()) {
    mpfr_set_prec(value_, other.bits());
  }
  mpfr_set(value_, other.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this == &other) return *this;
  release();
  *value_ = *other.value_;
  other.value_->_mpfr_d = nullptr;
  return *this;
}

BigReal::~BigReal() { release(); }

void BigReal::release() noexcept {
  if (value_->_mpfr_d != nullptr) {
    mpfr_clear(value_);
    value_->_mpfr_d = nullptr;
  }
}

BigReal BigReal::parse(std::string_view text, const Precision& prec) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; }), s.end());
  BigReal out(prec);
  if (s.empty()) throw InvalidArgument("empty decimal number");
  char* end = nullptr;
  mpfr_strtofr(out.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') throw InvalidArgument("not a decimal number: '" + std::string(text) + "'");
  if (!out.is_finite()) throw InvalidArgument("not a finite number: '" + std::string(text) + "'");
  return out;
}

BigReal BigReal::pi(const Precision& prec) {
  BigReal out(prec);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

BigReal BigReal::rounded_to(const Precision& prec) const {
  BigReal out(prec);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

std::string BigReal::to_string(int digits) const {
  if (mpfr_zero_p(value_)) return "0";
  const auto n = digits > 0 ? static_cast<std::size_t>(digits) : mpfr_get_str_ndigits(10, bits());
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*RNg", static_cast<int>(n), value_) < 0) throw Error("decimal formatting failed");
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal out(wider(a, b));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal out(wider(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal out(wider(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal out(wider(a, b));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator+(const BigReal& a, long b) {
  BigReal out(a.bits());
  mpfr_add_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

BigReal operator-(const BigReal& a, long b) {
  BigReal out(a.bits());
  mpfr_sub_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

BigReal operator*(const BigReal& a, long b) {
  BigReal out(a.bits());
  mpfr_mul_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

BigReal operator/(const BigReal& a, long b) {
  BigReal out(a.bits());
  mpfr_div_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

BigReal operator-(long a, const BigReal& b) {
  BigReal out(b.bits());
  mpfr_si_sub(out.value_, a, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator-(const BigReal& a) {
  BigReal out(a.bits());
  mpfr_neg(out.value_, a.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

BigReal abs(const BigReal& x) {
  BigReal out(x.bits());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal sqrt(const BigReal& x) {
  BigReal out(x.bits());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal sin(const BigReal& x) {
  BigReal out(x.bits());
  mpfr_sin(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal cos(const BigReal& x) {
  BigReal out(x.bits());
  mpfr_cos(out.get(), x.get(), MPFR_RNDN);
  return out;
}

std::pair<BigReal, BigReal> sin_cos(const BigReal& x) {
  std::pair<BigReal, BigReal> out{BigReal(x.bits()), BigReal(x.bits())};
  mpfr_sin_cos(out.first.get(), out.second.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal acos(const BigReal& x) {
  BigReal out(x.bits());
  mpfr_acos(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal log(const BigReal& x) {
  BigReal out(x.bits());
  mpfr_log(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal exp(const BigReal& x) {
  BigReal out(x.bits());
  mpfr_exp(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal floor(const BigReal& x) {
  BigReal out(x.bits());
  mpfr_floor(out.get(), x.get());
  return out;
}

const BigReal& max(const BigReal& a, const BigReal& b) { return (a < b) ? b : a; }
const BigReal& min(const BigReal& a, const BigReal& b) { return (b < a) ? b : a; }

}  // namespace caustica::numerics
