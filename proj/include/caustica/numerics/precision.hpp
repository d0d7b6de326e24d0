#pragma once

#include <string>

#include "caustica/numerics/big_real.hpp"

namespace caustica::numerics {

// Binary precision for a request of `decimals` significant decimal digits:
// ceil(decimals * log2(10)) + 32 guard bits. Throws InvalidArgument for
// decimals < 1.
long decimals_to_bits(int decimals);

// Working decimal precision. Carries the decimal count the user asked for;
// the binary precision is derived from it.
class Precision {
 public:
  explicit Precision(int decimals);

  int decimals() const { return decimals_; }
  long bits() const { return bits_; }

  // A precision with `extra` more decimals.
  Precision widened(int extra) const { return Precision(decimals_ + extra); }

  friend bool operator==(const Precision&, const Precision&) = default;

 private:
  int decimals_;
  long bits_;
};

// 10^exponent at the given precision.
BigReal pow10(int exponent, const Precision& prec);

// Paired-run parameters: working decimals n, control decimals n' and the
// discrepancy above which a shadow run stops.
class PrecisionConfig {
 public:
  // Minimum gap between working and control decimals.
  static constexpr int kControlMargin = 10;

  // Throws InvalidArgument unless control_decimals >= decimals + 10 and
  // abort_threshold parses to a positive number.
  PrecisionConfig(int decimals, int control_decimals, std::string abort_threshold = "1");

  int decimals() const { return decimals_; }
  int control_decimals() const { return control_decimals_; }
  Precision working() const { return Precision(decimals_); }
  Precision control() const { return Precision(control_decimals_); }
  const std::string& abort_threshold_text() const { return abort_text_; }
  // Threshold materialized at control precision.
  BigReal abort_threshold() const;

 private:
  int decimals_;
  int control_decimals_;
  std::string abort_text_;
};

}  // namespace caustica::numerics
