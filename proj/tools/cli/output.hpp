#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caustica/dynamics/orbit.hpp"
#include "caustica/error.hpp"
#include "caustica/geometry/support_curve.hpp"

namespace caustica::cli {

namespace fs = std::filesystem;

// Malformed input file.
class DataError : public Error {
 public:
  using Error::Error;
};

// Writes `contents` to a temporary file next to `path`, then renames it
// into place.
void write_atomically(const fs::path& path, std::string_view contents);

// Rows `iter,phi,p`. With `fold`, phi is reduced to [0, P/2] through the
// table's symmetry period P and the reflection phi -> P - phi.
std::string orbit_csv(std::span<const dynamics::OrbitPoint> points, const geometry::SupportCurve& table,
                      const numerics::Precision& prec, bool fold);
std::string discrepancy_csv(std::span<const dynamics::DiscrepancySample> log);

// Parsers for the two schemas; throw DataError on a bad header, a wrong
// field count or a field that is not a number.
std::vector<dynamics::OrbitPoint> read_orbit_csv(const fs::path& path, const numerics::Precision& prec);
std::vector<dynamics::DiscrepancySample> read_discrepancy_csv(const fs::path& path,
                                                              const numerics::Precision& prec);

// Grid "a:b:step" of decimal numbers, generated with exact integer
// arithmetic: a, a + step, ... up to and including b. Throws
// InvalidArgument on malformed text or a non-positive step.
std::vector<std::string> decimal_range(std::string_view range);

// "x,y" -> {x, y}; throws InvalidArgument unless there are exactly two
// non-empty fields.
dynamics::DecimalPoint split_pair(std::string_view text);

}  // namespace caustica::cli
