#include "output.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "caustica/error.hpp"

namespace caustica::cli {

using numerics::BigReal;

void write_atomically(const fs::path& path, std::string_view contents) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string orbit_csv(std::span<const dynamics::OrbitPoint> points, const geometry::SupportCurve& table,
                      const numerics::Precision& prec, bool fold) {
  const bool folding = fold && table.symmetry_order() > 0;
  const BigReal period = folding ? table.symmetry_period(prec) : BigReal();
  const BigReal half = folding ? period / 2L : BigReal();

  std::string out = "iter,phi,p\n";
  for (const auto& pt : points) {
    BigReal phi = pt.phi;
    if (folding) {
      phi = phi - numerics::floor(phi / period) * period;
      if (phi > half) phi = period - phi;
    }
    out += std::to_string(pt.iteration);
    out += ',';
    out += phi.to_string();
    out += ',';
    out += pt.p.to_string();
    out += '\n';
  }
  return out;
}

std::string discrepancy_csv(std::span<const dynamics::DiscrepancySample> log) {
  std::string out = "iter,discrepancy\n";
  for (const auto& s : log) {
    out += std::to_string(s.iteration);
    out += ',';
    out += s.discrepancy.to_string();
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::int64_t parse_iter(std::string_view field, const std::string& where) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || v < 0) {
    throw DataError(where + ": bad iteration index '" + std::string(field) + "'");
  }
  return v;
}

BigReal parse_number(std::string_view field, const numerics::Precision& prec, const std::string& where) {
  try {
    BigReal v = BigReal::parse(field, prec);
    if (!v.is_finite()) throw InvalidArgument("not finite");
    return v;
  } catch (const InvalidArgument&) {
    throw DataError(where + ": bad number '" + std::string(field) + "'");
  }
}

// Calls row(fields, where) for each data line after checking the header.
template <class Row>
void read_csv(const fs::path& path, std::string_view header, std::size_t columns, Row row) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw DataError(path.string() + ": expected header '" + std::string(header) + "'");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    const auto fields = split(line, ',');
    if (fields.size() != columns) throw DataError(where + ": expected " + std::to_string(columns) + " fields");
    row(fields, where);
  }
}

}  // namespace

std::vector<dynamics::OrbitPoint> read_orbit_csv(const fs::path& path, const numerics::Precision& prec) {
  std::vector<dynamics::OrbitPoint> out;
  read_csv(path, "iter,phi,p", 3, [&](const auto& f, const std::string& where) {
    dynamics::OrbitPoint pt;
    pt.iteration = parse_iter(f[0], where);
    pt.phi = parse_number(f[1], prec, where);
    pt.p = parse_number(f[2], prec, where);
    out.push_back(std::move(pt));
  });
  return out;
}

std::vector<dynamics::DiscrepancySample> read_discrepancy_csv(const fs::path& path,
                                                              const numerics::Precision& prec) {
  std::vector<dynamics::DiscrepancySample> out;
  read_csv(path, "iter,discrepancy", 2, [&](const auto& f, const std::string& where) {
    dynamics::DiscrepancySample s;
    s.iteration = parse_iter(f[0], where);
    s.discrepancy = parse_number(f[1], prec, where);
    out.push_back(std::move(s));
  });
  return out;
}

namespace {

struct FixedDecimal {
  std::int64_t units = 0;  // value * 10^scale
  int scale = 0;
};

FixedDecimal parse_fixed(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string digits(text.substr(0, dot));
  int scale = 0;
  if (dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    digits += frac;
    scale = static_cast<int>(frac.size());
  }
  if (digits.empty() || digits.size() > 18 || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidArgument("bad decimal '" + original + "' in range");
  }
  FixedDecimal out{std::stoll(digits), scale};
  if (negative) out.units = -out.units;
  return out;
}

std::int64_t rescale(const FixedDecimal& v, int scale) {
  std::int64_t u = v.units;
  for (int i = v.scale; i < scale; ++i) u *= 10;
  return u;
}

std::string format_fixed(std::int64_t units, int scale) {
  const bool negative = units < 0;
  std::string digits = std::to_string(negative ? -units : units);
  if (scale > 0) {
    if (static_cast<int>(digits.size()) <= scale) digits.insert(0, static_cast<std::size_t>(scale) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(scale), ".");
  }
  return negative ? "-" + digits : digits;
}

}  // namespace

std::vector<std::string> decimal_range(std::string_view range) {
  const auto parts = split(range, ':');
  if (parts.size() != 3) throw InvalidArgument("range must be a:b:step, got '" + std::string(range) + "'");
  const FixedDecimal a = parse_fixed(parts[0]);
  const FixedDecimal b = parse_fixed(parts[1]);
  const FixedDecimal step = parse_fixed(parts[2]);
  const int scale = std::max({a.scale, b.scale, step.scale});
  if (scale > 18) throw InvalidArgument("range has too many fraction digits");
  const std::int64_t lo = rescale(a, scale);
  const std::int64_t hi = rescale(b, scale);
  const std::int64_t inc = rescale(step, scale);
  if (inc <= 0) throw InvalidArgument("range step must be positive");
  if (hi < lo) throw InvalidArgument("range end lies below its start");
  std::vector<std::string> out;
  for (std::int64_t u = lo; u <= hi; u += inc) out.push_back(format_fixed(u, scale));
  return out;
}

dynamics::DecimalPoint split_pair(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
    throw InvalidArgument("expected 'phi,p', got '" + std::string(text) + "'");
  }
  return {std::string(parts[0]), std::string(parts[1])};
}

}  // namespace caustica::cli
