#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <thread>

#include "caustica/analysis/chaos.hpp"
#include "caustica/analysis/lyapunov.hpp"
#include "caustica/analysis/periodic.hpp"
#include "caustica/analysis/rotation.hpp"
#include "caustica/error.hpp"
#include "output.hpp"

namespace caustica::cli {

namespace {

using json = nlohmann::ordered_json;
using numerics::BigReal;
using numerics::Precision;

struct GlobalOptions {
  std::string table = "hexagonal";
  int decimals = 30;
  std::string out_dir = ".";
  unsigned jobs = 0;
  std::int64_t stride = 1;
  bool fold = false;
  int solver_slack = dynamics::kDefaultSolverSlack;
};

struct OrbitOptions {
  std::string start;
  std::int64_t count = 0;
  std::string name = "orbit";
};

struct ShadowOptions {
  std::string start;
  std::int64_t count = 0;
  int control_decimals = 0;
  std::string abort = "1";
  std::int64_t log_every = 0;
  std::string name = "shadow";
};

struct SweepOptions {
  std::string phi;
  std::string p_range;
  std::vector<std::string> p_list;
  std::int64_t count = 0;
  std::string name = "sweep";
};

struct PeriodicOptions {
  int q = 0;
  long m = 0;
  std::string seed;
  std::string tol;
  std::string name = "periodic";
};

struct DiagnoseOptions {
  std::string orbit;
  std::string start;
  std::int64_t count = 0;
  std::string discrepancy;
  std::string caustic;
  int neighbors = 16;
  double growth_factor = 10.0;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string join_command_line(const std::vector<std::string>& args) {
  std::string out = "caustica";
  for (const auto& a : args) out += " " + a;
  return out;
}

unsigned worker_count(const GlobalOptions& g) {
  return g.jobs ? g.jobs : std::max(1u, std::thread::hardware_concurrency());
}

fs::path output_dir(const GlobalOptions& g) {
  fs::path dir(g.out_dir);
  fs::create_directories(dir);
  return dir;
}

json manifest_head(const std::vector<std::string>& args, const std::string& command, const GlobalOptions& g) {
  json m;
  m["command_line"] = join_command_line(args);
  m["command"] = command;
  m["table"] = g.table;
  return m;
}

void write_manifest(const fs::path& path, const json& manifest) {
  write_atomically(path, manifest.dump(2) + "\n");
}

std::string where(const StepError& e) {
  return e.iteration() ? " (iteration " + std::to_string(*e.iteration()) + ")" : "";
}

int cmd_orbit(const std::vector<std::string>& args, const GlobalOptions& g, const OrbitOptions& o, std::ostream& out) {
  const Clock clock;
  const auto table = geometry::SupportCurve::from_name(g.table);
  const Precision prec(g.decimals);
  const auto start_text = split_pair(o.start);
  const auto start = dynamics::PhasePoint::parse(start_text, prec);
  const auto record = dynamics::iterate(table, start, o.count, g.decimals, g.stride, g.solver_slack);

  const fs::path dir = output_dir(g);
  const fs::path csv = dir / (o.name + ".csv");
  write_atomically(csv, orbit_csv(record.points, table, prec, g.fold));

  json m = manifest_head(args, "orbit", g);
  m["start"] = {start_text.phi, start_text.p};
  m["iterations"] = record.completed_iterations;
  m["decimals"] = g.decimals;
  m["control_decimals"] = nullptr;
  m["max_discrepancy"] = nullptr;
  m["aborted_at"] = nullptr;
  m["stride"] = g.stride;
  m["fold"] = g.fold;
  m["wall_time_seconds"] = clock.seconds();
  m["output_files"] = {csv.string()};
  const fs::path manifest = dir / (o.name + ".manifest.json");
  write_manifest(manifest, m);
  out << "rows: " << record.points.size() << "\n" << "manifest: " << manifest.string() << "\n";
  return kOk;
}

int cmd_shadow(const std::vector<std::string>& args, const GlobalOptions& g, const ShadowOptions& o,
               std::ostream& out) {
  const Clock clock;
  const auto table = geometry::SupportCurve::from_name(g.table);
  const numerics::PrecisionConfig cfg(g.decimals, o.control_decimals, o.abort);
  const auto start_text = split_pair(o.start);
  const std::int64_t log_every = o.log_every > 0 ? o.log_every : std::max<std::int64_t>(1, (o.count + 999) / 1000);
  const auto record = dynamics::shadow_run(table, start_text, o.count, cfg, log_every, g.stride, g.solver_slack);

  const fs::path dir = output_dir(g);
  const fs::path csv = dir / (o.name + ".csv");
  const fs::path log_csv = dir / (o.name + ".discrepancy.csv");
  write_atomically(csv, orbit_csv(record.points, table, cfg.working(), g.fold));
  write_atomically(log_csv, discrepancy_csv(record.discrepancy_log));

  json m = manifest_head(args, "shadow", g);
  m["start"] = {start_text.phi, start_text.p};
  m["iterations"] = record.completed_iterations;
  m["decimals"] = g.decimals;
  m["control_decimals"] = o.control_decimals;
  m["max_discrepancy"] = record.max_discrepancy ? json(record.max_discrepancy->to_string()) : json(nullptr);
  m["aborted_at"] = record.aborted_at ? json(*record.aborted_at) : json(nullptr);
  m["abort_threshold"] = o.abort;
  m["log_every"] = log_every;
  m["final_discrepancy"] =
      record.discrepancy_log.empty() ? json(nullptr) : json(record.discrepancy_log.back().discrepancy.to_string());
  m["stride"] = g.stride;
  m["fold"] = g.fold;
  m["wall_time_seconds"] = clock.seconds();
  m["output_files"] = {csv.string(), log_csv.string()};
  const fs::path manifest = dir / (o.name + ".manifest.json");
  write_manifest(manifest, m);

  if (!record.discrepancy_log.empty()) {
    out << "final_discrepancy: " << record.discrepancy_log.back().discrepancy.to_string(6) << "\n";
  }
  if (record.max_discrepancy) out << "max_discrepancy: " << record.max_discrepancy->to_string(6) << "\n";
  if (record.aborted_at) out << "aborted_at: " << *record.aborted_at << "\n";
  out << "manifest: " << manifest.string() << "\n";
  return kOk;
}

struct SweepResult {
  int code = kFailure;
  std::string message;
  std::optional<std::int64_t> failed_at;
  std::size_t rows = 0;
};

int cmd_sweep(const std::vector<std::string>& args, const GlobalOptions& g, const SweepOptions& o,
              std::ostream& out, std::ostream& err) {
  const Clock clock;
  const auto table = geometry::SupportCurve::from_name(g.table);
  const Precision prec(g.decimals);
  if (o.p_range.empty() == o.p_list.empty()) throw InvalidArgument("give exactly one of --p and --p-list");
  const std::vector<std::string> ps = o.p_range.empty() ? o.p_list : decimal_range(o.p_range);
  if (o.count < 0) throw InvalidArgument("--count must be non-negative");

  const fs::path dir = output_dir(g);
  const std::size_t width = std::max<std::size_t>(3, std::to_string(ps.size() - 1).size());
  std::vector<fs::path> files(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::string idx = std::to_string(i);
    idx.insert(0, width - idx.size(), '0');
    files[i] = dir / (o.name + "_" + idx + ".csv");
  }
  // Starts are parsed up front so that a malformed value is a usage error
  // rather than a per-orbit failure.
  std::vector<dynamics::PhasePoint> starts;
  for (const auto& p : ps) starts.push_back(dynamics::PhasePoint::parse({o.phi, p}, prec));

  std::vector<SweepResult> results(ps.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < ps.size();) {
      SweepResult& r = results[i];
      try {
        const auto record = dynamics::iterate(table, starts[i], o.count, g.decimals, g.stride, g.solver_slack);
        write_atomically(files[i], orbit_csv(record.points, table, prec, g.fold));
        r.rows = record.points.size();
        r.code = kOk;
      } catch (const TangentLineError& e) {
        r = {kInvalidStart, e.what(), e.iteration(), 0};
      } catch (const SolverFailure& e) {
        r = {kSolverFailure, e.what(), e.iteration(), 0};
      } catch (const std::exception& e) {
        r = {kFailure, e.what(), std::nullopt, 0};
      }
    }
  };
  const unsigned workers = std::min<unsigned>(worker_count(g), static_cast<unsigned>(ps.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  json m = manifest_head(args, "sweep", g);
  m["iterations"] = o.count;
  m["decimals"] = g.decimals;
  m["control_decimals"] = nullptr;
  m["stride"] = g.stride;
  m["fold"] = g.fold;
  json orbits = json::array();
  json written = json::array();
  int first_failure = kOk;
  std::size_t succeeded = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const SweepResult& r = results[i];
    json entry;
    entry["start"] = {o.phi, ps[i]};
    entry["status"] = r.code == kOk ? "ok" : "failed";
    entry["exit_code"] = r.code;
    if (r.code == kOk) {
      ++succeeded;
      entry["file"] = files[i].string();
      entry["rows"] = r.rows;
      written.push_back(files[i].string());
    } else {
      entry["error"] = r.message;
      entry["failed_at"] = r.failed_at ? json(*r.failed_at) : json(nullptr);
      err << "orbit " << i << " (p=" << ps[i] << "): " << r.message
          << (r.failed_at ? " (iteration " + std::to_string(*r.failed_at) + ")" : "") << "\n";
      if (first_failure == kOk) first_failure = r.code;
    }
    orbits.push_back(std::move(entry));
  }
  m["orbits"] = std::move(orbits);
  m["wall_time_seconds"] = clock.seconds();
  m["output_files"] = std::move(written);
  const fs::path manifest = dir / (o.name + ".manifest.json");
  write_manifest(manifest, m);
  out << "orbits: " << succeeded << "/" << ps.size() << " succeeded\n" << "manifest: " << manifest.string() << "\n";
  return succeeded > 0 ? kOk : first_failure;
}

int cmd_periodic(const std::vector<std::string>& args, const GlobalOptions& g, const PeriodicOptions& o,
                 std::ostream& out) {
  const Clock clock;
  const auto table = geometry::SupportCurve::from_name(g.table);
  const Precision prec(g.decimals);
  const auto seed_text = split_pair(o.seed);
  const auto seed = dynamics::PhasePoint::parse(seed_text, prec);
  std::optional<BigReal> tol;
  if (!o.tol.empty()) tol = BigReal::parse(o.tol, prec);
  const auto orbit = analysis::find_periodic(table, o.q, o.m, seed, g.decimals, tol);
  const auto cls = analysis::classify(table, orbit, g.decimals);
  const auto eig = cls.eigenvalues();

  out << "phi: " << orbit.point.phi.to_string() << "\n"
      << "p: " << orbit.point.p.to_string() << "\n"
      << "residual: " << orbit.residual.to_string(6) << "\n"
      << "trace: " << cls.trace.to_string(20) << "\n"
      << "residue: " << cls.residue.to_string(20) << "\n"
      << "determinant: " << cls.jacobian.determinant().to_string(20) << "\n"
      << "eigenvalues: " << eig[0].real() << (eig[0].imag() < 0 ? "-" : "+") << std::abs(eig[0].imag()) << "i, "
      << eig[1].real() << (eig[1].imag() < 0 ? "-" : "+") << std::abs(eig[1].imag()) << "i\n"
      << "verdict: " << analysis::to_string(cls.verdict) << "\n";

  json m = manifest_head(args, "periodic", g);
  m["start"] = {seed_text.phi, seed_text.p};
  m["iterations"] = o.q;
  m["decimals"] = g.decimals;
  m["control_decimals"] = nullptr;
  m["max_discrepancy"] = nullptr;
  m["aborted_at"] = nullptr;
  m["period"] = o.q;
  m["winding"] = o.m;
  m["point"] = {orbit.point.phi.to_string(), orbit.point.p.to_string()};
  m["residual"] = orbit.residual.to_string();
  m["trace"] = cls.trace.to_string();
  m["residue"] = cls.residue.to_string();
  m["verdict"] = analysis::to_string(cls.verdict);
  m["wall_time_seconds"] = clock.seconds();
  m["output_files"] = json::array();
  const fs::path manifest = output_dir(g) / (o.name + ".manifest.json");
  write_manifest(manifest, m);
  out << "manifest: " << manifest.string() << "\n";
  return kOk;
}

// Restores turn counts from consecutive rows: phi advances by less than a
// full turn per step, so a decrease marks a wrap. Returns false when rows
// are not consecutive iterates.
bool unwrap_turns(std::vector<dynamics::OrbitPoint>& points) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].iteration != points[i - 1].iteration + 1) return false;
    points[i].turns = points[i - 1].turns + (points[i].phi <= points[i - 1].phi ? 1 : 0);
  }
  return points.size() >= 2;
}

int cmd_diagnose(const GlobalOptions& g, const DiagnoseOptions& o, std::ostream& out) {
  const Precision prec(g.decimals);
  std::vector<dynamics::OrbitPoint> points;
  bool has_turns = false;
  if (!o.orbit.empty()) {
    points = read_orbit_csv(o.orbit, prec);
    has_turns = unwrap_turns(points);
  } else if (!o.start.empty()) {
    const auto table = geometry::SupportCurve::from_name(g.table);
    const auto start = dynamics::PhasePoint::parse(split_pair(o.start), prec);
    auto record = dynamics::iterate(table, start, o.count, g.decimals, g.stride, g.solver_slack);
    points = std::move(record.points);
    has_turns = points.size() >= 2;
  } else {
    throw InvalidArgument("give --orbit or --start with --count");
  }

  if (points.size() < static_cast<std::size_t>(o.neighbors) + 1) {
    throw DataError("thickness needs at least " + std::to_string(o.neighbors + 1) + " points, got " +
                    std::to_string(points.size()));
  }

  out << "points: " << points.size() << "\n";
  if (has_turns) {
    out << "rotation_number: " << analysis::rotation_number(points).to_string(20) << "\n";
  } else {
    out << "rotation_number: n/a (rows are not consecutive iterates)\n";
  }

  const auto plane = analysis::to_plane(points);
  const auto chaos = analysis::chaos_thickness(plane, o.neighbors, worker_count(g));
  out << "thickness: " << chaos.thickness << "\n" << "verdict_hint: " << chaos.verdict_hint << "\n";

  if (!o.caustic.empty()) {
    if (o.caustic != "hexagon") throw InvalidArgument("unknown caustic '" + o.caustic + "'");
    const auto polygon = geometry::CausticPolygon::regular_hexagon(prec);
    out << "caustic_deviation: " << analysis::caustic_deviation(points, polygon).to_string(6) << "\n";
  }

  if (!o.discrepancy.empty()) {
    const auto log = read_discrepancy_csv(o.discrepancy, prec);
    analysis::LyapunovEstimate est;
    try {
      est = analysis::lyapunov_from_discrepancy(log, o.growth_factor);
    } catch (const InvalidArgument& e) {
      throw DataError(o.discrepancy + ": " + e.what());
    }
    if (est.indeterminate) {
      out << "lyapunov_slope: indeterminate\n";
    } else {
      out << "lyapunov_slope: " << est.slope << "\n"
          << "growth_start: " << est.growth_start << "\n"
          << "polynomial_bound: " << est.polynomial_bound << "\n"
          << "exponential: " << (est.exponential ? "yes" : "no") << "\n";
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Birkhoff billiards on convex tables at arbitrary decimal precision", "caustica"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--table", g.table, "hexagonal, circle:R or ellipse:a,b")->capture_default_str();
  app.add_option("--decimals", g.decimals, "working precision in decimal digits")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "output directory")->envname("CAUSTICA_OUT")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads (0: all cores)");
  app.add_option("--stride", g.stride, "store every stride-th iterate")->capture_default_str();
  app.add_flag("--fold", g.fold, "write phi reduced by the table's symmetry");
  app.add_option("--solver-slack", g.solver_slack, "chord roots are solved to 10^-(decimals - slack)")
      ->capture_default_str();

  OrbitOptions orbit_o;
  auto* orbit = app.add_subcommand("orbit", "iterate one orbit");
  orbit->add_option("--start", orbit_o.start, "phi,p")->required();
  orbit->add_option("--count", orbit_o.count, "iterations")->required();
  orbit->add_option("--name", orbit_o.name, "output file stem")->capture_default_str();

  ShadowOptions shadow_o;
  auto* shadow = app.add_subcommand("shadow", "orbit with a control run at higher precision");
  shadow->add_option("--start", shadow_o.start, "phi,p")->required();
  shadow->add_option("--count", shadow_o.count, "iterations")->required();
  shadow->add_option("--control-decimals", shadow_o.control_decimals, "control precision (>= decimals + 10)")
      ->required();
  shadow->add_option("--abort", shadow_o.abort, "stop once the discrepancy exceeds this")->capture_default_str();
  shadow->add_option("--log-every", shadow_o.log_every, "discrepancy log interval (default: count / 1000)");
  shadow->add_option("--name", shadow_o.name, "output file stem")->capture_default_str();

  SweepOptions sweep_o;
  auto* sweep = app.add_subcommand("sweep", "orbits from a grid of starts with fixed phi");
  sweep->add_option("--phi", sweep_o.phi, "common start angle")->required();
  sweep->add_option("--p", sweep_o.p_range, "a:b:step");
  sweep->add_option("--p-list", sweep_o.p_list, "explicit p values")->delimiter(',');
  sweep->add_option("--count", sweep_o.count, "iterations per orbit")->required();
  sweep->add_option("--name", sweep_o.name, "output file stem")->capture_default_str();

  PeriodicOptions periodic_o;
  auto* periodic = app.add_subcommand("periodic", "locate and classify a periodic orbit");
  periodic->add_option("--q", periodic_o.q, "period")->required();
  periodic->add_option("--m", periodic_o.m, "winding number")->required();
  periodic->add_option("--seed", periodic_o.seed, "phi,p")->required();
  periodic->add_option("--tol", periodic_o.tol, "residual tolerance");
  periodic->add_option("--name", periodic_o.name, "manifest stem")->capture_default_str();

  DiagnoseOptions diag_o;
  auto* diagnose = app.add_subcommand("diagnose", "rotation number, thickness and separation rate");
  diagnose->add_option("--orbit", diag_o.orbit, "orbit CSV");
  diagnose->add_option("--start", diag_o.start, "phi,p for an inline run");
  diagnose->add_option("--count", diag_o.count, "iterations for an inline run");
  diagnose->add_option("--discrepancy", diag_o.discrepancy, "discrepancy CSV");
  diagnose->add_option("--caustic", diag_o.caustic, "hexagon");
  diagnose->add_option("--neighbors", diag_o.neighbors, "neighbours per point")->capture_default_str();
  diagnose->add_option("--growth-factor", diag_o.growth_factor, "growth-phase threshold over the minimum")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*orbit) return cmd_orbit(args, g, orbit_o, out);
    if (*shadow) return cmd_shadow(args, g, shadow_o, out);
    if (*sweep) return cmd_sweep(args, g, sweep_o, out, err);
    if (*periodic) return cmd_periodic(args, g, periodic_o, out);
    if (*diagnose) return cmd_diagnose(g, diag_o, out);
    return kUsage;
  } catch (const TangentLineError& e) {
    err << "error: " << e.what() << where(e) << "\n";
    return kInvalidStart;
  } catch (const SolverFailure& e) {
    err << "error: " << e.what() << where(e) << "\n";
    return kSolverFailure;
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << " (last residual " << e.last_residual() << ")\n";
    return kNoConvergence;
  } catch (const DegenerateJacobian& e) {
    err << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kData;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PrecisionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace caustica::cli
