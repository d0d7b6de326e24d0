#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "caustica/analysis/rotation.hpp"
#include "cli.hpp"
#include "helpers.hpp"
#include "output.hpp"

using namespace caustica;
using numerics::BigReal;
using numerics::Precision;
namespace fs = std::filesystem;
using testing::num;
using testing::ten_to;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("caustica-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string report_value(const std::string& report, const std::string& key) {
  for (const auto& line : lines(report)) {
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  }
  return {};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("decimal ranges are exact") {
    const auto a = cli::decimal_range("0.33:0.48:0.01");
    REQUIRE(a.size() == 16);
    CHECK(a.front() == "0.33");
    CHECK(a[7] == "0.40");
    CHECK(a.back() == "0.48");
    const auto b = cli::decimal_range("0:1.7:0.1");
    REQUIRE(b.size() == 18);
    CHECK(b.front() == "0.0");
    CHECK(b.back() == "1.7");
    const auto c = cli::decimal_range("-0.2:0.2:0.1");
    REQUIRE(c.size() == 5);
    CHECK(c.front() == "-0.2");
    CHECK(c[2] == "0.0");
    CHECK_THROWS_AS(cli::decimal_range("0:1:0"), InvalidArgument);
    CHECK_THROWS_AS(cli::decimal_range("0:1"), InvalidArgument);
    CHECK_THROWS_AS(cli::decimal_range("1:0:0.1"), InvalidArgument);
    CHECK_THROWS_AS(cli::decimal_range("a:1:0.1"), InvalidArgument);
  }

  TEST_CASE("orbit on the circle keeps p") {
    TempDir dir;
    const auto r = run({"orbit", "--table", "circle:1", "--start", "0,0.5", "--count", "3", "--out-dir", dir.str()});
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(dir / "orbit.csv"));
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "iter,phi,p");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto p = rows[i].substr(rows[i].rfind(',') + 1);
      CHECK(abs(num(p, 30) - num("0.5", 30)) <= ten_to(-25, 30));
    }
    CHECK(slurp(dir / "orbit.csv").find('\r') == std::string::npos);

    const auto m = nlohmann::json::parse(slurp(dir / "orbit.manifest.json"));
    CHECK(m["table"] == "circle:1");
    CHECK(m["start"][0] == "0");
    CHECK(m["start"][1] == "0.5");
    CHECK(m["iterations"] == 3);
    CHECK(m["decimals"] == 30);
    CHECK(m["control_decimals"].is_null());
    CHECK(m["max_discrepancy"].is_null());
    CHECK(m["aborted_at"].is_null());
    CHECK(m["wall_time_seconds"].is_number());
    CHECK(m["output_files"].size() == 1);
    CHECK(m["command_line"].get<std::string>().find("--start 0,0.5") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    TempDir dir;
    const auto outside = run({"orbit", "--start", "0,2.0", "--count", "1", "--out-dir", dir.str()});
    CHECK(outside.code == 2);
    CHECK(outside.err.find("iteration 1") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "orbit.manifest.json"));

    CHECK(run({"shadow", "--start", "0.06476110449368037,0.4806888855", "--count", "10", "--decimals", "150",
               "--control-decimals", "155", "--out-dir", dir.str()})
              .code == 64);
    CHECK(run({"orbit", "--start", "0.1,0.2", "--count", "3", "--table", "square", "--out-dir", dir.str()}).code ==
          64);
    CHECK(run({"orbit", "--start", "0.1", "--count", "3", "--out-dir", dir.str()}).code == 64);
    CHECK(run({"orbit", "--count", "3"}).code == 64);
    CHECK(run({"frobnicate"}).code == 64);
    CHECK(run({}).code == 64);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"periodic", "--table", "circle:1", "--q", "3", "--m", "1", "--seed", "0.1,0.4", "--out-dir",
               dir.str()})
              .code == 4);
    CHECK(run({"periodic", "--q", "6", "--m", "1", "--seed", "0.01,1.49", "--decimals", "11", "--out-dir",
               dir.str()})
              .code == 64);
  }

  TEST_CASE("global flags may follow the command") {
    TempDir dir;
    const auto a = run({"--decimals", "40", "--out-dir", dir.str(), "orbit", "--start", "0.1,1", "--count", "5",
                        "--name", "a"});
    const auto b = run({"orbit", "--start", "0.1,1", "--count", "5", "--name", "b", "--decimals", "40",
                        "--out-dir", dir.str()});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  }

  TEST_CASE("output directory from the environment") {
    TempDir dir;
    ::setenv("CAUSTICA_OUT", dir.str().c_str(), 1);
    const auto r = run({"orbit", "--start", "0.1,1", "--count", "2", "--name", "env"});
    ::unsetenv("CAUSTICA_OUT");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "env.csv"));
  }

  TEST_CASE("identical command lines give identical files") {
    TempDir dir;
    const std::vector<std::string> args{"orbit", "--start", "0.1,1.0", "--count", "300", "--out-dir", dir.str()};
    REQUIRE(run(args).code == 0);
    const std::string first = slurp(dir / "orbit.csv");
    auto m1 = nlohmann::json::parse(slurp(dir / "orbit.manifest.json"));
    REQUIRE(run(args).code == 0);
    CHECK(slurp(dir / "orbit.csv") == first);
    auto m2 = nlohmann::json::parse(slurp(dir / "orbit.manifest.json"));
    m1.erase("wall_time_seconds");
    m2.erase("wall_time_seconds");
    CHECK(m1 == m2);
    for (const auto& entry : fs::directory_iterator(dir.path())) {
      CHECK(entry.path().string().find(".tmp.") == std::string::npos);
    }
  }

  TEST_CASE("stride and fold") {
    TempDir dir;
    REQUIRE(run({"orbit", "--start", "0.1,1.0", "--count", "100", "--stride", "10", "--fold", "--out-dir",
                 dir.str()})
                .code == 0);
    const auto rows = lines(slurp(dir / "orbit.csv"));
    REQUIRE(rows.size() == 12);
    CHECK(rows.back().rfind("100,", 0) == 0);
    const Precision prec(30);
    const BigReal pi6 = BigReal::pi(prec) / 6L;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto first = rows[i].find(',');
      const auto second = rows[i].rfind(',');
      const BigReal phi = num(rows[i].substr(first + 1, second - first - 1), 30);
      CHECK(phi >= 0L);
      CHECK(phi <= pi6);
    }
  }

  TEST_CASE("shadow on the circle") {
    TempDir dir;
    const auto r = run({"shadow", "--table", "circle:1", "--start", "0.3,0.2", "--count", "1000", "--decimals", "30",
                        "--control-decimals", "40", "--log-every", "1", "--out-dir", dir.str()});
    REQUIRE(r.code == 0);
    const auto log = cli::read_discrepancy_csv(dir / "shadow.discrepancy.csv", Precision(40));
    REQUIRE(log.size() == 1000);
    for (const auto& s : log) REQUIRE(s.discrepancy < ten_to(-24, 40));
    const auto m = nlohmann::json::parse(slurp(dir / "shadow.manifest.json"));
    CHECK(m["control_decimals"] == 40);
    CHECK(m["aborted_at"].is_null());
    CHECK(m["max_discrepancy"].is_string());
    CHECK(m["output_files"].size() == 2);
  }

  TEST_CASE("shadow abort is a finding") {
    TempDir dir;
    const auto r = run({"shadow", "--start", "0.1,1.0", "--count", "500", "--control-decimals", "40", "--abort",
                        "1e-40", "--out-dir", dir.str()});
    CHECK(r.code == 0);
    const auto m = nlohmann::json::parse(slurp(dir / "shadow.manifest.json"));
    CHECK(m["aborted_at"] == 1);
    CHECK(m["iterations"] == 1);
  }

  TEST_CASE("sweep grids") {
    TempDir dir;
    auto r = run({"sweep", "--phi", "0.1", "--p", "0.33:0.48:0.01", "--count", "5", "--out-dir", dir.str()});
    REQUIRE(r.code == 0);
    auto m = nlohmann::json::parse(slurp(dir / "sweep.manifest.json"));
    CHECK(m["orbits"].size() == 16);
    CHECK(m["output_files"].size() == 16);
    CHECK(m["orbits"][15]["start"][1] == "0.48");

    r = run({"sweep", "--phi", "0.1", "--p", "0:1.7:0.1", "--count", "5", "--name", "wide", "--out-dir", dir.str()});
    REQUIRE(r.code == 0);
    m = nlohmann::json::parse(slurp(dir / "wide.manifest.json"));
    CHECK(m["output_files"].size() == 18);
    CHECK(fs::exists(dir / "wide_017.csv"));

    CHECK(run({"sweep", "--phi", "0.1", "--count", "5", "--out-dir", dir.str()}).code == 64);
    CHECK(run({"sweep", "--phi", "0.1", "--p", "0:1:0.5", "--p-list", "0.5", "--count", "5", "--out-dir", dir.str()})
              .code == 64);
  }

  TEST_CASE("singleton sweep equals orbit") {
    TempDir dir;
    REQUIRE(run({"sweep", "--phi", "0.1", "--p-list", "0.5", "--count", "200", "--out-dir", dir.str()}).code == 0);
    REQUIRE(run({"orbit", "--start", "0.1,0.5", "--count", "200", "--out-dir", dir.str()}).code == 0);
    CHECK(slurp(dir / "sweep_000.csv") == slurp(dir / "orbit.csv"));
  }

  TEST_CASE("sweep output does not depend on the job count") {
    TempDir one, many;
    const std::vector<std::string> base{"sweep", "--phi", "0.1", "--p", "0.33:0.40:0.01", "--count", "200"};
    auto a = base, b = base;
    a.insert(a.end(), {"--jobs", "1", "--out-dir", one.str()});
    b.insert(b.end(), {"--jobs", "4", "--out-dir", many.str()});
    REQUIRE(run(a).code == 0);
    REQUIRE(run(b).code == 0);
    for (int i = 0; i < 8; ++i) {
      const std::string name = "sweep_00" + std::to_string(i) + ".csv";
      REQUIRE(slurp(one / name) == slurp(many / name));
    }
  }

  TEST_CASE("sweep partial failure") {
    TempDir dir;
    auto r = run({"sweep", "--phi", "0", "--p-list", "1.0,2.0", "--count", "5", "--out-dir", dir.str()});
    CHECK(r.code == 0);
    const auto m = nlohmann::json::parse(slurp(dir / "sweep.manifest.json"));
    CHECK(m["orbits"][0]["status"] == "ok");
    CHECK(m["orbits"][1]["status"] == "failed");
    CHECK(m["orbits"][1]["exit_code"] == 2);
    CHECK(m["orbits"][1]["failed_at"] == 1);
    CHECK_FALSE(fs::exists(dir / "sweep_001.csv"));
    r = run({"sweep", "--phi", "0", "--p-list", "2.0,3.0", "--count", "5", "--out-dir", dir.str()});
    CHECK(r.code == 2);
  }

  TEST_CASE("periodic reports") {
    TempDir dir;
    auto r = run({"periodic", "--q", "6", "--m", "1", "--seed", "0.01,1.49", "--decimals", "30", "--out-dir",
                  dir.str()});
    REQUIRE(r.code == 0);
    CHECK(report_value(r.out, "verdict") == "hyperbolic");
    CHECK(abs(num(report_value(r.out, "p"), 30) - num("1.5", 30)) <= ten_to(-20, 30));
    CHECK(!report_value(r.out, "residual").empty());
    CHECK(!report_value(r.out, "trace").empty());
    CHECK(!report_value(r.out, "residue").empty());
    CHECK(fs::exists(dir / "periodic.manifest.json"));

    r = run({"periodic", "--q", "2", "--m", "1", "--seed", "1.5707,0.001", "--decimals", "30", "--out-dir",
             dir.str()});
    REQUIRE(r.code == 0);
    const Precision prec(30);
    CHECK(abs(num(report_value(r.out, "phi"), 30) - BigReal::pi(prec) / 2L) <= ten_to(-20, 30));
    CHECK(abs(num(report_value(r.out, "p"), 30)) <= ten_to(-20, 30));
  }

  TEST_CASE("diagnose round trip keeps the rotation number") {
    TempDir dir;
    REQUIRE(run({"orbit", "--start", "0.1,1.0", "--count", "3000", "--out-dir", dir.str()}).code == 0);
    const auto rec =
        dynamics::iterate(geometry::SupportCurve::hexagonal(),
                          dynamics::PhasePoint::parse({"0.1", "1.0"}, Precision(30)), 3000, 30);
    const auto r = run({"diagnose", "--orbit", (dir / "orbit.csv").string(), "--caustic", "hexagon"});
    REQUIRE(r.code == 0);
    CHECK(report_value(r.out, "rotation_number") == analysis::rotation_number(rec).to_string(20));
    CHECK(!report_value(r.out, "thickness").empty());
    CHECK(!report_value(r.out, "verdict_hint").empty());
    CHECK(!report_value(r.out, "caustic_deviation").empty());

    const auto inline_run = run({"diagnose", "--start", "0.1,1.0", "--count", "3000"});
    REQUIRE(inline_run.code == 0);
    CHECK(report_value(inline_run.out, "rotation_number") == report_value(r.out, "rotation_number"));
    CHECK(report_value(inline_run.out, "thickness") == report_value(r.out, "thickness"));
  }

  TEST_CASE("diagnose with a discrepancy log") {
    TempDir dir;
    std::ofstream(dir / "d.csv") << "iter,discrepancy\n";
    {
      std::ofstream log(dir / "d.csv", std::ios::app);
      for (int k = 0; k <= 5000; k += 50) {
        log << k << "," << (num("1e-30", 40) * exp(BigReal(0.01 * k, Precision(40)))).to_string() << "\n";
      }
    }
    REQUIRE(run({"orbit", "--start", "0.1,1.0", "--count", "100", "--out-dir", dir.str()}).code == 0);
    const auto r = run({"diagnose", "--orbit", (dir / "orbit.csv").string(), "--discrepancy",
                        (dir / "d.csv").string()});
    REQUIRE(r.code == 0);
    CHECK(std::stod(report_value(r.out, "lyapunov_slope")) == doctest::Approx(0.01).epsilon(1e-6));
    CHECK(report_value(r.out, "exponential") == "yes");
  }

  TEST_CASE("diagnose rejects bad data") {
    TempDir dir;
    REQUIRE(run({"orbit", "--start", "0.1,1.0", "--count", "9", "--out-dir", dir.str()}).code == 0);
    CHECK(run({"diagnose", "--orbit", (dir / "orbit.csv").string()}).code == 65);
    std::ofstream(dir / "bad_header.csv") << "i,phi,p\n0,0.1,0.2\n";
    CHECK(run({"diagnose", "--orbit", (dir / "bad_header.csv").string()}).code == 65);
    std::ofstream(dir / "bad_row.csv") << "iter,phi,p\n0,0.1\n";
    CHECK(run({"diagnose", "--orbit", (dir / "bad_row.csv").string()}).code == 65);
    std::ofstream(dir / "bad_num.csv") << "iter,phi,p\n0,0.1,zz\n";
    CHECK(run({"diagnose", "--orbit", (dir / "bad_num.csv").string()}).code == 65);
    CHECK(run({"diagnose", "--orbit", (dir / "missing.csv").string()}).code == 65);
    CHECK(run({"diagnose"}).code == 64);
  }
}

TEST_SUITE("cli-long") {
  TEST_CASE("half a million iterations at 30 decimals") {
    TempDir dir;
    const auto r = run({"orbit", "--table", "hexagonal", "--start", "0.1,1.0", "--count", "500000", "--decimals",
                        "30", "--out-dir", dir.str()});
    REQUIRE(r.code == 0);
    std::ifstream in(dir / "orbit.csv");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 500001 + 1);
  }
}
