#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "bellcert/cli.hpp"

using namespace bellcert;
using namespace bellcert::cli;

namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
  static const fs::path dir =
      fs::temp_directory_path() /
      ("bellcert_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
#ifdef BELLCERT_CLI_PATH
  const std::string cmd = std::string(BELLCERT_CLI_PATH) + " " + args +
                          " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
#else
  (void)args;
  return -1;
#endif
}

}  // namespace

TEST_CASE("format_number: 12 significant digits, C locale") {
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(2.82842712474619) == "2.82842712475");
  CHECK(format_number(-0.9) == "-0.9");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("parse_grid accepts lists and linspace specs") {
  const auto lst = parse_grid("0,-0.5,-1");
  REQUIRE(lst.size() == 3);
  CHECK(lst[1] == doctest::Approx(-0.5));

  const auto lin = parse_grid("0:-1:5");
  REQUIRE(lin.size() == 5);
  CHECK(lin[0] == doctest::Approx(0.0));
  CHECK(lin[4] == doctest::Approx(-1.0));
  CHECK(lin[2] == doctest::Approx(-0.5));

  CHECK(parse_grid("").empty());
  CHECK_THROWS_AS(parse_grid("1:2:0"), DomainError);
}

TEST_CASE("csv rendering matches the column contract") {
  CsvRow row;
  row.op = "CHSH";
  row.h = -0.5;
  row.omega = 2.5;
  row.violation_ratio = 1.25;
  row.critical_visibility = 0.88;
  row.method = 2;
  row.apx = 1;
  row.iterations = 17;
  row.status = "converged";
  const std::string text = csv_text({row});
  CHECK(text.find("operator,delta,H,omega,violation_ratio,"
                  "critical_visibility,method,apx,iterations,status") == 0);
  CHECK(text.find("CHSH,,-0.5,2.5,1.25,0.88,2,1,17,converged") !=
        std::string::npos);

  row.delta = 0.25;
  const std::string with_delta = csv_text({row});
  CHECK(with_delta.find("CHSH,0.25,") != std::string::npos);
}

TEST_CASE("svg plot is a pure function of the data") {
  const std::vector<std::pair<std::string,
                              std::vector<std::pair<double, double>>>> series =
      {{"a", {{0.0, 1.0}, {1.0, 2.0}}}};
  const std::string s1 = svg_plot("x", "y", series);
  const std::string s2 = svg_plot("x", "y", series);
  CHECK(s1 == s2);
  CHECK(s1.find("<svg") != std::string::npos);
  CHECK(s1.find("<polyline") != std::string::npos);
  CHECK(s1.find("</svg>") != std::string::npos);
}

TEST_CASE("sweep: CSV, manifest, determinism") {
  SweepOptions opts;
  opts.op = "chsh";
  opts.h_grid = {0.0, -0.5};
  opts.method = 2;
  opts.jobs = 2;
  opts.out = (temp_dir() / "sweep_a.csv").string();
  opts.svg = true;
  REQUIRE(run_sweep(opts) == kExitOk);

  const std::string csv = slurp(opts.out);
  CHECK(csv.find("CHSH,,-0.5,") != std::string::npos);
  CHECK(csv.find("2.2060") != std::string::npos);  // omega at H = 0
  CHECK(fs::exists(opts.out + ".manifest"));
  CHECK(fs::exists(temp_dir() / "sweep_a.svg"));

  SweepOptions again = opts;
  again.out = (temp_dir() / "sweep_b.csv").string();
  REQUIRE(run_sweep(again) == kExitOk);
  CHECK(slurp(again.out) == csv);  // byte-identical data

  const std::string manifest = slurp(opts.out + ".manifest");
  CHECK(manifest.find("command sweep") != std::string::npos);
  CHECK(manifest.find("operator CHSH") != std::string::npos);
  CHECK(manifest.find("seed 1") != std::string::npos);
}

TEST_CASE("sweep: method 1 rows carry apx 0") {
  SweepOptions opts;
  opts.op = "chsh";
  opts.h_grid = {-0.25};
  opts.method = 1;
  opts.out = (temp_dir() / "sweep_m1.csv").string();
  REQUIRE(run_sweep(opts) == kExitOk);
  const std::string csv = slurp(opts.out);
  CHECK(csv.find(",1,0,") != std::string::npos);  // method=1, apx=0
}

TEST_CASE("sweep: visibility mode inverts the curve") {
  SweepOptions opts;
  opts.op = "chsh";
  opts.v_grid = {0.9888};
  opts.method = 2;
  opts.jobs = 2;
  opts.out = (temp_dir() / "sweep_v.csv").string();
  REQUIRE(run_sweep(opts) == kExitOk);
  const std::string csv = slurp(opts.out);
  // H column close to -0.9 for the Table-I visibility
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  const auto first_comma = line.find(',');
  const auto second = line.find(',', first_comma + 1);
  const auto third = line.find(',', second + 1);
  const double h = std::stod(line.substr(second + 1, third - second - 1));
  CHECK(h == doctest::Approx(-0.9).epsilon(2e-3));
}

TEST_CASE("sweep rejects bad flag combinations") {
  SweepOptions opts;
  opts.op = "idelta";
  opts.method = 2;  // idelta has no fixed angles
  opts.out = (temp_dir() / "bad.csv").string();
  CHECK(run_sweep(opts) == kExitUsage);

  SweepOptions qutrit;
  qutrit.op = "chsh";
  qutrit.dims = 3;
  qutrit.method = 2;
  qutrit.out = (temp_dir() / "bad2.csv").string();
  CHECK(run_sweep(qutrit) == kExitUsage);

  SweepOptions badop;
  badop.op = "nope";
  CHECK(run_sweep(badop) == kExitUsage);
}

TEST_CASE("tsirelson command reports the closed forms") {
  TsirelsonOptions opts;
  opts.op = "chsh";
  opts.out = (temp_dir() / "tsirelson.csv").string();
  REQUIRE(run_tsirelson(opts) == kExitOk);
  const std::string csv = slurp(opts.out);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);  // header
  std::getline(is, line);
  const auto c1 = line.find(',');
  const auto c2 = line.find(',', c1 + 1);
  const auto c3 = line.find(',', c2 + 1);
  const auto c4 = line.find(',', c3 + 1);
  const double omega = std::stod(line.substr(c3 + 1, c4 - c3 - 1));
  CHECK(omega == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("verify command runs the cross-check suite") {
  VerifyOptions opts;
  opts.jobs = 2;
  opts.out = (temp_dir() / "verify.txt").string();
  CHECK(run_verify(opts) == kExitOk);
  const std::string report = slurp(opts.out);
  CHECK(report.find("PASS closed_form_chsh") != std::string::npos);
  CHECK(report.find("PASS werner_threshold") != std::string::npos);
  CHECK(report.find("PASS tsirelson_fixed_angles") != std::string::npos);
  CHECK(report.find("PASS quadrature_sandwich") != std::string::npos);
  CHECK(fs::exists(opts.out + ".manifest"));
}

TEST_CASE("cli binary exit codes") {
  if (run_cli("--help") < 0) return;  // binary path not wired in
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("frobnicate") == kExitUsage);
  CHECK(run_cli("sweep --method 9 --out /tmp/x.csv") == kExitUsage);
  CHECK(run_cli("sweep --operator nope --out /tmp/x.csv") == kExitUsage);
}
