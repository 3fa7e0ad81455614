#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bellcert/certify.hpp"

namespace bellcert::cli {

inline constexpr const char* kVersion = "0.1.0";

// exit-code contract, stable for CI embedding
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// One CSV record; columns: operator, delta (empty unless I_delta), H,
/// omega, violation_ratio, critical_visibility, method, apx, iterations,
/// status.
struct CsvRow {
  std::string op;
  std::optional<double> delta;
  double h = 0.0;
  double omega = 0.0;
  double violation_ratio = 0.0;
  double critical_visibility = 0.0;
  int method = 0;
  int apx = 0;
  int iterations = 0;
  std::string status;
};

/// 12 significant digits, '.' decimal separator.
std::string format_number(double v);

std::string csv_text(const std::vector<CsvRow>& rows);
void write_text_file(const std::string& path, const std::string& content);

/// Plain-text key-value sidecar written to "<out>.manifest".
void write_manifest(const std::string& out_path,
                    const std::vector<std::pair<std::string, std::string>>& kv);

/// Minimal self-contained SVG line plot (axes, legend, one polyline per
/// series); a pure function of the data.
std::string svg_plot(const std::string& x_label, const std::string& y_label,
                     const std::vector<std::pair<
                         std::string, std::vector<std::pair<double, double>>>>&
                         series);

struct SweepOptions {
  std::string op = "chsh";  // chsh | mchsh | bc3 | i1 | idelta
  double delta = M_PI / 6.0;
  std::vector<double> h_grid;  // H sweep when non-empty (default grid if both empty)
  std::vector<double> v_grid;  // visibility sweep
  int method = 2;
  int apx = +1;
  int m = 3;
  int k = 3;
  int dims = 2;
  int restarts = 100;
  double cycle_tol = 1e-7;
  int max_cycles = 1000;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out = "sweep.csv";
  bool svg = false;
};
int run_sweep(const SweepOptions& opts);

struct Table1Options {
  int m = 3;
  int k = 3;
  double tol = 1e-2;       // absolute Bell-value tolerance
  double vis_tol = 5e-4;   // critical-visibility tolerance
  // restrict thresholds to the fixed Tsirelson-optimal measurements,
  // skipping the see-saw refinement over arbitrary measurements
  bool fixed_only = false;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out = "table1.csv";
};
int run_table1(const Table1Options& opts);

struct IdeltaOptions {
  std::vector<double> delta_grid;  // default: 24 log-spaced in (0.01, pi/6]
  double h = 0.0;                  // negativity threshold to certify
  int method = 3;
  int m = 3;
  int k = 3;
  int restarts = 4;
  double cycle_tol = 1e-7;
  int max_cycles = 1000;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out = "idelta.csv";
  bool svg = false;
};
int run_idelta(const IdeltaOptions& opts);

struct VerifyOptions {
  int m = 3;
  int k = 3;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out = "verify.txt";
};
int run_verify(const VerifyOptions& opts);

struct TsirelsonOptions {
  std::string op = "all";  // one of the four, idelta, or "all"
  double delta = M_PI / 6.0;
  int restarts = 8;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out = "tsirelson.csv";
};
int run_tsirelson(const TsirelsonOptions& opts);

// shared grid helpers
std::vector<double> default_h_grid(int dims);
std::vector<double> default_delta_grid();
std::vector<double> parse_grid(const std::string& text);  // "a,b,c" or "a:b:n"

}  // namespace bellcert::cli
