#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bellcert/cli.hpp"

namespace cli = bellcert::cli;

int main(int argc, char** argv) {
  CLI::App app{"Semi-device-independent certification of conditional von "
               "Neumann entropy from Bell-operator values"};
  app.require_subcommand(1);

  cli::SweepOptions sweep;
  std::string sweep_h_grid, sweep_v_grid;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Threshold Bell values over an H grid, or certified CVNE "
               "bounds over a visibility grid");
  sweep_cmd->add_option("--operator", sweep.op,
                        "chsh|mchsh|bc3|i1|idelta");
  sweep_cmd->add_option("--delta", sweep.delta, "I_delta parameter");
  sweep_cmd->add_option("--H-grid", sweep_h_grid, "comma list or a:b:n");
  sweep_cmd->add_option("--v-grid", sweep_v_grid, "comma list or a:b:n");
  sweep_cmd->add_option("--method", sweep.method, "1|2|3");
  sweep_cmd->add_option("--apx", sweep.apx, "-1|+1");
  auto* sweep_m = sweep_cmd->add_option("--m", sweep.m, "quadrature nodes");
  auto* sweep_k = sweep_cmd->add_option("--k", sweep.k, "square-root steps");
  sweep_cmd->add_option("--dims", sweep.dims, "2|3");
  sweep_cmd->add_option("--restarts", sweep.restarts, "see-saw restarts");
  sweep_cmd->add_option("--cycle-tol", sweep.cycle_tol, "see-saw cycle tol");
  sweep_cmd->add_option("--max-cycles", sweep.max_cycles);
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--jobs", sweep.jobs, "worker pool size");
  sweep_cmd->add_option("--out", sweep.out, "CSV output path");
  sweep_cmd->add_flag("--svg", sweep.svg, "emit an SVG plot next to the CSV");

  cli::Table1Options table1;
  auto* table1_cmd =
      app.add_subcommand("table1", "Reproduce the four-operator threshold "
                                   "table and compare embedded expectations");
  table1_cmd->add_option("--m", table1.m);
  table1_cmd->add_option("--k", table1.k);
  table1_cmd->add_option("--tol", table1.tol, "Bell-value tolerance");
  table1_cmd->add_flag("--fixed-only", table1.fixed_only,
                       "skip the see-saw refinement over measurements");
  table1_cmd->add_option("--vis-tol", table1.vis_tol);
  table1_cmd->add_option("--seed", table1.seed);
  table1_cmd->add_option("--jobs", table1.jobs);
  table1_cmd->add_option("--out", table1.out);

  cli::IdeltaOptions idelta;
  std::string idelta_grid;
  auto* idelta_cmd = app.add_subcommand(
      "idelta", "Certification thresholds across the I_delta family");
  idelta_cmd->add_option("--delta-grid", idelta_grid, "comma list or a:b:n");
  idelta_cmd->add_option("--H", idelta.h, "negativity threshold to certify");
  idelta_cmd->add_option("--method", idelta.method, "3 (see-saw)");
  idelta_cmd->add_option("--m", idelta.m);
  idelta_cmd->add_option("--k", idelta.k);
  idelta_cmd->add_option("--restarts", idelta.restarts);
  idelta_cmd->add_option("--cycle-tol", idelta.cycle_tol);
  idelta_cmd->add_option("--max-cycles", idelta.max_cycles);
  idelta_cmd->add_option("--seed", idelta.seed);
  idelta_cmd->add_option("--jobs", idelta.jobs);
  idelta_cmd->add_option("--out", idelta.out);
  idelta_cmd->add_flag("--svg", idelta.svg);

  cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Analytic cross-checks: closed-form CHSH curve, Werner "
                "threshold, Tsirelson regression, quadrature sandwich");
  verify_cmd->add_option("--m", verify.m);
  verify_cmd->add_option("--k", verify.k);
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--jobs", verify.jobs);
  verify_cmd->add_option("--out", verify.out);

  cli::TsirelsonOptions tsirelson;
  auto* tsirelson_cmd = app.add_subcommand(
      "tsirelson", "Unconstrained maxima of the Bell operators");
  tsirelson_cmd->add_option("--operator", tsirelson.op,
                            "chsh|mchsh|bc3|i1|idelta|all");
  tsirelson_cmd->add_option("--delta", tsirelson.delta);
  tsirelson_cmd->add_option("--restarts", tsirelson.restarts);
  tsirelson_cmd->add_option("--seed", tsirelson.seed);
  tsirelson_cmd->add_option("--jobs", tsirelson.jobs);
  tsirelson_cmd->add_option("--out", tsirelson.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitUsage;
  }

  try {
    if (sweep_cmd->parsed()) {
      sweep.h_grid = cli::parse_grid(sweep_h_grid);
      sweep.v_grid = cli::parse_grid(sweep_v_grid);
      // the qutrit lift is too large for the geometric-mean chain; default
      // to a chainless rule with more nodes
      if (sweep.dims == 3 && sweep_m->count() == 0) sweep.m = 8;
      if (sweep.dims == 3 && sweep_k->count() == 0) sweep.k = 0;
      return cli::run_sweep(sweep);
    }
    if (table1_cmd->parsed()) return cli::run_table1(table1);
    if (idelta_cmd->parsed()) {
      idelta.delta_grid = cli::parse_grid(idelta_grid);
      return cli::run_idelta(idelta);
    }
    if (verify_cmd->parsed()) return cli::run_verify(verify);
    if (tsirelson_cmd->parsed()) return cli::run_tsirelson(tsirelson);
  } catch (const bellcert::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitNumerical;
  }
  return cli::kExitUsage;
}
