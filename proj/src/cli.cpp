#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bn/harness.hpp"

namespace bn {

namespace {

SchemeKind parse_scheme(const std::string& s) { return s == "rusanov" ? SchemeKind::Rusanov : SchemeKind::Relaxation; }

void print_report(const std::vector<ErrorReport>& reports, const char* label) {
  for (const auto& r : reports) {
    std::printf("%-8s cells=%-6d wall=%.4fs", label, r.cells, r.wall_seconds);
    if (r.failed) {
      std::printf(" FAILED: %s\n", r.failure.c_str());
      continue;
    }
    for (int v = 0; v < 7; ++v) std::printf(" %s=%.3e", kVariableNames[v], r.error[v] ? *r.error[v] : NAN);
    std::printf("\n");
  }
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
  CLI::App app{"Baer-Nunziato relaxation scheme driver"};
  app.require_subcommand(1);

  int case_id = 0;
  std::string config, scheme = "relax", out, log_path;
  int cells = 100, levels = 6;
  double cfl = -1, time = -1;

  auto* run_cmd = app.add_subcommand("run", "run a scheme and write the final profile");
  auto* case_opt = run_cmd->add_option("--case", case_id, "built-in test case 1-5")->check(CLI::Range(1, 5));
  auto* config_opt = run_cmd->add_option("--config", config, "JSON case file")->check(CLI::ExistingFile);
  case_opt->excludes(config_opt);
  run_cmd->add_option("--scheme", scheme)->check(CLI::IsMember({"relax", "rusanov"}));
  run_cmd->add_option("--cells", cells)->check(CLI::Range(2, 1 << 24));
  run_cmd->add_option("--cfl", cfl, "Courant number in (0, 0.5)");
  run_cmd->add_option("--out", out)->required();
  run_cmd->add_option("--log", log_path, "per-step diagnostic CSV");

  auto* exact_cmd = app.add_subcommand("exact", "write the exact profile of a test case");
  exact_cmd->add_option("--case", case_id)->required()->check(CLI::Range(1, 5));
  exact_cmd->add_option("--cells", cells)->check(CLI::Range(2, 1 << 24));
  exact_cmd->add_option("--time", time, "sampling time, default T_max");
  exact_cmd->add_option("--out", out)->required();

  auto* conv_cmd = app.add_subcommand("convergence", "L1 errors on meshes 100*2^n, n < levels");
  conv_cmd->add_option("--case", case_id)->required()->check(CLI::Range(1, 5));
  conv_cmd->add_option("--scheme", scheme)->check(CLI::IsMember({"relax", "rusanov"}));
  conv_cmd->add_option("--levels", levels)->check(CLI::Range(1, 12));
  conv_cmd->add_option("--out", out)->required();

  auto* bench_cmd = app.add_subcommand("bench", "errors and wall time for both schemes");
  bench_cmd->add_option("--case", case_id)->required()->check(CLI::Range(1, 5));
  bench_cmd->add_option("--levels", levels)->check(CLI::Range(1, 12));
  bench_cmd->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*run_cmd) {
      if (case_id == 0 && config.empty()) {
        std::cerr << "error: run needs --case or --config\n\n" << app.help();
        return 2;
      }
      const TestCase c = config.empty() ? get_case(case_id) : load_case_json(config);
      auto cfg = case_config(c, parse_scheme(scheme), cells);
      if (cfl > 0) cfg.cfl = cfl;
      cfg.validate();
      const PiecewiseData<double> data{c.left, c.right, c.x0};
      std::size_t steps = 0;
      const std::function<void(const StepAudit<double>&)> count = [&](const StepAudit<double>&) { ++steps; };
      auto r = run(data, cfg, c.eos1, c.eos2, count, !log_path.empty());
      std::vector<PrimitiveState<double>> profile(cells);
      for (int j = 0; j < cells; ++j) profile[j] = to_primitive<double>(r.cells.col(j), c.eos1, c.eos2);
      write_profile_csv(out, cell_centers(c, cells), profile);
      if (!log_path.empty()) write_log_csv(log_path, r.log);
      std::printf("run: %s, %d cells, t=%.6g, %zu steps -> %s\n", to_string(cfg.scheme), cells, r.t,
                  steps, out.c_str());
    } else if (*exact_cmd) {
      const TestCase c = get_case(case_id);
      const double t = time > 0 ? time : c.t_max;
      write_profile_csv(out, cell_centers(c, cells), exact_profile(c, cells, t));
      std::printf("exact: case %d, %d cells, t=%.6g -> %s\n", case_id, cells, t, out.c_str());
    } else if (*conv_cmd) {
      const auto reports = convergence_study(get_case(case_id), parse_scheme(scheme), mesh_levels(levels));
      write_convergence_csv(out, reports);
      print_report(reports, scheme.c_str());
      for (const auto& r : reports)
        if (r.failed) return 1;
    } else if (*bench_cmd) {
      const auto rows = bench(get_case(case_id), mesh_levels(levels));
      write_bench_csv(out, rows);
      for (const auto& row : rows) print_report({row.report}, to_string(row.scheme));
      for (const auto& row : rows)
        if (row.report.failed) return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace bn
