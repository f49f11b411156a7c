#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bn/reference.hpp"
#include "bn/scheme.hpp"

namespace bn {

inline constexpr std::array<const char*, 7> kVariableNames{"alpha1", "rho1", "u1", "p1", "rho2", "u2", "p2"};

using ErrorVector = std::array<std::optional<double>, 7>;

std::array<double, 7> variables(const PrimitiveState<double>& w);

struct ErrorReport {
  int cells{0};
  double dx{0};
  ErrorVector error{};
  ErrorVector order{};
  double wall_seconds{0};
  bool failed{false};
  std::string failure;
};

// sum |phi - phi_ex| dx / sum |phi_ex| dx; nullopt when the exact norm vanishes
std::optional<double> l1_error(const std::vector<double>& approx, const std::vector<double>& exact, double dx);

ErrorVector l1_error(const std::vector<PrimitiveState<double>>& approx,
                     const std::vector<PrimitiveState<double>>& exact, double dx);

struct CaseRun {
  Field<double> cells;
  std::vector<PrimitiveState<double>> profile;
  double wall_seconds{0};
  int steps{0};
};

RunConfig<double> case_config(const TestCase& c, SchemeKind scheme, int cells);

// wall time covers the time loop only
CaseRun run_case(const TestCase& c, const RunConfig<double>& cfg,
                 const std::function<void(const StepAudit<double>&)>& observer = {});

std::vector<int> mesh_levels(int count, int base = 100);

std::vector<ErrorReport> convergence_study(const TestCase& c, SchemeKind scheme, const std::vector<int>& levels);

struct BenchRow {
  SchemeKind scheme{SchemeKind::Relaxation};
  ErrorReport report;
};

std::vector<BenchRow> bench(const TestCase& c, const std::vector<int>& levels);

// log-log interpolated wall time needed to reach target on variable var; nullopt if never reached
std::optional<double> time_to_reach(const std::vector<ErrorReport>& reports, int var, double target);

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

void write_profile_csv(const std::string& path, const std::vector<double>& xs,
                       const std::vector<PrimitiveState<double>>& profile);

struct ProfileData {
  std::vector<double> xs;
  std::vector<PrimitiveState<double>> profile;
};

ProfileData read_profile_csv(const std::string& path);

void write_convergence_csv(const std::string& path, const std::vector<ErrorReport>& reports);

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows);

void write_log_csv(const std::string& path, const std::vector<StepLog<double>>& log);

TestCase parse_case_json(const std::string& text);

TestCase load_case_json(const std::string& path);

int cli_dispatch(int argc, const char* const* argv);

}  // namespace bn
