#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "bn/harness.hpp"
#include "support/audits.hpp"

using namespace bn;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- 1: constant-region reproduction

struct PlateauResult {
  int checked{0};
  double worst{0};
  std::string where;
  bool ok{true};
  double far_worst{0};  // cells >= 80 dx from every wave, informational
};

PlateauResult plateau_check(int id) {
  const TestCase c = get_case(id);
  const int cells = 3200;
  const auto cfg = case_config(c, SchemeKind::Relaxation, cells);
  const auto run = run_case(c, cfg);
  const auto& fan = *c.exact;
  const auto waves = fan.ordered_waves();
  const auto xs = cell_centers(c, cells);
  const double dx = cfg.dx(), t = c.t_max;
  PlateauResult r;
  for (int j = 0; j < cells; ++j) {
    const double x = xs[j] - c.x0;
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& w : waves) {
      const double lo = w.lo * t, hi = w.hi * t;
      dmin = std::min(dmin, x < lo ? lo - x : (x > hi ? x - hi : 0.0));
    }
    if (dmin < 10 * dx) continue;
    const double xi = x / t;
    const auto num = variables(run.profile[j]);
    std::array<double, 7> ex{};
    std::array<bool, 7> use{};
    ex[0] = xi < fan.coupling_speed ? fan.alpha1L : fan.alpha1R;
    use[0] = true;
    std::array<std::string, 2> region;
    for (int k = 0; k < 2; ++k) {
      const auto s = exact_sample_phase(fan, k, xi, k == 0 ? c.eos1 : c.eos2);
      const auto& reg = fan.regions[k][s.region];
      region[k] = reg.name;
      const bool present = s.region >= 0 && !reg.absent;
      ex[1 + 3 * k] = reg.rho;
      ex[2 + 3 * k] = reg.u;
      ex[3 + 3 * k] = reg.p;
      for (int v = 0; v < 3; ++v) use[1 + 3 * k + v] = present;
    }
    ++r.checked;
    for (int v = 0; v < 7; ++v) {
      if (!use[v]) continue;
      const double tol = (id == 2 && v == 1 && region[0] == "R*") ? 5e-2 : 2e-2;
      const double rel = std::abs(num[v] - ex[v]) / std::abs(ex[v]);
      if (dmin >= 80 * dx) r.far_worst = std::max(r.far_worst, rel);
      if (rel > r.worst) {
        r.worst = rel;
        r.where = std::string(kVariableNames[v]) + " at x=" + fmt("%.4f", xs[j]) + " region " +
                  (v == 0 ? "" : region[v <= 3 ? 0 : 1]);
      }
      if (rel > tol) r.ok = false;
    }
  }
  if (r.checked == 0) r.ok = false;
  return r;
}

void criterion1() {
  bool ok = true;
  std::string detail;
  for (int id : {1, 2, 4}) {
    try {
      const auto r = plateau_check(id);
      ok = ok && r.ok;
      detail += "case " + std::to_string(id) + ": " + std::to_string(r.checked) + " cells, worst rel " +
                fmt("%.3e", r.worst) + " (" + r.where + "), beyond 80 dx " + fmt("%.3e", r.far_worst) + "; ";
    } catch (const std::exception& e) {
      ok = false;
      detail += "case " + std::to_string(id) + " threw: " + e.what() + "; ";
    }
  }
  report(1, ok, detail);
}

// ---- 2: convergence slopes

void criterion2() {
  const TestCase c = get_case(1);
  const auto reps = convergence_study(c, SchemeKind::Relaxation, mesh_levels(6));
  bool ok = true;
  std::string detail;
  for (const auto& r : reps)
    if (r.failed) {
      report(2, false, "run at " + std::to_string(r.cells) + " cells failed: " + r.failure);
      return;
    }
  for (int v = 0; v < 7; ++v) {
    std::vector<double> x, y;
    for (const auto& r : reps) {
      x.push_back(std::log(r.dx));
      y.push_back(std::log(*r.error[v]));
    }
    const double slope = least_squares_slope(x, y);
    detail += std::string(kVariableNames[v]) + "=" + fmt("%.3f", slope) + " ";
    if (v == 5) continue;  // u2 may converge faster
    if (slope < 0.35 || slope > 0.95) ok = false;
  }
  report(2, ok, "slopes " + detail);
}

// ---- 3: positivity

void criterion3() {
  bool ok = true;
  std::string detail;
  for (int id : {3, 4, 5}) {
    const TestCase c = get_case(id);
    for (int cells : {100, 1000}) {
      long checked = 0, violations = 0;
      auto obs = [&](const StepAudit<double>& a) {
        for (int j = 0; j < a.after->cols(); ++j) {
          ++checked;
          try {
            check_admissible<double>(a.after->col(j), c.eos1, c.eos2);
          } catch (const AdmissibilityError&) {
            ++violations;
          }
        }
      };
      std::string status;
      try {
        const auto r = run_case(c, case_config(c, SchemeKind::Relaxation, cells), obs);
        status = std::to_string(r.steps) + " steps";
      } catch (const std::exception& e) {
        ok = false;
        status = std::string("threw: ") + e.what();
      }
      if (violations) ok = false;
      detail += "case " + std::to_string(id) + "/" + std::to_string(cells) + ": " + status + ", " +
                std::to_string(violations) + " violations in " + std::to_string(checked) + " cell-steps; ";
    }
  }
  report(3, ok, detail);
}

// ---- 4: conservation

void criterion4() {
  bool ok = true;
  double worst = 0;
  std::string detail;
  for (int id = 1; id <= 5; ++id) {
    const TestCase c = get_case(id);
    double case_worst = 0;
    try {
      run_case(c, case_config(c, SchemeKind::Relaxation, 200),
               [&](const StepAudit<double>& a) { case_worst = std::max(case_worst, audit::conservation_discrepancy(a)); });
    } catch (const std::exception& e) {
      ok = false;
      detail += "case " + std::to_string(id) + " threw: " + e.what() + "; ";
    }
    worst = std::max(worst, case_worst);
    detail += "case " + std::to_string(id) + " " + fmt("%.2e", case_worst) + "; ";
  }
  if (worst > 1e-11) ok = false;
  report(4, ok, "worst relative discrepancy " + fmt("%.2e", worst) + " (" + detail + ")");
}

// ---- 5: discrete entropy inequality

void criterion5() {
  bool ok = true;
  std::string detail;
  for (int id : {1, 2}) {
    const TestCase c = get_case(id);
    audit::EntropyAudit ea;
    try {
      run_case(c, case_config(c, SchemeKind::Relaxation, 200),
               [&](const StepAudit<double>& a) { audit::entropy_check(a, c.eos1, c.eos2, ea); });
    } catch (const std::exception& e) {
      ok = false;
      detail += "case " + std::to_string(id) + " threw: " + e.what() + "; ";
    }
    if (ea.violations) ok = false;
    detail += "case " + std::to_string(id) + ": " + std::to_string(ea.violations) + " violations, min slack " +
              fmt("%.2e", ea.worst_slack) + "; ";
  }
  report(5, ok, detail);
}

// ---- 6: stationary coupled contact

void criterion6() {
  const EosParams<double> eos{1.4, 0};
  const PiecewiseData<double> data{{0.2, 1.0, 0.0, 1.0, 2.0, 0.0, 1.0}, {0.7, 0.5, 0.0, 1.0, 1.0, 0.0, 1.0}, 0.5};
  RunConfig<double> cfg;
  cfg.cells = 100;
  cfg.t_final = 1;
  const Field<double> U0 = project_initial(data, cfg, eos, eos);
  const double inf = std::numeric_limits<double>::infinity();
  bool ok = true;
  double relax_change = 0, rus_change = 0;
  try {
    Field<double> U = U0;
    for (int n = 0; n < 100; ++n) {
      U = step(U, cfg, eos, eos, inf).cells;
      relax_change = std::max(relax_change, (U - U0).cwiseAbs().maxCoeff());
    }
    cfg.scheme = SchemeKind::Rusanov;
    rus_change = (step(U0, cfg, eos, eos, inf).cells - U0).cwiseAbs().maxCoeff();
  } catch (const std::exception& e) {
    report(6, false, std::string("threw: ") + e.what());
    return;
  }
  ok = relax_change <= 1e-12 && rus_change > 1e-6;
  report(6, ok, "relaxation max change over 100 steps " + fmt("%.2e", relax_change) +
                    ", Rusanov after one step " + fmt("%.2e", rus_change));
}

// ---- 7: accuracy ordering and cost to reach a target

void criterion7() {
  const TestCase c = get_case(1);
  const auto rows = bench(c, mesh_levels(5));
  std::vector<ErrorReport> relax, rus;
  for (const auto& r : rows) (r.scheme == SchemeKind::Relaxation ? relax : rus).push_back(r.report);
  bool ok = true;
  std::string detail = "100 cells:";
  for (int v = 0; v < 7; ++v) {
    const auto& a = relax.front().error[v];
    const auto& b = rus.front().error[v];
    if (!a || !b || !(*a < *b)) ok = false;
    detail += std::string(" ") + kVariableNames[v] + " " + fmt("%.2e", a.value_or(NAN)) + "/" +
              fmt("%.2e", b.value_or(NAN));
  }
  // targets spanning the coarsest error down to the finest reached by either scheme
  const int v = 1;
  double hi = std::min(*relax.front().error[v], *rus.front().error[v]);
  double lo = hi;
  for (const auto* set : {&relax, &rus})
    for (const auto& r : *set)
      if (!r.failed && r.error[v]) lo = std::min(lo, *r.error[v]);
  int targets = 0, wins = 0;
  double worst_ratio = 0;
  for (int i = 0; i <= 20; ++i) {
    const double target = hi * std::pow(lo / hi, i / 20.0);
    const auto tr = time_to_reach(relax, v, target);
    const auto tu = time_to_reach(rus, v, target);
    if (!tr && !tu) continue;
    ++targets;
    if (tr && (!tu || *tr < *tu)) ++wins;
    if (tr && tu) worst_ratio = std::max(worst_ratio, *tr / *tu);
    if (!tr) worst_ratio = std::numeric_limits<double>::infinity();
  }
  if (targets == 0 || wins != targets) ok = false;
  detail += "; rho1 targets " + std::to_string(wins) + "/" + std::to_string(targets) +
            " reached faster by relaxation, worst time ratio relax/rusanov " + fmt("%.3f", worst_ratio);
  report(7, ok, detail);
}

// ---- 8: solver kernel properties on random pairs

struct Oracle {
  double u, pi, tauL, tauR;
};

// single-phase Suliciu: pi + a u and pi - a u carried across the left and right waves
Oracle suliciu(double tauL, double uL, double pL, double tauR, double uR, double pR, double a) {
  Eigen::Matrix2d A;
  A << a, 1, -a, 1;
  const Eigen::Vector2d b(pL + a * uL, pR - a * uR);
  const Eigen::Vector2d x = A.partialPivLu().solve(b);
  return {x[0], x[1], tauL + (x[0] - uL) / a, tauR - (x[0] - uR) / a};
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

double rel_or_abs(double a, double b, double scale) { return std::abs(a - b) / std::max(scale, std::abs(b)); }

void criterion8() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> U(0, 1);
  auto logu = [&](double lo, double hi) { return lo * std::pow(hi / lo, U(rng)); };
  auto state = [&](double alpha) {
    PrimitiveState<double> w;
    w.alpha1 = alpha;
    for (int k = 0; k < 2; ++k) {
      w.rho(k) = logu(0.1, 10);
      w.u(k) = -2 + 4 * U(rng);
      w.p(k) = logu(0.1, 10);
    }
    return w;
  };
  const int target = 10000;
  int pairs = 0, draws = 0, decoupled = 0;
  double psi_worst = 0, mirror_worst = 0, oracle_worst = 0;
  int ordering_fail = 0;
  std::string first_error;
  while (pairs < target && draws < 20 * target) {
    ++draws;
    const EosParams<double> eos1{1.1 + 2 * U(rng), U(rng) < 0.5 ? 0.0 : logu(0.01, 5)};
    const EosParams<double> eos2{1.1 + 2 * U(rng), U(rng) < 0.5 ? 0.0 : logu(0.01, 5)};
    const bool same_alpha = U(rng) < 0.2;
    const auto wL = state(0.01 + 0.98 * U(rng));
    const auto wR = state(same_alpha ? wL.alpha1 : 0.01 + 0.98 * U(rng));
    RelaxParams<double> params;
    RelaxRiemannSolution<double> sol, msol;
    try {
      params = select_parameters(wL, wR, eos1, eos2).params;
      const double inflate = 1 + U(rng);
      const RelaxParams<double> bigger{params.a1 * inflate, params.a2 * (1 + U(rng))};
      try {
        sol = build_solution(wL, wR, eos1, eos2, bigger);
        params = bigger;
      } catch (const SolverError&) {
        sol = build_solution(wL, wR, eos1, eos2, params);
      }
      msol = build_solution(mirror(wR), mirror(wL), eos1, eos2, params);
    } catch (const SolverError&) {
      continue;  // infeasible draw
    }
    ++pairs;

    if (sol.ordering != WaveOrdering::Coincident) {
      const auto s = sharp_quantities(wL, wR, params);
      const auto fs = solve_interface_star(wL, wR, params, s, sol.ordering);
      const auto ctx = FixedPointContext<double>::make(fs.frame_sharp, params);
      psi_worst = std::max(psi_worst, std::abs(ctx.Psi(fs.star.m) - ctx.rhs));
    }

    const auto f1 = sol.fan[0];
    bool ordered = f1.speed[0] < sol.u2_star && sol.u2_star < f1.speed[3] && condition_B(sol.sharp, params, sol.u2_star);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i + 1 < sol.fan[k].waves; ++i) ordered = ordered && sol.fan[k].speed[i] <= sol.fan[k].speed[i + 1];
    if (!ordered) ++ordering_fail;

    const double smax = std::max(std::abs(f1.speed[0]), std::abs(f1.speed[3])) +
                        std::max(std::abs(sol.fan[1].speed[0]), std::abs(sol.fan[1].speed[2]));
    for (int q = 0; q < 8; ++q) {
      const double xi = (2 * U(rng) - 1) * 1.2 * smax;
      const auto a = sample(sol, xi, Trace::Right);
      const auto b = sample(msol, -xi, Trace::Left);
      double d = rel_diff(a.alpha1, b.alpha1);
      for (int k = 0; k < 2; ++k) {
        const double uscale = params.a(k) * std::max(a.tau[k], b.tau[k]);
        d = std::max({d, rel_diff(a.tau[k], b.tau[k]), rel_or_abs(a.u[k], -b.u[k], uscale),
                      rel_diff(a.pi[k], b.pi[k]), rel_diff(a.energy[k], b.energy[k])});
      }
      mirror_worst = std::max(mirror_worst, d);
    }

    if (same_alpha) {
      ++decoupled;
      for (int k = 0; k < 2; ++k) {
        const double a = params.a(k);
        const auto o = suliciu(wL.tau(k), wL.u(k), wL.p(k), wR.tau(k), wR.u(k), wR.p(k), a);
        const double us = k == 0 ? sol.u1_star : sol.u2_star;
        const auto left = sample(sol, us, Trace::Left);
        const auto right = sample(sol, us, Trace::Right);
        const double uscale = a * std::max(o.tauL, o.tauR);
        // tau* = tau + (u* - u)/a is conditioned on tau + |u* - u|/a
        const double sL = std::max(o.tauL, wL.tau(k) + std::abs(o.u - wL.u(k)) / a);
        const double sR = std::max(o.tauR, wR.tau(k) + std::abs(o.u - wR.u(k)) / a);
        const double d = std::max({rel_or_abs(us, o.u, uscale), rel_or_abs(left.u[k], o.u, uscale),
                                   rel_or_abs(right.u[k], o.u, uscale), rel_or_abs(left.pi[k], o.pi, a * uscale),
                                   rel_or_abs(right.pi[k], o.pi, a * uscale), rel_or_abs(left.tau[k], o.tauL, sL),
                                   rel_or_abs(right.tau[k], o.tauR, sR)});
        oracle_worst = std::max(oracle_worst, d);
      }
    }
  }
  const bool ok = pairs == target && psi_worst <= 1e-12 && ordering_fail == 0 && mirror_worst <= 1e-13 &&
                  oracle_worst <= 1e-13 && decoupled > 0;
  report(8, ok,
         std::to_string(pairs) + " pairs (" + std::to_string(draws) + " draws), Psi residual " +
             fmt("%.2e", psi_worst) + ", ordering failures " + std::to_string(ordering_fail) + ", mirror " +
             fmt("%.2e", mirror_worst) + ", decoupling (" + std::to_string(decoupled) + " pairs) " +
             fmt("%.2e", oracle_worst));
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4,
                                         criterion5, criterion6, criterion7, criterion8};
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::stoi(argv[i]));
  for (int i = 0; i < 8; ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), i + 1) == only.end()) continue;
    try {
      all[i]();
    } catch (const std::exception& e) {
      report(i + 1, false, std::string("unexpected exception: ") + e.what());
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
