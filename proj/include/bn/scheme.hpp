#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "bn/finite_volume.hpp"
#include "bn/riemann_relax.hpp"
#include "bn/rusanov.hpp"

namespace bn {

template <typename Scalar>
struct Selection {
  RelaxParams<Scalar> params;
  RelaxRiemannSolution<Scalar> solution;
  int inflations{0};
};

namespace detail {

template <typename Scalar>
std::string dump(const PrimitiveState<Scalar>& w) {
  std::ostringstream os;
  os.precision(17);
  os << "(alpha1=" << w.alpha1 << ", rho1=" << w.rho1 << ", u1=" << w.u1 << ", p1=" << w.p1 << ", rho2=" << w.rho2
     << ", u2=" << w.u2 << ", p2=" << w.p2 << ")";
  return os.str();
}

template <typename Scalar>
[[noreturn]] void infeasible(const char* loop, const PrimitiveState<Scalar>& wL, const PrimitiveState<Scalar>& wR,
                             const RelaxParams<Scalar>& p) {
  std::ostringstream os;
  os.precision(17);
  os << "non-subsonic or infeasible interface (" << loop << " loop): a1=" << p.a1 << " a2=" << p.a2
     << " wL=" << dump(wL) << " wR=" << dump(wR);
  throw SolverError(os.str());
}

}  // namespace detail

template <typename Scalar>
Selection<Scalar> select_parameters(const PrimitiveState<Scalar>& wL, const PrimitiveState<Scalar>& wR,
                                    const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2,
                                    const ParamSelectConfig<Scalar>& cfg = {},
                                    const RelaxSolverConfig<Scalar>& solver = {}) {
  const Scalar grow = 1 + cfg.eta;
  Selection<Scalar> sel;
  auto& p = sel.params;
  for (int k = 0; k < 2; ++k) {
    const auto& eos = phase_eos(k, eos1, eos2);
    const Scalar zL = wL.rho(k) * sound_speed(eos, wL.rho(k), wL.p(k));
    const Scalar zR = wR.rho(k) * sound_speed(eos, wR.rho(k), wR.p(k));
    p.a(k) = grow * std::max(zL, zR);
  }

  SharpQuantities<Scalar> s = sharp_quantities(wL, wR, p);
  for (int k = 0; k < 2; ++k) {
    int n = 0;
    while (!s.tau_positive(k)) {
      if (++n > cfg.max_inflations) detail::infeasible("tau#", wL, wR, p);
      p.a(k) *= grow;
      ++sel.inflations;
      s = sharp_quantities(wL, wR, p);
    }
  }

  int outer = 0;
  while (true) {
    int inner = 0;
    std::optional<WaveOrdering> ordering;
    while (!(ordering = classify_ordering(s, p))) {
      if (++inner > cfg.max_inflations) detail::infeasible("a1", wL, wR, p);
      p.a1 *= grow;
      ++sel.inflations;
      s = sharp_quantities(wL, wR, p);
    }
    if (s.tau_positive(1)) {
      const auto fs = solve_interface_star(wL, wR, p, s, *ordering, solver);
      if (condition_B(s, p, fs.u2_star())) {
        sel.solution = assemble_solution(wL, wR, eos1, eos2, p, s, *ordering, fs);
        validate_solution(sel.solution);
        return sel;
      }
    }
    if (++outer > cfg.max_inflations) detail::infeasible("a2", wL, wR, p);
    p.a2 *= grow;
    ++sel.inflations;
    s = sharp_quantities(wL, wR, p);
  }
}

// F- = G(0-) + D* 1{u2* < 0}, F+ = G(0+) - D* 1{u2* > 0}; energies always traced at 0+
template <typename Scalar>
InterfaceFluxes<Scalar> fluxes_from_solution(const RelaxRiemannSolution<Scalar>& sol) {
  const auto m = sample(sol, Scalar(0), Trace::Left);
  const auto p = sample(sol, Scalar(0), Trace::Right);
  InterfaceFluxes<Scalar> f;
  for (int k = 0; k < 2; ++k) {
    const Scalar am = m.alpha(k), ap = p.alpha(k);
    f.f_minus[mass_index(k)] = am * m.u[k] / m.tau[k];
    f.f_plus[mass_index(k)] = ap * p.u[k] / p.tau[k];
    f.f_minus[mom_index(k)] = am * (m.u[k] * m.u[k] / m.tau[k] + m.pi[k]);
    f.f_plus[mom_index(k)] = ap * (p.u[k] * p.u[k] / p.tau[k] + p.pi[k]);
    const Scalar energy = ap * (p.energy[k] / p.tau[k] + p.pi[k]) * p.u[k];
    f.f_minus[energy_index(k)] = energy;
    f.f_plus[energy_index(k)] = energy;
  }
  const auto jump = interface_jump(sol, sol.sharp, sol.params, sol.alpha1R - sol.alpha1L);
  if (sol.u2_star < Scalar(0)) f.f_minus += jump.D;
  if (sol.u2_star > Scalar(0)) f.f_plus -= jump.D;
  return f;
}

template <typename Scalar>
InterfaceFluxes<Scalar> interface_fluxes(const PrimitiveState<Scalar>& wL, const PrimitiveState<Scalar>& wR,
                                         const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2,
                                         const ParamSelectConfig<Scalar>& cfg = {},
                                         const RelaxSolverConfig<Scalar>& solver = {}) {
  return fluxes_from_solution(select_parameters(wL, wR, eos1, eos2, cfg, solver).solution);
}

template <typename Scalar>
Scalar interface_speed(const PrimitiveState<Scalar>& wL, const PrimitiveState<Scalar>& wR,
                       const RelaxParams<Scalar>& params) {
  using std::abs;
  Scalar s(0);
  for (int k = 0; k < 2; ++k) {
    s = std::max(s, abs(wL.u(k) - params.a(k) * wL.tau(k)));
    s = std::max(s, abs(wR.u(k) + params.a(k) * wR.tau(k)));
  }
  return s;
}

// params[i] belongs to the interface between cells[i] and cells[i+1]
template <typename Scalar>
Scalar cfl_dt(const std::vector<PrimitiveState<Scalar>>& cells, const std::vector<RelaxParams<Scalar>>& params,
              Scalar dx, Scalar cfl) {
  if (!(cfl > Scalar(0) && cfl < Scalar(0.5))) throw std::invalid_argument("cfl_dt: cfl must lie in (0, 0.5)");
  if (params.size() + 1 != cells.size()) throw std::invalid_argument("cfl_dt: size mismatch");
  Scalar s(0);
  for (std::size_t i = 0; i < params.size(); ++i) s = std::max(s, interface_speed(cells[i], cells[i + 1], params[i]));
  if (!(s > Scalar(0))) throw SolverError("cfl_dt: zero wave speed bound");
  return cfl * dx / s;
}

template <typename Scalar>
StepResult<Scalar> relaxation_step(const Field<Scalar>& U, const RunConfig<Scalar>& cfg, const EosParams<Scalar>& eos1,
                                   const EosParams<Scalar>& eos2,
                                   Scalar dt_max = std::numeric_limits<Scalar>::infinity()) {
  const int n = static_cast<int>(U.cols());
  const Scalar dx = cfg.dx();
  const auto w = primitives_with_ghosts(U, eos1, eos2);
  std::vector<RelaxRiemannSolution<Scalar>> sols(n + 1);
  StepResult<Scalar> res;
  auto& rec = res.record;
  rec.f_minus.resize(kNumVars, n + 1);
  rec.f_plus.resize(kNumVars, n + 1);
  rec.u_star.resize(2, n + 1);
  rec.speed.resize(1, n + 1);
  Scalar smax(0);
  for (int i = 0; i <= n; ++i) {
    auto sel = select_parameters(w[i], w[i + 1], eos1, eos2, cfg.select, cfg.solver);
    rec.speed[i] = interface_speed(w[i], w[i + 1], sel.params);
    smax = std::max(smax, rec.speed[i]);
    sols[i] = std::move(sel.solution);
  }
  if (!(smax > Scalar(0))) throw SolverError("cfl_dt: zero wave speed bound");
  rec.dt = std::min(cfg.cfl * dx / smax, dt_max);
  for (int i = 0; i <= n; ++i) {
    const auto f = fluxes_from_solution(sols[i]);
    rec.f_minus.col(i) = f.f_minus;
    rec.f_plus.col(i) = f.f_plus;
    rec.u_star(0, i) = sols[i].u1_star;
    rec.u_star(1, i) = sols[i].u2_star;
  }
  res.cells = apply_update(U, rec, dx);
  check_field(res.cells, eos1, eos2);
  return res;
}

template <typename Scalar>
StepResult<Scalar> step(const Field<Scalar>& U, const RunConfig<Scalar>& cfg, const EosParams<Scalar>& eos1,
                        const EosParams<Scalar>& eos2, Scalar dt_max = std::numeric_limits<Scalar>::infinity()) {
  if (cfg.scheme == SchemeKind::Rusanov) return rusanov_step(U, cfg, eos1, eos2, dt_max);
  return relaxation_step(U, cfg, eos1, eos2, dt_max);
}

template <typename Scalar>
struct StepLog {
  int step{0};
  Scalar t{0};
  Scalar dt{0};
  Eigen::Matrix<Scalar, 4, 1> totals;
  Scalar min_alpha1{0};
  Scalar min_alpha2{0};
  std::array<Scalar, 2> min_rho{};
  std::array<Scalar, 2> min_e{};
};

template <typename Scalar>
struct StepAudit {
  int step{0};
  Scalar t{0};
  Scalar dx{0};
  const Field<Scalar>* before{nullptr};
  const Field<Scalar>* after{nullptr};
  const StepRecord<Scalar>* record{nullptr};
};

template <typename Scalar>
struct RunResult {
  Field<Scalar> cells;
  Scalar t{0};
  std::vector<StepLog<Scalar>> log;
};

template <typename Scalar>
StepLog<Scalar> make_log(int step_index, Scalar t, Scalar dt, const Field<Scalar>& U, Scalar dx,
                         const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2) {
  StepLog<Scalar> l;
  l.step = step_index;
  l.t = t;
  l.dt = dt;
  l.totals = family_totals(U, dx);
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  l.min_alpha1 = l.min_alpha2 = inf;
  l.min_rho = {inf, inf};
  l.min_e = {inf, inf};
  for (int j = 0; j < U.cols(); ++j) {
    const auto w = to_primitive<Scalar>(U.col(j), eos1, eos2);
    l.min_alpha1 = std::min(l.min_alpha1, w.alpha1);
    l.min_alpha2 = std::min(l.min_alpha2, w.alpha(1));
    for (int k = 0; k < 2; ++k) {
      l.min_rho[k] = std::min(l.min_rho[k], w.rho(k));
      l.min_e[k] = std::min(l.min_e[k], phase_internal_energy(w, k, eos1, eos2));
    }
  }
  return l;
}

template <typename Scalar>
RunResult<Scalar> run(const Field<Scalar>& initial, const RunConfig<Scalar>& cfg, const EosParams<Scalar>& eos1,
                      const EosParams<Scalar>& eos2,
                      const std::function<void(const StepAudit<Scalar>&)>& observer = {}, bool keep_log = true) {
  cfg.validate();
  validate(eos1);
  validate(eos2);
  RunResult<Scalar> r;
  r.cells = initial;
  check_field(r.cells, eos1, eos2);
  const Scalar dx = cfg.dx();
  if (keep_log) r.log.push_back(make_log(0, Scalar(0), Scalar(0), r.cells, dx, eos1, eos2));
  int n = 0;
  while (r.t < cfg.t_final) {
    StepResult<Scalar> s;
    try {
      s = step(r.cells, cfg, eos1, eos2, cfg.t_final - r.t);
    } catch (const AdmissibilityError& e) {
      throw AdmissibilityError(e.violation, e.phase, e.where + ", step " + std::to_string(n + 1));
    }
    ++n;
    const Scalar t_next = (s.record.dt == cfg.t_final - r.t) ? cfg.t_final : r.t + s.record.dt;
    if (observer) {
      StepAudit<Scalar> a{n, t_next, dx, &r.cells, &s.cells, &s.record};
      observer(a);
    }
    r.cells = std::move(s.cells);
    r.t = t_next;
    if (keep_log) r.log.push_back(make_log(n, r.t, s.record.dt, r.cells, dx, eos1, eos2));
  }
  return r;
}

template <typename Scalar>
RunResult<Scalar> run(const PiecewiseData<Scalar>& data, const RunConfig<Scalar>& cfg, const EosParams<Scalar>& eos1,
                      const EosParams<Scalar>& eos2,
                      const std::function<void(const StepAudit<Scalar>&)>& observer = {}, bool keep_log = true) {
  cfg.validate();
  return run(project_initial(data, cfg, eos1, eos2), cfg, eos1, eos2, observer, keep_log);
}

}  // namespace bn
