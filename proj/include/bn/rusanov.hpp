#pragma once

#include <algorithm>
#include <limits>

#include "bn/finite_volume.hpp"

namespace bn {

template <typename Scalar>
struct RusanovFlux {
  Vector7<Scalar> flux;
  Scalar r{0};
};

template <typename Scalar>
RusanovFlux<Scalar> rusanov_fluxes(const PrimitiveState<Scalar>& wL, const PrimitiveState<Scalar>& wR,
                                   const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2) {
  RusanovFlux<Scalar> f;
  f.r = std::max(max_abs_eigenvalue(wL, eos1, eos2), max_abs_eigenvalue(wR, eos1, eos2));
  const ConservedState<Scalar> UL = to_conserved(wL, eos1, eos2);
  const ConservedState<Scalar> UR = to_conserved(wR, eos1, eos2);
  f.flux = (physical_flux(wL, eos1, eos2) + physical_flux(wR, eos1, eos2)) / 2 - f.r / 2 * (UR - UL);
  return f;
}

template <typename Scalar>
RusanovFlux<Scalar> rusanov_fluxes(const ConservedState<Scalar>& uL, const ConservedState<Scalar>& uR,
                                   const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2) {
  return rusanov_fluxes(to_primitive(uL, eos1, eos2), to_primitive(uR, eos1, eos2), eos1, eos2);
}

// centred C(U_j) (alpha_{j+1} - alpha_{j-1}) / 2, split half to each face of cell j
template <typename Scalar>
InterfaceFluxes<Scalar> rusanov_interface_fluxes(const PrimitiveState<Scalar>& wL, const PrimitiveState<Scalar>& wR,
                                                 const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2) {
  const auto f = rusanov_fluxes(wL, wR, eos1, eos2);
  const Scalar dalpha = wR.alpha1 - wL.alpha1;
  InterfaceFluxes<Scalar> r;
  r.f_minus = f.flux + dalpha / 2 * nonconservative_vector(wL);
  r.f_plus = f.flux - dalpha / 2 * nonconservative_vector(wR);
  return r;
}

template <typename Scalar>
StepResult<Scalar> rusanov_step(const Field<Scalar>& U, const RunConfig<Scalar>& cfg, const EosParams<Scalar>& eos1,
                                const EosParams<Scalar>& eos2,
                                Scalar dt_max = std::numeric_limits<Scalar>::infinity()) {
  const int n = static_cast<int>(U.cols());
  const Scalar dx = cfg.dx();
  const auto w = primitives_with_ghosts(U, eos1, eos2);
  StepResult<Scalar> res;
  auto& rec = res.record;
  rec.f_minus.resize(kNumVars, n + 1);
  rec.f_plus.resize(kNumVars, n + 1);
  rec.u_star.setZero(2, n + 1);
  rec.speed.resize(1, n + 1);
  Scalar smax(0);
  for (int i = 0; i <= n; ++i) {
    const auto f = rusanov_interface_fluxes(w[i], w[i + 1], eos1, eos2);
    rec.f_minus.col(i) = f.f_minus;
    rec.f_plus.col(i) = f.f_plus;
    rec.speed[i] = std::max(max_abs_eigenvalue(w[i], eos1, eos2), max_abs_eigenvalue(w[i + 1], eos1, eos2));
    smax = std::max(smax, rec.speed[i]);
  }
  if (!(smax > Scalar(0))) throw SolverError("rusanov: zero wave speed bound");
  rec.dt = std::min(cfg.cfl * dx / smax, dt_max);
  res.cells = apply_update(U, rec, dx);
  check_field(res.cells, eos1, eos2);
  return res;
}

}  // namespace bn
