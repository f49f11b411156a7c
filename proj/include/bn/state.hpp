#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "bn/eos.hpp"

namespace bn {

// U = (alpha1, a1 r1, a2 r2, a1 r1 u1, a2 r2 u2, a1 r1 E1, a2 r2 E2)
enum Var : int { kAlpha1 = 0, kMass1, kMass2, kMom1, kMom2, kEnergy1, kEnergy2 };

inline constexpr int kNumVars = 7;

inline constexpr int mass_index(int k) { return kMass1 + k; }
inline constexpr int mom_index(int k) { return kMom1 + k; }
inline constexpr int energy_index(int k) { return kEnergy1 + k; }

template <typename Scalar>
using Vector7 = Eigen::Matrix<Scalar, kNumVars, 1>;

template <typename Scalar>
using ConservedState = Vector7<Scalar>;

// one column per cell
template <typename Scalar>
using Field = Eigen::Matrix<Scalar, kNumVars, Eigen::Dynamic>;

template <typename Scalar>
struct PrimitiveState {
  Scalar alpha1{0.5};
  Scalar rho1{1}, u1{0}, p1{1};
  Scalar rho2{1}, u2{0}, p2{1};

  Scalar alpha(int k) const { return k == 0 ? alpha1 : Scalar(1) - alpha1; }
  Scalar rho(int k) const { return k == 0 ? rho1 : rho2; }
  Scalar u(int k) const { return k == 0 ? u1 : u2; }
  Scalar p(int k) const { return k == 0 ? p1 : p2; }
  Scalar tau(int k) const { return Scalar(1) / rho(k); }

  Scalar& rho(int k) { return k == 0 ? rho1 : rho2; }
  Scalar& u(int k) { return k == 0 ? u1 : u2; }
  Scalar& p(int k) { return k == 0 ? p1 : p2; }

  friend bool operator==(const PrimitiveState&, const PrimitiveState&) = default;
};

enum class Violation { PhaseFraction, PartialMass, InternalEnergy, Hyperbolicity, Density, SoundSpeed };

inline const char* to_string(Violation v) {
  switch (v) {
    case Violation::PhaseFraction: return "phase fraction outside (0,1)";
    case Violation::PartialMass: return "non-positive partial mass";
    case Violation::InternalEnergy: return "non-positive partial internal energy";
    case Violation::Hyperbolicity: return "rho e <= p_inf";
    case Violation::Density: return "non-positive density";
    case Violation::SoundSpeed: return "p + p_inf <= 0";
  }
  return "unknown";
}

struct AdmissibilityError : std::runtime_error {
  Violation violation;
  int phase;  // 1 or 2, 0 for alpha
  std::string where;
  AdmissibilityError(Violation v, int k, const std::string& at = {})
      : std::runtime_error(message(v, k, at)), violation(v), phase(k), where(at) {}

  static std::string message(Violation v, int k, const std::string& where) {
    std::string s = "admissibility: ";
    s += to_string(v);
    if (k > 0) s += " (phase " + std::to_string(k) + ")";
    if (!where.empty()) s += " at " + where;
    return s;
  }
};

template <typename Scalar>
const EosParams<Scalar>& phase_eos(int k, const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2) {
  return k == 0 ? eos1 : eos2;
}

template <typename Scalar>
void check_admissible(const ConservedState<Scalar>& U, const EosParams<Scalar>& eos1,
                      const EosParams<Scalar>& eos2) {
  const Scalar a1 = U[kAlpha1];
  if (!(a1 > Scalar(0) && a1 < Scalar(1))) throw AdmissibilityError(Violation::PhaseFraction, 0);
  for (int k = 0; k < 2; ++k) {
    const Scalar m = U[mass_index(k)];
    if (!(m > Scalar(0))) throw AdmissibilityError(Violation::PartialMass, k + 1);
    const Scalar q = U[mom_index(k)];
    const Scalar rho_e_alpha = U[energy_index(k)] - q * q / (2 * m);
    if (!(rho_e_alpha > Scalar(0))) throw AdmissibilityError(Violation::InternalEnergy, k + 1);
    const Scalar alpha = k == 0 ? a1 : Scalar(1) - a1;
    if (!(rho_e_alpha > alpha * phase_eos(k, eos1, eos2).p_inf))
      throw AdmissibilityError(Violation::Hyperbolicity, k + 1);
  }
}

template <typename Scalar>
void check_admissible(const PrimitiveState<Scalar>& w, const EosParams<Scalar>& eos1,
                      const EosParams<Scalar>& eos2) {
  if (!(w.alpha1 > Scalar(0) && w.alpha1 < Scalar(1))) throw AdmissibilityError(Violation::PhaseFraction, 0);
  for (int k = 0; k < 2; ++k) {
    if (!(w.rho(k) > Scalar(0))) throw AdmissibilityError(Violation::Density, k + 1);
    if (!(w.p(k) + phase_eos(k, eos1, eos2).p_inf > Scalar(0)))
      throw AdmissibilityError(Violation::SoundSpeed, k + 1);
  }
}

template <typename Scalar>
PrimitiveState<Scalar> to_primitive(const ConservedState<Scalar>& U, const EosParams<Scalar>& eos1,
                                    const EosParams<Scalar>& eos2) {
  check_admissible(U, eos1, eos2);
  PrimitiveState<Scalar> w;
  w.alpha1 = U[kAlpha1];
  for (int k = 0; k < 2; ++k) {
    const Scalar m = U[mass_index(k)];
    const Scalar v = U[mom_index(k)] / m;
    w.rho(k) = m / w.alpha(k);
    w.u(k) = v;
    const Scalar e = U[energy_index(k)] / m - v * v / 2;
    w.p(k) = pressure(phase_eos(k, eos1, eos2), w.rho(k), e);
  }
  return w;
}

template <typename Scalar>
ConservedState<Scalar> to_conserved(const PrimitiveState<Scalar>& w, const EosParams<Scalar>& eos1,
                                    const EosParams<Scalar>& eos2) {
  check_admissible(w, eos1, eos2);
  ConservedState<Scalar> U;
  U[kAlpha1] = w.alpha1;
  for (int k = 0; k < 2; ++k) {
    const Scalar m = w.alpha(k) * w.rho(k);
    const Scalar e = internal_energy(phase_eos(k, eos1, eos2), w.rho(k), w.p(k));
    U[mass_index(k)] = m;
    U[mom_index(k)] = m * w.u(k);
    U[energy_index(k)] = m * (e + w.u(k) * w.u(k) / 2);
  }
  return U;
}

template <typename Scalar>
Scalar phase_internal_energy(const PrimitiveState<Scalar>& w, int k, const EosParams<Scalar>& eos1,
                             const EosParams<Scalar>& eos2) {
  return internal_energy(phase_eos(k, eos1, eos2), w.rho(k), w.p(k));
}

template <typename Scalar>
Scalar phase_entropy(const PrimitiveState<Scalar>& w, int k, const EosParams<Scalar>& eos1,
                     const EosParams<Scalar>& eos2) {
  const auto& eos = phase_eos(k, eos1, eos2);
  return entropy(eos, w.rho(k), internal_energy(eos, w.rho(k), w.p(k)));
}

template <typename Scalar>
Scalar max_abs_eigenvalue(const PrimitiveState<Scalar>& w, const EosParams<Scalar>& eos1,
                          const EosParams<Scalar>& eos2) {
  using std::abs;
  Scalar s(0);
  for (int k = 0; k < 2; ++k)
    s = std::max(s, abs(w.u(k)) + sound_speed(phase_eos(k, eos1, eos2), w.rho(k), w.p(k)));
  return s;
}

// conservative part F(U), with first component 0
template <typename Scalar>
Vector7<Scalar> physical_flux(const PrimitiveState<Scalar>& w, const EosParams<Scalar>& eos1,
                              const EosParams<Scalar>& eos2) {
  Vector7<Scalar> f;
  f[kAlpha1] = 0;
  for (int k = 0; k < 2; ++k) {
    const Scalar a = w.alpha(k), r = w.rho(k), v = w.u(k), p = w.p(k);
    const Scalar E = phase_internal_energy(w, k, eos1, eos2) + v * v / 2;
    f[mass_index(k)] = a * r * v;
    f[mom_index(k)] = a * (r * v * v + p);
    f[energy_index(k)] = a * (r * E + p) * v;
  }
  return f;
}

// C(U) d_x U = nonconservative_vector(w) d_x alpha1
template <typename Scalar>
Vector7<Scalar> nonconservative_vector(const PrimitiveState<Scalar>& w) {
  Vector7<Scalar> c;
  c << w.u2, 0, 0, -w.p1, w.p1, -w.p1 * w.u2, w.p1 * w.u2;
  return c;
}

}  // namespace bn
