#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bn/riemann_relax.hpp"
#include "bn/state.hpp"

namespace bn {

enum class SchemeKind { Relaxation, Rusanov };

inline const char* to_string(SchemeKind s) { return s == SchemeKind::Relaxation ? "relax" : "rusanov"; }

template <typename Scalar>
struct ParamSelectConfig {
  Scalar eta{0.01};
  int max_inflations{1000};
};

template <typename Scalar>
struct RunConfig {
  int cells{100};
  Scalar x_min{0};
  Scalar x_max{1};
  Scalar cfl{0.45};
  Scalar t_final{0};
  SchemeKind scheme{SchemeKind::Relaxation};
  ParamSelectConfig<Scalar> select;
  RelaxSolverConfig<Scalar> solver;

  Scalar dx() const { return (x_max - x_min) / cells; }
  Scalar center(int j) const { return x_min + (j + Scalar(0.5)) * dx(); }

  void validate() const {
    if (cells < 2) throw std::invalid_argument("run config: cells must be >= 2");
    if (!(x_max > x_min)) throw std::invalid_argument("run config: empty domain");
    if (!(cfl > Scalar(0) && cfl < Scalar(0.5))) throw std::invalid_argument("run config: cfl must lie in (0, 0.5)");
    if (!(t_final >= Scalar(0))) throw std::invalid_argument("run config: negative t_final");
    if (!(select.eta > Scalar(0) && select.eta < Scalar(1)))
      throw std::invalid_argument("run config: eta must lie in (0, 1)");
    if (select.max_inflations < 1) throw std::invalid_argument("run config: max_inflations must be >= 1");
    if (!(solver.mu > Scalar(0) && solver.mu < Scalar(1))) throw std::invalid_argument("run config: mu must lie in (0, 1)");
  }
};

template <typename Scalar>
struct InterfaceFluxes {
  Vector7<Scalar> f_minus{Vector7<Scalar>::Zero()};
  Vector7<Scalar> f_plus{Vector7<Scalar>::Zero()};
};

// interface i sits between cells i-1 and i; i = 0 and i = N are the boundaries
template <typename Scalar>
struct StepRecord {
  Scalar dt{0};
  Field<Scalar> f_minus;
  Field<Scalar> f_plus;
  Eigen::Matrix<Scalar, 2, Eigen::Dynamic> u_star;  // relaxation only
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> speed;   // wave-speed bound per interface
};

template <typename Scalar>
struct StepResult {
  Field<Scalar> cells;
  StepRecord<Scalar> record;
};

// (alpha1 rho1, alpha2 rho2, total momentum, total energy)
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> family(const Vector7<Scalar>& v) {
  Eigen::Matrix<Scalar, 4, 1> f;
  f << v[kMass1], v[kMass2], v[kMom1] + v[kMom2], v[kEnergy1] + v[kEnergy2];
  return f;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> family_totals(const Field<Scalar>& U, Scalar dx) {
  const Vector7<Scalar> sum = U.rowwise().sum() * dx;
  return family<Scalar>(sum);
}

// transmissive ghosts at both ends
template <typename Scalar>
std::vector<PrimitiveState<Scalar>> primitives_with_ghosts(const Field<Scalar>& U, const EosParams<Scalar>& eos1,
                                                           const EosParams<Scalar>& eos2) {
  const int n = static_cast<int>(U.cols());
  std::vector<PrimitiveState<Scalar>> w(n + 2);
  for (int j = 0; j < n; ++j) {
    try {
      w[j + 1] = to_primitive<Scalar>(U.col(j), eos1, eos2);
    } catch (const AdmissibilityError& e) {
      throw AdmissibilityError(e.violation, e.phase, "cell " + std::to_string(j));
    }
  }
  w[0] = w[1];
  w[n + 1] = w[n];
  return w;
}

template <typename Scalar>
Field<Scalar> apply_update(const Field<Scalar>& U, const StepRecord<Scalar>& rec, Scalar dx) {
  const auto n = U.cols();
  Field<Scalar> next = U - (rec.dt / dx) * (rec.f_minus.rightCols(n) - rec.f_plus.leftCols(n));
  return next;
}

template <typename Scalar>
void check_field(const Field<Scalar>& U, const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2) {
  for (int j = 0; j < U.cols(); ++j) {
    try {
      check_admissible<Scalar>(U.col(j), eos1, eos2);
    } catch (const AdmissibilityError& e) {
      throw AdmissibilityError(e.violation, e.phase, "cell " + std::to_string(j));
    }
  }
}

template <typename Scalar>
struct PiecewiseData {
  PrimitiveState<Scalar> left;
  PrimitiveState<Scalar> right;
  Scalar x0{0};
};

// exact cell averages of the step data
template <typename Scalar>
Field<Scalar> project_initial(const PiecewiseData<Scalar>& data, const RunConfig<Scalar>& cfg,
                              const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2) {
  const ConservedState<Scalar> UL = to_conserved(data.left, eos1, eos2);
  const ConservedState<Scalar> UR = to_conserved(data.right, eos1, eos2);
  const Scalar dx = cfg.dx();
  Field<Scalar> U(kNumVars, cfg.cells);
  for (int j = 0; j < cfg.cells; ++j) {
    const Scalar xl = cfg.x_min + j * dx, xr = xl + dx;
    if (xr <= data.x0)
      U.col(j) = UL;
    else if (xl >= data.x0)
      U.col(j) = UR;
    else {
      const Scalar theta = (data.x0 - xl) / dx;
      U.col(j) = theta * UL + (1 - theta) * UR;
    }
  }
  return U;
}

}  // namespace bn
