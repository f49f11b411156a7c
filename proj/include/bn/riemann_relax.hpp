#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "bn/state.hpp"

namespace bn {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct RelaxParams {
  Scalar a1{1};
  Scalar a2{1};

  Scalar a(int k) const { return k == 0 ? a1 : a2; }
  Scalar& a(int k) { return k == 0 ? a1 : a2; }
};

template <typename Scalar>
struct SharpQuantities {
  std::array<Scalar, 2> u_sharp{};
  std::array<Scalar, 2> pi_sharp{};
  std::array<Scalar, 2> tau_sharp_L{};
  std::array<Scalar, 2> tau_sharp_R{};
  Scalar lambda_alpha{0};
  Scalar u_cap{0};
  Scalar alpha1L{0.5};
  Scalar alpha1R{0.5};

  bool tau_positive(int k) const { return tau_sharp_L[k] > Scalar(0) && tau_sharp_R[k] > Scalar(0); }
};

enum class WaveOrdering { Order12, Order21, Coincident };

inline const char* to_string(WaveOrdering o) {
  switch (o) {
    case WaveOrdering::Order12: return "Order12";
    case WaveOrdering::Order21: return "Order21";
    case WaveOrdering::Coincident: return "Coincident";
  }
  return "unknown";
}

template <typename Scalar>
struct RelaxSolverConfig {
  Scalar mu{0.1};
  Scalar tolerance{1e-12};
  int max_iterations{200};
};

template <typename Scalar>
PrimitiveState<Scalar> mirror(PrimitiveState<Scalar> w) {
  w.u1 = -w.u1;
  w.u2 = -w.u2;
  return w;
}

template <typename Scalar>
SharpQuantities<Scalar> sharp_quantities(const PrimitiveState<Scalar>& wL, const PrimitiveState<Scalar>& wR,
                                         const RelaxParams<Scalar>& params) {
  using std::abs;
  SharpQuantities<Scalar> s;
  for (int k = 0; k < 2; ++k) {
    const Scalar a = params.a(k);
    const Scalar uL = wL.u(k), uR = wR.u(k), pL = wL.p(k), pR = wR.p(k);
    s.u_sharp[k] = (uL + uR) / 2 - (pR - pL) / (2 * a);
    s.pi_sharp[k] = (pL + pR) / 2 - a / 2 * (uR - uL);
    s.tau_sharp_L[k] = wL.tau(k) + (s.u_sharp[k] - uL) / a;
    s.tau_sharp_R[k] = wR.tau(k) - (s.u_sharp[k] - uR) / a;
  }
  s.alpha1L = wL.alpha1;
  s.alpha1R = wR.alpha1;
  const Scalar a2L = wL.alpha(1), a2R = wR.alpha(1);
  s.lambda_alpha = (a2R - a2L) / (a2R + a2L);
  const Scalar ratio = params.a1 / params.a2;
  s.u_cap = (s.u_sharp[0] - s.u_sharp[1] - s.lambda_alpha * (s.pi_sharp[0] - s.pi_sharp[1]) / params.a2) /
            (1 + ratio * abs(s.lambda_alpha));
  return s;
}

// nullopt when condition (A) fails
template <typename Scalar>
std::optional<WaveOrdering> classify_ordering(const SharpQuantities<Scalar>& s, const RelaxParams<Scalar>& params) {
  using std::abs;
  if (!s.tau_positive(0)) return std::nullopt;
  const Scalar upper = params.a1 * s.tau_sharp_L[0];
  const Scalar lower = -params.a1 * s.tau_sharp_R[0];
  const Scalar eps = Scalar(1e-12) * params.a1 * std::max(s.tau_sharp_L[0], s.tau_sharp_R[0]);
  if (abs(s.u_cap) <= eps) return WaveOrdering::Coincident;
  if (s.u_cap > 0 && s.u_cap < upper) return WaveOrdering::Order12;
  if (s.u_cap < 0 && s.u_cap > lower) return WaveOrdering::Order21;
  return std::nullopt;
}

template <typename Scalar>
struct FixedPointContext {
  Scalar nu{1};
  Scalar m_sharp{0};
  Scalar p_sharp{0};
  Scalar mu{0.1};
  Scalar tau_ratio{1};  // tau#_1R / tau#_1L
  Scalar coupling{0};   // (a1/a2) alpha1R / (alpha2L + alpha2R)
  Scalar rhs{0};
  Scalar tolerance{1e-12};
  int max_iterations{200};

  static FixedPointContext make(const SharpQuantities<Scalar>& s, const RelaxParams<Scalar>& params,
                                const RelaxSolverConfig<Scalar>& cfg = {}) {
    FixedPointContext c;
    const Scalar a1 = params.a1, ratio = params.a1 / params.a2;
    const Scalar tL = s.tau_sharp_L[0];
    c.nu = s.alpha1L / s.alpha1R;
    c.m_sharp = (s.u_sharp[0] - s.u_sharp[1]) / (a1 * tL);
    c.p_sharp = (s.pi_sharp[0] - s.pi_sharp[1]) / (a1 * a1 * tL);
    c.mu = cfg.mu;
    c.tau_ratio = s.tau_sharp_R[0] / tL;
    c.coupling = ratio * s.alpha1R / ((1 - s.alpha1L) + (1 - s.alpha1R));
    c.rhs = c.m_sharp - ratio * s.lambda_alpha * c.p_sharp;
    c.tolerance = cfg.tolerance;
    c.max_iterations = cfg.max_iterations;
    return c;
  }

  // smaller root of M^2 - A M + 1/nu = 0, taken as (1/nu) / larger root
  Scalar M0_from_A(Scalar A) const {
    using std::sqrt;
    const Scalar disc = std::max(Scalar(0), A * A - 4 / nu);
    return (1 / nu) / ((A + sqrt(disc)) / 2);
  }

  Scalar M0(Scalar omega) const {
    if (omega >= Scalar(1)) return Scalar(0);
    const Scalar w2 = omega * omega;
    return M0_from_A((1 + w2) / (1 - w2) * (1 + 1 / nu));
  }

  Scalar Mmu(Scalar m) const {
    const Scalar g = (1 - mu) * tau_ratio;
    const Scalar d = 1 - g;
    if (d <= Scalar(0)) return std::numeric_limits<Scalar>::infinity();
    return (m + g) / (nu * d);
  }

  // M0((1-m)/(1+m)); A^2 - 4/nu factored as (A - 2/s)(A + 2/s), s = sqrt(nu), to avoid cancellation near m = 1
  Scalar M0_of_m(Scalar m) const {
    using std::sqrt;
    if (m <= Scalar(0)) return Scalar(0);
    const Scalar s = sqrt(nu);
    const Scalar A = (1 + m * m) / (2 * m) * (1 + 1 / nu);
    const Scalar gap = ((m - s) * (m - s) + (1 - m * s) * (1 - m * s)) / (2 * m * nu);
    const Scalar disc = gap * (A + 2 / s);
    return (1 / nu) / ((A + sqrt(disc)) / 2);
  }

  Scalar M(Scalar m) const { return std::min(M0_of_m(m), Mmu(m)); }

  Scalar Psi(Scalar m) const { return m + coupling * ((1 + nu) * m - 2 * nu * M(m)); }
};

template <typename Scalar>
struct StarSolution {
  Scalar m{0};
  Scalar M{0};
  Scalar u2_star{0};
  Scalar u1_star{0};
  Scalar residual{0};
  int iterations{0};
};

// Order12 only
template <typename Scalar>
StarSolution<Scalar> solve_star(const FixedPointContext<Scalar>& ctx, const SharpQuantities<Scalar>& s,
                                const RelaxParams<Scalar>& params) {
  using std::abs;
  const auto f = [&](Scalar m) { return ctx.Psi(m) - ctx.rhs; };
  const Scalar m0 = std::max(Scalar(0), std::min(ctx.m_sharp, Scalar(1)));
  Scalar lo(0), hi(1);
  Scalar best = m0, fbest = f(m0);
  int it = 0;
  if (fbest != Scalar(0)) {
    if (fbest > 0)
      hi = m0;
    else
      lo = m0;
    const Scalar flo = f(lo), fhi = f(hi);
    if (!(flo <= 0 && fhi >= 0)) throw SolverError("fixed point bracket failure");
    if (abs(flo) < abs(fbest)) best = lo, fbest = flo;
    if (abs(fhi) < abs(fbest)) best = hi, fbest = fhi;
    for (; it < ctx.max_iterations; ++it) {
      if (hi - lo <= ctx.tolerance && abs(fbest) <= ctx.tolerance) break;
      const Scalar mid = (lo + hi) / 2;
      if (mid <= lo || mid >= hi) break;
      const Scalar fm = f(mid);
      if (abs(fm) < abs(fbest)) best = mid, fbest = fm;
      if (fm > 0)
        hi = mid;
      else if (fm < 0)
        lo = mid;
      else
        break;
    }
  }
  StarSolution<Scalar> r;
  r.m = best;
  r.M = ctx.M(best);
  r.residual = abs(fbest);
  r.iterations = it;
  const Scalar tL = s.tau_sharp_L[0], a1 = params.a1;
  r.u2_star = s.u_sharp[0] - a1 * tL * best;
  const Scalar tau_plus = tL * ((1 + best) / (1 + ctx.nu * r.M));
  r.u1_star = r.u2_star + ctx.nu * a1 * r.M * tau_plus;
  return r;
}

// star values in the frame where the solution is built (mirrored for Order21)
template <typename Scalar>
struct FrameStar {
  StarSolution<Scalar> star;
  SharpQuantities<Scalar> frame_sharp;
  bool mirrored{false};

  Scalar u2_star() const { return mirrored ? -star.u2_star : star.u2_star; }
  Scalar u1_star() const { return mirrored ? -star.u1_star : star.u1_star; }
};

template <typename Scalar>
FrameStar<Scalar> solve_interface_star(const PrimitiveState<Scalar>& wL, const PrimitiveState<Scalar>& wR,
                                       const RelaxParams<Scalar>& params, const SharpQuantities<Scalar>& s,
                                       WaveOrdering ordering, const RelaxSolverConfig<Scalar>& cfg = {}) {
  FrameStar<Scalar> fs;
  switch (ordering) {
    case WaveOrdering::Coincident:
      fs.frame_sharp = s;
      fs.star.u2_star = fs.star.u1_star = s.u_sharp[0];
      break;
    case WaveOrdering::Order12:
      fs.frame_sharp = s;
      break;
    case WaveOrdering::Order21:
      fs.mirrored = true;
      fs.frame_sharp = sharp_quantities(mirror(wR), mirror(wL), params);
      break;
  }
  if (ordering != WaveOrdering::Coincident) {
    const auto& f = fs.frame_sharp;
    const auto ctx = FixedPointContext<Scalar>::make(f, params, cfg);
    if (f.alpha1L == f.alpha1R) {
      // no phase-fraction jump: the phases decouple into two single-phase solutions
      auto& st = fs.star;
      st.m = st.M = ctx.m_sharp;
      st.u2_star = f.u_sharp[1];
      st.u1_star = f.u_sharp[0];
      using std::abs;
      st.residual = abs(ctx.Psi(st.m) - ctx.rhs);
    } else {
      fs.star = solve_star(ctx, f, params);
    }
  }
  return fs;
}

template <typename Scalar>
bool condition_B(const SharpQuantities<Scalar>& s, const RelaxParams<Scalar>& params, Scalar u2_star) {
  return s.u_sharp[1] - params.a2 * s.tau_sharp_L[1] < u2_star &&
         u2_star < s.u_sharp[1] + params.a2 * s.tau_sharp_R[1];
}

template <typename Scalar>
struct RelaxPhaseState {
  Scalar tau{1};
  Scalar u{0};
  Scalar pi{0};
  Scalar energy{0};  // relaxation total energy
  int side{0};       // 0: T and s from the left state, 1: from the right state
};

// phase 1 carries four waves, phase 2 three
template <typename Scalar>
struct PhaseFan {
  int waves{0};
  std::array<Scalar, 4> speed{};
  std::array<RelaxPhaseState<Scalar>, 5> state{};
};

template <typename Scalar>
struct RelaxRiemannSolution {
  WaveOrdering ordering{WaveOrdering::Coincident};
  Scalar u1_star{0};
  Scalar u2_star{0};
  std::optional<Scalar> pi1_star;
  Scalar m_star{0};
  Scalar alpha1L{0.5};
  Scalar alpha1R{0.5};
  RelaxParams<Scalar> params;
  SharpQuantities<Scalar> sharp;
  std::array<PhaseFan<Scalar>, 2> fan;

  // phase-1 left acoustic, u1*, phase-1 right acoustic, then the same for phase 2
  std::array<Scalar, 6> wave_speeds() const {
    const auto& f1 = fan[0];
    const auto& f2 = fan[1];
    return {f1.speed[0], u1_star, f1.speed[3], f2.speed[0], u2_star, f2.speed[2]};
  }
};

template <typename Scalar>
struct RelaxSample {
  Scalar alpha1{0.5};
  std::array<Scalar, 2> tau{};
  std::array<Scalar, 2> u{};
  std::array<Scalar, 2> pi{};
  std::array<Scalar, 2> energy{};
  std::array<int, 2> side{};

  Scalar alpha(int k) const { return k == 0 ? alpha1 : Scalar(1) - alpha1; }
};

enum class Trace { Left, Right };

template <typename Scalar>
RelaxSample<Scalar> sample(const RelaxRiemannSolution<Scalar>& sol, Scalar xi, Trace trace = Trace::Right) {
  const auto past = [&](Scalar speed) { return trace == Trace::Right ? speed <= xi : speed < xi; };
  RelaxSample<Scalar> r;
  for (int k = 0; k < 2; ++k) {
    const auto& f = sol.fan[k];
    int i = 0;
    while (i < f.waves && past(f.speed[i])) ++i;
    const auto& st = f.state[i];
    r.tau[k] = st.tau;
    r.u[k] = st.u;
    r.pi[k] = st.pi;
    r.energy[k] = st.energy;
    r.side[k] = st.side;
  }
  r.alpha1 = past(sol.u2_star) ? sol.alpha1R : sol.alpha1L;
  return r;
}

namespace detail {

template <typename Scalar>
RelaxPhaseState<Scalar> edge_state(const PrimitiveState<Scalar>& w, int k, Scalar e, int side) {
  return {w.tau(k), w.u(k), w.p(k), e + w.u(k) * w.u(k) / 2, side};
}

template <typename Scalar>
RelaxPhaseState<Scalar> relaxed_state(Scalar tau, Scalar u, Scalar a, const PrimitiveState<Scalar>& ref, int k,
                                      Scalar e_ref, int side) {
  const Scalar p_ref = ref.p(k);
  const Scalar pi = p_ref + a * a * (ref.tau(k) - tau);
  const Scalar energy = u * u / 2 + e_ref + (pi * pi - p_ref * p_ref) / (2 * a * a);
  return {tau, u, pi, energy, side};
}

// Order12 construction; Coincident is its m = 0 limit
template <typename Scalar>
RelaxRiemannSolution<Scalar> assemble_order12(const PrimitiveState<Scalar>& wL, const PrimitiveState<Scalar>& wR,
                                              const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2,
                                              const RelaxParams<Scalar>& params,
                                              const SharpQuantities<Scalar>& s, const StarSolution<Scalar>& st,
                                              WaveOrdering ordering) {
  RelaxRiemannSolution<Scalar> sol;
  sol.ordering = ordering;
  sol.params = params;
  sol.sharp = s;
  sol.alpha1L = wL.alpha1;
  sol.alpha1R = wR.alpha1;
  sol.m_star = st.m;
  sol.u2_star = st.u2_star;
  sol.u1_star = st.u1_star;

  std::array<Scalar, 2> eL{}, eR{};
  for (int k = 0; k < 2; ++k) {
    eL[k] = phase_internal_energy(wL, k, eos1, eos2);
    eR[k] = phase_internal_energy(wR, k, eos1, eos2);
  }

  {
    const Scalar a = params.a1, m = st.m, M = st.M;
    const Scalar nu = wL.alpha1 / wR.alpha1;
    const Scalar tL = s.tau_sharp_L[0], tR = s.tau_sharp_R[0];
    const Scalar tau_minus = tL * ((1 - m) / (1 - M));
    const Scalar tau_plus = tL * ((1 + m) / (1 + nu * M));
    const Scalar tau_rstar = tR + tL * (m - nu * M) / (1 + nu * M);
    const Scalar u_minus = st.u2_star + a * M * tau_minus;
    auto& f = sol.fan[0];
    f.waves = 4;
    f.speed = {wL.u1 - a * wL.tau(0), st.u2_star, st.u1_star, wR.u1 + a * wR.tau(0)};
    f.state[0] = edge_state(wL, 0, eL[0], 0);
    f.state[1] = relaxed_state(tau_minus, u_minus, a, wL, 0, eL[0], 0);
    f.state[2] = relaxed_state(tau_plus, st.u1_star, a, wL, 0, eL[0], 0);
    f.state[3] = relaxed_state(tau_rstar, st.u1_star, a, wR, 0, eR[0], 1);
    f.state[4] = edge_state(wR, 0, eR[0], 1);
  }
  {
    const Scalar a = params.a2, u = st.u2_star;
    const Scalar tau_lstar = wL.tau(1) + (u - wL.u2) / a;
    const Scalar tau_rstar = wR.tau(1) - (u - wR.u2) / a;
    auto& f = sol.fan[1];
    f.waves = 3;
    f.speed = {wL.u2 - a * wL.tau(1), u, wR.u2 + a * wR.tau(1), Scalar(0)};
    f.state[0] = edge_state(wL, 1, eL[1], 0);
    f.state[1] = relaxed_state(tau_lstar, u, a, wL, 1, eL[1], 0);
    f.state[2] = relaxed_state(tau_rstar, u, a, wR, 1, eR[1], 1);
    f.state[3] = edge_state(wR, 1, eR[1], 1);
  }
  return sol;
}

template <typename Scalar>
PhaseFan<Scalar> mirror_fan(const PhaseFan<Scalar>& g) {
  PhaseFan<Scalar> f;
  const int n = g.waves;
  f.waves = n;
  for (int i = 0; i < n; ++i) f.speed[i] = -g.speed[n - 1 - i];
  for (int i = 0; i <= n; ++i) {
    f.state[i] = g.state[n - i];
    f.state[i].u = -f.state[i].u;
    f.state[i].side = 1 - f.state[i].side;
  }
  return f;
}

}  // namespace detail

template <typename Scalar>
std::optional<Scalar> coupling_pressure(const SharpQuantities<Scalar>& s, const RelaxParams<Scalar>& params,
                                        Scalar u2_star) {
  const Scalar dalpha = s.alpha1R - s.alpha1L;
  if (dalpha == Scalar(0)) return std::nullopt;
  const Scalar sum2 = (1 - s.alpha1R) + (1 - s.alpha1L);
  return s.pi_sharp[1] - params.a2 * sum2 / dalpha * (u2_star - s.u_sharp[1]);
}

// throws SolverError naming the first violated property
template <typename Scalar>
void validate_solution(const RelaxRiemannSolution<Scalar>& sol) {
  for (int k = 0; k < 2; ++k) {
    const auto& f = sol.fan[k];
    for (int i = 0; i <= f.waves; ++i)
      if (!(f.state[i].tau > Scalar(0)))
        throw SolverError("positivity failure: phase " + std::to_string(k + 1) + " region " + std::to_string(i));
  }
  const auto& f1 = sol.fan[0];
  if (!(f1.speed[0] < sol.u2_star && sol.u2_star < f1.speed[3]))
    throw SolverError("subsonic ordering violated");
  if (!condition_B(sol.sharp, sol.params, sol.u2_star)) throw SolverError("condition (B) violated");
}

template <typename Scalar>
RelaxRiemannSolution<Scalar> assemble_solution(const PrimitiveState<Scalar>& wL, const PrimitiveState<Scalar>& wR,
                                               const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2,
                                               const RelaxParams<Scalar>& params,
                                               const SharpQuantities<Scalar>& s, WaveOrdering ordering,
                                               const FrameStar<Scalar>& fs) {
  RelaxRiemannSolution<Scalar> sol;
  if (fs.mirrored) {
    const auto g = detail::assemble_order12(mirror(wR), mirror(wL), eos1, eos2, params, fs.frame_sharp, fs.star,
                                            WaveOrdering::Order12);
    sol = g;
    sol.sharp = s;
    sol.alpha1L = wL.alpha1;
    sol.alpha1R = wR.alpha1;
    sol.u1_star = -g.u1_star;
    sol.u2_star = -g.u2_star;
    for (int k = 0; k < 2; ++k) sol.fan[k] = detail::mirror_fan(g.fan[k]);
  } else {
    sol = detail::assemble_order12(wL, wR, eos1, eos2, params, s, fs.star, ordering);
  }
  sol.ordering = ordering;
  sol.pi1_star = coupling_pressure(s, params, sol.u2_star);
  return sol;
}

template <typename Scalar>
RelaxRiemannSolution<Scalar> build_solution(const PrimitiveState<Scalar>& wL, const PrimitiveState<Scalar>& wR,
                                            const EosParams<Scalar>& eos1, const EosParams<Scalar>& eos2,
                                            const RelaxParams<Scalar>& params,
                                            const RelaxSolverConfig<Scalar>& cfg = {}) {
  const auto s = sharp_quantities(wL, wR, params);
  if (!s.tau_positive(0) || !s.tau_positive(1)) throw SolverError("positivity failure: tau# <= 0");
  const auto ordering = classify_ordering(s, params);
  if (!ordering) throw SolverError("condition (A) violated");
  const auto fs = solve_interface_star(wL, wR, params, s, *ordering, cfg);
  auto sol = assemble_solution(wL, wR, eos1, eos2, params, s, *ordering, fs);
  validate_solution(sol);
  return sol;
}

template <typename Scalar>
struct InterfaceJump {
  Scalar u2_star{0};
  std::optional<Scalar> pi1_star;
  Vector7<Scalar> D{Vector7<Scalar>::Zero()};
};

// D* = dAlpha (u2*, 0, 0, -pi1*, pi1*, -u2* pi1*, u2* pi1*)
template <typename Scalar>
InterfaceJump<Scalar> interface_jump(const RelaxRiemannSolution<Scalar>& sol, const SharpQuantities<Scalar>& s,
                                     const RelaxParams<Scalar>& params, Scalar dalpha) {
  InterfaceJump<Scalar> j;
  j.u2_star = sol.u2_star;
  if (dalpha == Scalar(0)) return j;
  j.pi1_star = coupling_pressure(s, params, sol.u2_star);
  const Scalar u = sol.u2_star, pi = *j.pi1_star;
  j.D << u, 0, 0, -pi, pi, -u * pi, u * pi;
  j.D *= dalpha;
  return j;
}

}  // namespace bn
