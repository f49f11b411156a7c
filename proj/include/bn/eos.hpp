#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace bn {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// stiffened gas p = (gamma-1) rho e - gamma p_inf; ideal gas when p_inf = 0
template <typename Scalar>
struct EosParams {
  Scalar gamma{1.4};
  Scalar p_inf{0};
  Scalar cv{1};
  Scalar s_ref{0};
};

template <typename Scalar>
void validate(const EosParams<Scalar>& eos) {
  if (!(eos.gamma > Scalar(1))) throw DomainError("eos: gamma must be > 1");
  if (!(eos.p_inf >= Scalar(0))) throw DomainError("eos: p_inf must be >= 0");
  if (!(eos.cv > Scalar(0))) throw DomainError("eos: cv must be > 0");
}

namespace detail {
template <typename Scalar>
void require_density(Scalar rho, const char* op) {
  if (!(rho > Scalar(0))) throw DomainError(std::string(op) + ": density must be positive");
}
template <typename Scalar>
Scalar excess_energy(const EosParams<Scalar>& eos, Scalar rho, Scalar e, const char* op) {
  require_density(rho, op);
  const Scalar x = rho * e - eos.p_inf;
  if (!(x > Scalar(0))) throw DomainError(std::string(op) + ": rho e <= p_inf");
  return x;
}
}  // namespace detail

template <typename Scalar>
Scalar pressure(const EosParams<Scalar>& eos, Scalar rho, Scalar e) {
  detail::require_density(rho, "pressure");
  return (eos.gamma - 1) * rho * e - eos.gamma * eos.p_inf;
}

template <typename Scalar>
Scalar internal_energy(const EosParams<Scalar>& eos, Scalar rho, Scalar p) {
  detail::require_density(rho, "internal_energy");
  return (p + eos.gamma * eos.p_inf) / ((eos.gamma - 1) * rho);
}

template <typename Scalar>
Scalar sound_speed(const EosParams<Scalar>& eos, Scalar rho, Scalar p) {
  detail::require_density(rho, "sound_speed");
  const Scalar c2 = eos.gamma * (p + eos.p_inf) / rho;
  if (!(c2 > Scalar(0))) throw DomainError("sound_speed: complex sound speed (p + p_inf <= 0)");
  using std::sqrt;
  return sqrt(c2);
}

// mathematical entropy, decreasing in e
template <typename Scalar>
Scalar entropy(const EosParams<Scalar>& eos, Scalar rho, Scalar e) {
  using std::log;
  const Scalar x = detail::excess_energy(eos, rho, e, "entropy");
  return eos.s_ref - eos.cv * (log(x) - eos.gamma * log(rho));
}

template <typename Scalar>
Scalar temperature(const EosParams<Scalar>& eos, Scalar rho, Scalar e) {
  const Scalar x = detail::excess_energy(eos, rho, e, "temperature");
  return x / (eos.cv * rho);
}

}  // namespace bn
