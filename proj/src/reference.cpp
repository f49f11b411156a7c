#include "bn/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bn {

namespace {

double fan_sound_speed(const EosParams<double>& eos, const PhaseRegion& r) {
  return sound_speed(eos, r.rho, r.p);
}

PhaseRegion R(const char* name, double rho, double u, double p, bool absent = false) {
  return {name, rho, u, p, absent};
}

using T = WaveType;

}  // namespace

std::vector<ExactWave> ExactWaveFan::ordered_waves() const {
  std::vector<ExactWave> all;
  for (int k = 0; k < 2; ++k) {
    for (const auto& w : waves[k]) {
      if (w.type == WaveType::Coupling && k == 1) continue;
      all.push_back(w);
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const ExactWave& a, const ExactWave& b) { return a.lo < b.lo; });
  return all;
}

ExactWaveFan make_fan(const std::array<std::vector<PhaseRegion>, 2>& regions,
                      const std::array<std::vector<WaveType>, 2>& types, double alpha1L, double alpha1R,
                      const EosParams<double>& eos1, const EosParams<double>& eos2) {
  ExactWaveFan fan;
  fan.regions = regions;
  fan.alpha1L = alpha1L;
  fan.alpha1R = alpha1R;
  bool found = false;
  for (std::size_t i = 0; i < types[1].size(); ++i) {
    if (types[1][i] == WaveType::Coupling) {
      fan.coupling_speed = regions[1][i + 1].u;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("make_fan: phase 2 has no coupling wave");
  for (int k = 0; k < 2; ++k) {
    const auto& eos = k == 0 ? eos1 : eos2;
    if (types[k].size() + 1 != regions[k].size()) throw std::invalid_argument("make_fan: region/wave count mismatch");
    for (std::size_t i = 0; i < types[k].size(); ++i) {
      const PhaseRegion& a = regions[k][i];
      const PhaseRegion& b = regions[k][i + 1];
      ExactWave w;
      w.type = types[k][i];
      w.phase = k + 1;
      w.left = a;
      w.right = b;
      switch (w.type) {
        case WaveType::Shock:
          w.lo = w.hi = (b.rho * b.u - a.rho * a.u) / (b.rho - a.rho);
          w.family = w.lo < 0.5 * (a.u + b.u) ? -1 : 1;
          break;
        case WaveType::Contact:
          w.lo = w.hi = 0.5 * (a.u + b.u);
          break;
        case WaveType::Coupling:
          w.lo = w.hi = fan.coupling_speed;
          break;
        case WaveType::Rarefaction: {
          // pressure falls from the undisturbed side into the fan
          const double ca = fan_sound_speed(eos, a), cb = fan_sound_speed(eos, b);
          if (a.p == b.p) throw std::invalid_argument("make_fan: rarefaction without pressure change");
          if (a.p > b.p) {
            w.family = -1;
            w.lo = a.u - ca;
            w.hi = b.u - cb;
          } else {
            w.family = 1;
            w.lo = a.u + ca;
            w.hi = b.u + cb;
          }
          break;
        }
      }
      fan.waves[k].push_back(w);
    }
  }
  return fan;
}

ExactPhaseSample exact_sample_phase(const ExactWaveFan& fan, int k, double xi, const EosParams<double>& eos) {
  const auto& waves = fan.waves[k];
  const auto& regions = fan.regions[k];
  for (std::size_t i = 0; i < waves.size(); ++i) {
    const ExactWave& w = waves[i];
    if (xi < w.lo) return {regions[i].rho, regions[i].u, regions[i].p, static_cast<int>(i)};
    if (w.type == WaveType::Rarefaction && xi < w.hi) {
      // isentropic fan: u -/+ 2c/(gamma-1) carried from the state ahead of the wave
      const double g = eos.gamma;
      const PhaseRegion& ahead = w.family < 0 ? w.left : w.right;
      const double c0 = sound_speed(eos, ahead.rho, ahead.p);
      const double K = (ahead.p + eos.p_inf) / std::pow(ahead.rho, g);
      double c, u;
      if (w.family < 0) {
        const double J = ahead.u + 2 * c0 / (g - 1);
        c = (J - xi) * (g - 1) / (g + 1);
        u = xi + c;
      } else {
        const double J = ahead.u - 2 * c0 / (g - 1);
        c = (xi - J) * (g - 1) / (g + 1);
        u = xi - c;
      }
      const double rho = std::pow(c * c / (g * K), 1 / (g - 1));
      return {rho, u, K * std::pow(rho, g) - eos.p_inf, -1};
    }
  }
  const auto& last = regions.back();
  return {last.rho, last.u, last.p, static_cast<int>(regions.size() - 1)};
}

PrimitiveState<double> exact_sample(const ExactWaveFan& fan, double xi, const EosParams<double>& eos1,
                                    const EosParams<double>& eos2) {
  PrimitiveState<double> w;
  w.alpha1 = xi < fan.coupling_speed ? fan.alpha1L : fan.alpha1R;
  for (int k = 0; k < 2; ++k) {
    const auto s = exact_sample_phase(fan, k, xi, k == 0 ? eos1 : eos2);
    w.rho(k) = s.rho;
    w.u(k) = s.u;
    w.p(k) = s.p;
  }
  return w;
}

TestCase get_case(int id) {
  TestCase c;
  c.id = id;
  c.cfl = 0.45;
  std::array<std::vector<PhaseRegion>, 2> reg;
  std::array<std::vector<WaveType>, 2> typ;
  switch (id) {
    case 1:
      c.eos1 = {1.4, 0};
      c.eos2 = {1.4, 0};
      c.x0 = 0;
      c.t_max = 0.15;
      c.domain = {-0.5, 0.5};
      reg[0] = {R("L", 0.21430, -0.02609, 0.3), R("L*", 0.35, -0.7683, 0.6045), R("-", 0.698, -0.7683, 0.6045),
                R("+", 0.90583, -0.11581, 0.87069), R("R", 0.96964, -0.03629, 0.95776)};
      typ[0] = {T::Shock, T::Contact, T::Coupling, T::Rarefaction};
      reg[1] = {R("L", 1.00003, 0.00007, 1.0), R("-", 0.9436, 0.0684, 0.9219), R("+", 1.0591, 0.0684, 1.08383),
                R("R", 0.99993, -0.00004, 1.0)};
      typ[1] = {T::Rarefaction, T::Coupling, T::Shock};
      c.left = {0.2, 0.21430, -0.02609, 0.3, 1.00003, 0.00007, 1.0};
      c.right = {0.7, 0.96964, -0.03629, 0.95776, 0.99993, -0.00004, 1.0};
      break;
    case 2:
      c.eos1 = {1.4, 0};
      c.eos2 = {3.0, 100};
      c.x0 = 0.8;
      c.t_max = 0.007;
      c.domain = {0, 1};
      reg[0] = {R("L", 1.0, -19.59741, 1000.0), R("-", 0.4684, 6.7332, 345.8279),
                R("+", 0.50297, -1.75405, 382.08567), R("R*", 5.9991, -1.75405, 382.08567),
                R("R", 1.0, -19.59741, 0.01)};
      typ[0] = {T::Rarefaction, T::Coupling, T::Contact, T::Shock};
      reg[1] = {R("L", 1.0, -19.59716, 1000.0), R("-", 0.7687, -6.3085, 399.5878),
                R("+", 1.6087, -6.3085, 466.72591), R("R", 1.0, -19.59741, 0.01)};
      typ[1] = {T::Rarefaction, T::Coupling, T::Shock};
      c.left = {0.3, 1.0, -19.59741, 1000.0, 1.0, -19.59716, 1000.0};
      c.right = {0.8, 1.0, -19.59741, 0.01, 1.0, -19.59741, 0.01};
      break;
    case 3:
      c.eos1 = {1.4, 0};
      c.eos2 = {1.4, 0};
      c.x0 = 0.5;
      c.t_max = 0.15;
      c.domain = {0, 1};
      for (int k = 0; k < 2; ++k) {
        reg[k] = {R("L", 0.99988, -1.99931, 0.4), R("-", 0.0219, 0.0, 0.0019), R("+", 0.0219, 0.0, 0.0019),
                  R("R", 0.99988, 1.99931, 0.4)};
        typ[k] = {T::Rarefaction, T::Coupling, T::Rarefaction};
      }
      c.left = {0.2, 0.99988, -1.99931, 0.4, 0.99988, -1.99931, 0.4};
      c.right = {0.5, 0.99988, 1.99931, 0.4, 0.99988, 1.99931, 0.4};
      break;
    case 4:
      c.eos1 = {3.0, 0};
      c.eos2 = {1.4, 0};
      c.x0 = 0;
      c.t_max = 0.15;
      c.domain = {-0.5, 0.5};
      reg[0] = {R("L", 1.6, 0.80311, 1.3), R("-", 2.0, 0.4, 2.6), R("+", 1.84850, 0.91147, 2.05277),
                R("R*", 2.03335, 0.91147, 2.05277), R("R", 1.62668, 0.55623, 1.02638)};
      typ[0] = {T::Shock, T::Coupling, T::Contact, T::Shock};
      reg[1] = {R("-", 4.0, 0.1, 2.45335, true), R("+", 4.0, 0.1, 2.45335), R("R", 7.69667, 0.74797, 6.13338)};
      typ[1] = {T::Coupling, T::Rarefaction};
      c.left = {1 - 1e-4, 1.6, 0.80311, 1.3, 4.0, 0.1, 2.45335};
      c.right = {0.4, 1.62668, 0.55623, 1.02638, 7.69667, 0.74797, 6.13338};
      break;
    case 5:
      c.eos1 = {3.0, 0};
      c.eos2 = {1.4, 0};
      c.x0 = 0;
      c.t_max = 0.05;
      c.domain = {-0.5, 0.5};
      reg[0] = {R("L", 1.6, 1.79057, 5.0), R("-", 2.0, 1.0, 10.0), R("+", 2.0, 1.0, 10.0, true)};
      typ[0] = {T::Shock, T::Coupling};
      reg[1] = {R("-", 2.0, 1.0, 10.0, true), R("+", 2.0, 1.0, 10.0), R("R", 2.67183, 1.78888, 15.0)};
      typ[1] = {T::Coupling, T::Rarefaction};
      c.left = {1 - 1e-9, 1.6, 1.79057, 5.0, 2.0, 1.0, 10.0};
      c.right = {1e-9, 2.0, 1.0, 10.0, 2.67183, 1.78888, 15.0};
      break;
    default:
      throw std::invalid_argument("get_case: unknown test case " + std::to_string(id));
  }
  c.exact = make_fan(reg, typ, c.left.alpha1, c.right.alpha1, c.eos1, c.eos2);
  return c;
}

std::vector<double> cell_centers(const TestCase& c, int cells) {
  std::vector<double> x(cells);
  const double dx = (c.domain[1] - c.domain[0]) / cells;
  for (int j = 0; j < cells; ++j) x[j] = c.domain[0] + (j + 0.5) * dx;
  return x;
}

std::vector<PrimitiveState<double>> exact_profile(const TestCase& c, int cells, double t) {
  if (!c.exact) throw std::invalid_argument("exact_profile: case has no exact solution");
  if (!(t > 0)) throw std::invalid_argument("exact_profile: t must be positive");
  const auto x = cell_centers(c, cells);
  std::vector<PrimitiveState<double>> out(cells);
  for (int j = 0; j < cells; ++j) out[j] = exact_sample(*c.exact, (x[j] - c.x0) / t, c.eos1, c.eos2);
  return out;
}

}  // namespace bn
