#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bn/eos.hpp"
#include "bn/state.hpp"

namespace bn {

enum class WaveType { Shock, Contact, Coupling, Rarefaction };

inline const char* to_string(WaveType t) {
  switch (t) {
    case WaveType::Shock: return "shock";
    case WaveType::Contact: return "contact";
    case WaveType::Coupling: return "coupling";
    case WaveType::Rarefaction: return "rarefaction";
  }
  return "unknown";
}

struct PhaseRegion {
  std::string name;  // L, L*, -, +, R*, R
  double rho{1};
  double u{0};
  double p{1};
  bool absent{false};  // vanishing-phase fill, not a table value
};

struct ExactWave {
  WaveType type{WaveType::Contact};
  int phase{1};      // 1 or 2; coupling waves appear in both phase lists
  int family{0};     // -1 for u-c, +1 for u+c, 0 for contacts
  double lo{0};      // speed, or fan tail/head interval
  double hi{0};
  PhaseRegion left;
  PhaseRegion right;
};

// per-phase alternation region, wave, region, ...; alpha jumps only at the coupling speed
struct ExactWaveFan {
  std::array<std::vector<PhaseRegion>, 2> regions;
  std::array<std::vector<ExactWave>, 2> waves;
  double alpha1L{0.5};
  double alpha1R{0.5};
  double coupling_speed{0};

  std::vector<ExactWave> ordered_waves() const;
};

struct TestCase {
  int id{0};
  EosParams<double> eos1;
  EosParams<double> eos2;
  double x0{0};
  double t_max{0};
  double cfl{0.45};
  std::array<double, 2> domain{0, 1};
  PrimitiveState<double> left;
  PrimitiveState<double> right;
  std::optional<ExactWaveFan> exact;
};

TestCase get_case(int id);

// builds wave speeds from region data; types[i] sits between regions[i] and regions[i+1]
ExactWaveFan make_fan(const std::array<std::vector<PhaseRegion>, 2>& regions,
                      const std::array<std::vector<WaveType>, 2>& types, double alpha1L, double alpha1R,
                      const EosParams<double>& eos1, const EosParams<double>& eos2);

struct ExactPhaseSample {
  double rho{1};
  double u{0};
  double p{1};
  int region{0};  // index of the constant region, -1 inside a fan
};

ExactPhaseSample exact_sample_phase(const ExactWaveFan& fan, int k, double xi, const EosParams<double>& eos);

PrimitiveState<double> exact_sample(const ExactWaveFan& fan, double xi, const EosParams<double>& eos1,
                                    const EosParams<double>& eos2);

std::vector<double> cell_centers(const TestCase& c, int cells);

std::vector<PrimitiveState<double>> exact_profile(const TestCase& c, int cells, double t);

}  // namespace bn
