#pragma once

#include <vector>

#include "mblab/field.hpp"

namespace mblab {

/// I(t) = ||u - u'||^2_{L2(R+)} + ||v - v'||^2_{L2(R+)} on [0, T] and its
/// Gronwall diagnostics against M = max_t of the four H^s norms.
struct EnergyMonitorReport {
  std::vector<double> t;
  std::vector<double> I;
  std::vector<double> dI;      ///< centered differences, one-sided second order at the ends
  double M = 0.0;
  double max_I = 0.0;
  /// max over t with I > 1e-14 of dI/dt / (M I); NaN if no such t.
  double gronwall_ratio = 0.0;
  /// max over t > 0 of ln(I(t)/I(0)) / (M t); NaN if I(0) <= 1e-14.
  double fitted_C = 0.0;
  /// The differential inequality is stated for s > 3/2 only.
  bool below_regularity = false;
};

EnergyMonitorReport difference_energy_monitor(const SpaceTimeField& u, const SpaceTimeField& v,
                                              const SpaceTimeField& u2,
                                              const SpaceTimeField& v2, double T, double s);

}  // namespace mblab
