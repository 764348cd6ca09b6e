#pragma once

#include <array>
#include <vector>

#include "mblab/field.hpp"

namespace mblab {

/// int u, int v, int u^2 + v^2, and H = (1/2) int u_x^2 + alpha v_x^2 - u v^2,
/// as Riemann sums over the periodic box with spectral derivatives.
struct ConservedQuantities {
  double mass_u = 0.0;
  double mass_v = 0.0;
  double energy = 0.0;
  double hamiltonian = 0.0;

  std::array<double, 4> as_array() const { return {mass_u, mass_v, energy, hamiltonian}; }
};

ConservedQuantities conserved_quantities(const SpectralField& u, const SpectralField& v,
                                         double alpha);

struct DriftReport {
  std::vector<double> times;
  std::vector<ConservedQuantities> series;
  /// max_t |Q(t) - Q(0)| / max(|Q(0)|, 1) for (mass_u, mass_v, energy, H).
  std::array<double, 4> drift{};
};

/// Monitors the four quantities at every window node with 0 <= t <= T.
/// Meant for whole-line runs (boundary terms disabled).
DriftReport conservation_drift(const SpaceTimeField& u, const SpaceTimeField& v, double alpha,
                               double T);

}  // namespace mblab
