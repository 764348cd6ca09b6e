#include "mblab/conserved.hpp"

#include <algorithm>
#include <cmath>

namespace mblab {

ConservedQuantities conserved_quantities(const SpectralField& u, const SpectralField& v,
                                         double alpha) {
  const double h = u.grid().spacing();
  const auto ux = spectral_derivative(u).values();
  const auto vx = spectral_derivative(v).values();
  ConservedQuantities q;
  double h_density = 0.0;
  for (std::size_t j = 0; j < u.values().size(); ++j) {
    const double a = u.values()[j].real(), b = v.values()[j].real();
    q.mass_u += a;
    q.mass_v += b;
    q.energy += a * a + b * b;
    h_density += ux[j].real() * ux[j].real() + alpha * vx[j].real() * vx[j].real() - a * b * b;
  }
  q.mass_u *= h;
  q.mass_v *= h;
  q.energy *= h;
  q.hamiltonian = 0.5 * h_density * h;
  return q;
}

DriftReport conservation_drift(const SpaceTimeField& u, const SpaceTimeField& v, double alpha,
                               double T) {
  const SpaceTimeGrid& g = u.grid();
  DriftReport r;
  for (std::size_t k = g.origin_time_index(); k < g.nt() && g.t(k) <= T * (1.0 + 1e-12); ++k) {
    r.times.push_back(g.t(k));
    r.series.push_back(conserved_quantities(u.slice(k), v.slice(k), alpha));
  }
  if (r.series.empty()) return r;
  const auto q0 = r.series.front().as_array();
  for (const auto& q : r.series) {
    const auto a = q.as_array();
    for (std::size_t i = 0; i < 4; ++i)
      r.drift[i] = std::max(r.drift[i], std::abs(a[i] - q0[i]) / std::max(std::abs(q0[i]), 1.0));
  }
  return r;
}

}  // namespace mblab
