#include "mblab/energy_monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mblab/norms.hpp"

namespace mblab {

EnergyMonitorReport difference_energy_monitor(const SpaceTimeField& u, const SpaceTimeField& v,
                                              const SpaceTimeField& u2,
                                              const SpaceTimeField& v2, double T, double s) {
  const SpaceTimeGrid& g = u.grid();
  if (!(g == v.grid() && g == u2.grid() && g == v2.grid()))
    throw std::invalid_argument("difference_energy_monitor: grids differ");
  EnergyMonitorReport r;
  r.below_regularity = !(s > 1.5);
  const std::size_t j0 = g.space().origin_index(), k0 = g.origin_time_index();
  const double dx = g.space().spacing(), dt = g.dt();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t k = k0; k < g.nt() && g.t(k) <= T * (1.0 + 1e-12); ++k) {
    double acc = 0.0;
    for (std::size_t j = j0; j < g.nx(); ++j) {
      const double w = j == j0 ? 0.5 : 1.0;
      const double a = (u.at(j, k) - u2.at(j, k)).real(), b = (v.at(j, k) - v2.at(j, k)).real();
      acc += w * (a * a + b * b);
    }
    r.t.push_back(g.t(k));
    r.I.push_back(acc * dx);
    for (const SpaceTimeField* f : {&u, &v, &u2, &v2})
      r.M = std::max(r.M, sobolev_norm(f->slice(k), std::clamp(s, -2.0, 4.0)));
  }
  const std::size_t n = r.I.size();
  r.dI.assign(n, 0.0);
  if (n >= 3) {
    for (std::size_t k = 1; k + 1 < n; ++k) r.dI[k] = (r.I[k + 1] - r.I[k - 1]) / (2.0 * dt);
    r.dI[0] = (-3.0 * r.I[0] + 4.0 * r.I[1] - r.I[2]) / (2.0 * dt);
    r.dI[n - 1] = (3.0 * r.I[n - 1] - 4.0 * r.I[n - 2] + r.I[n - 3]) / (2.0 * dt);
  }
  r.max_I = n ? *std::max_element(r.I.begin(), r.I.end()) : 0.0;

  r.gronwall_ratio = nan;
  for (std::size_t k = 0; k < n; ++k) {
    if (r.I[k] <= 1e-14 || r.M <= 0.0) continue;
    const double q = r.dI[k] / (r.M * r.I[k]);
    r.gronwall_ratio = std::isnan(r.gronwall_ratio) ? q : std::max(r.gronwall_ratio, q);
  }
  r.fitted_C = nan;
  if (n > 1 && r.I[0] > 1e-14 && r.M > 0.0) {
    for (std::size_t k = 1; k < n; ++k) {
      if (r.I[k] <= 0.0) continue;
      const double c = std::log(r.I[k] / r.I[0]) / (r.M * (r.t[k] - r.t[0]));
      r.fitted_C = std::isnan(r.fitted_C) ? c : std::max(r.fitted_C, c);
    }
  }
  return r;
}

}  // namespace mblab
