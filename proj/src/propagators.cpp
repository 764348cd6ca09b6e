#include "mblab/propagators.hpp"

#include <stdexcept>

#include "mblab/cutoff.hpp"

namespace mblab {

std::pair<cplx, cplx> interval_weights(double theta) {
  const cplx i1{0.0, 1.0};
  if (std::abs(theta) < 0.1) {
    // phi_a = sum (i theta)^n / (n! (n + 2)), phi_0 = sum (i theta)^n / (n + 1)!
    cplx pa{}, p0{}, term{1.0, 0.0};
    for (int n = 0; n <= 12; ++n) {
      pa += term / double(n + 2);
      p0 += term / double(n + 1);
      term *= i1 * theta / double(n + 1);
    }
    return {pa, p0 - pa};
  }
  const cplx e = std::polar(1.0, theta);
  const cplx p0 = (e - 1.0) / (i1 * theta);
  const cplx pa = e / (i1 * theta) + (e - 1.0) / (theta * theta);
  return {pa, p0 - pa};
}

SpectralField airy_evolve(const SpectralField& f, double t, double c) {
  if (!(c > 0.0 && c <= 1.0))
    throw ValidationError("airy_evolve: dispersion coefficient outside (0, 1]");
  return f.multiplied([=](double xi) { return std::polar(1.0, c * t * xi * xi * xi); });
}

std::vector<cplx> duhamel_modes(std::span<const cplx> forcing_modes,
                                const SpaceTimeGrid& grid, double c) {
  const std::size_t nx = grid.nx(), nt = grid.nt();
  if (forcing_modes.size() != grid.size())
    throw std::invalid_argument("duhamel_modes: size mismatch");
  const std::size_t k0 = grid.origin_time_index();
  const double dt = grid.dt();
  std::vector<cplx> out(grid.size());

#pragma omp parallel for schedule(static)
  for (std::size_t ix = 0; ix < nx; ++ix) {
    const double xi = grid.space().frequency(ix);
    const double theta = c * xi * xi * xi * dt;
    const cplx step = std::polar(1.0, theta);
    const cplx back = std::conj(step);
    const auto [wa, wb] = interval_weights(theta);
    auto F = [&](std::size_t k) { return forcing_modes[k * nx + ix]; };
    // D_{k+1} = e^{i theta} D_k + dt (wa F_k + wb F_{k+1}); run backwards
    // for negative times by inverting the same step.
    cplx d{};
    out[k0 * nx + ix] = d;
    for (std::size_t k = k0; k + 1 < nt; ++k) {
      d = step * d + dt * (wa * F(k) + wb * F(k + 1));
      out[(k + 1) * nx + ix] = d;
    }
    d = cplx{};
    for (std::size_t k = k0; k-- > 0;) {
      d = back * (d - dt * (wa * F(k) + wb * F(k + 1)));
      out[k * nx + ix] = d;
    }
  }
  return out;
}

SpaceTimeField duhamel_integral(const SpaceTimeField& forcing, double c) {
  const SpaceTimeGrid& grid = forcing.grid();
  std::vector<cplx> modes = forcing.values();
  continuum_forward_slices(modes, grid);
  std::vector<cplx> out = duhamel_modes(modes, grid, c);
  continuum_inverse_slices(out, grid);
  return SpaceTimeField::from_values(grid, std::move(out));
}

SpaceTimeField time_cutoff(const SpaceTimeField& f, double scale) {
  if (!(scale > 0.0)) throw ValidationError("time_cutoff: scale must be positive");
  const SpaceTimeGrid& grid = f.grid();
  std::vector<cplx> v = f.values();
  for (std::size_t it = 0; it < grid.nt(); ++it) {
    const double w = eta(grid.t(it) / scale);
    for (std::size_t ix = 0; ix < grid.nx(); ++ix) v[grid.index(ix, it)] *= w;
  }
  return SpaceTimeField::from_values(grid, std::move(v));
}

}  // namespace mblab
