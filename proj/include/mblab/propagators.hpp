#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mblab/field.hpp"

namespace mblab {

/// Airy group: spectrum multiplied by e^{i c t xi^3}. c = 1 is W^t, c = alpha
/// is the scaled group W^t_alpha.
SpectralField airy_evolve(const SpectralField& f, double t, double c);

/// D(t) = int_0^t W_c^{t - t'} F(t') dt' at every node of F's time grid.
///
/// Works per spatial Fourier mode. On each step F_hat is replaced by its
/// linear interpolant and the phase e^{i c xi^3 (t - t')} is integrated
/// exactly; for c xi^3 dt -> 0 this is the composite trapezoid rule. Marches
/// forward from t = 0 and backward for t < 0, so D(0) = 0 exactly.
SpaceTimeField duhamel_integral(const SpaceTimeField& forcing, double c);

/// Step weights (phi_a, phi_b) with
///   int_0^1 e^{i theta (1 - s)} [(1 - s) F_0 + s F_1] ds = phi_a F_0 + phi_b F_1.
std::pair<cplx, cplx> interval_weights(double theta);

/// Same march on the mixed (xi, t) representation; input and output are
/// time-major arrays of spatial spectra.
std::vector<cplx> duhamel_modes(std::span<const cplx> forcing_modes,
                                const SpaceTimeGrid& grid, double c);

/// Pointwise multiplication by eta(t / scale).
SpaceTimeField time_cutoff(const SpaceTimeField& f, double scale);

}  // namespace mblab
