#pragma once

namespace mblab {

/// C-infinity step built from psi(y) = e^{-1/y}: 0 for y <= 0, 1 for y >= 1.
double smooth_step(double y);

/// Canonical time cutoff: 1 on [-1, 1], supported on [-2, 2].
double eta(double t);

/// Spatial cutoff for the boundary operator: 1 on [0, inf), 0 on (-inf, -2].
double cutoff_rho(double x);

}  // namespace mblab
