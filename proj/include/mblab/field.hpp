#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mblab/grid.hpp"
#include "mblab/types.hpp"

namespace mblab {

// Continuum-normalized transforms on a periodic grid:
//   g_hat(xi_k) = h * sum_j g(x_j) e^{-i xi_k x_j}
//   g(x_j)      = (dxi / 2 pi) * sum_k g_hat(xi_k) e^{+i xi_k x_j}
// i.e. Riemann sums of the whole-line integrals with the 2 pi carried by
// the inverse.
void continuum_forward(std::span<cplx> data, const Grid1D& grid);
void continuum_inverse(std::span<cplx> data, const Grid1D& grid);

/// 2-D versions on time-major storage data[it * nx + ix].
void continuum_forward(std::span<cplx> data, const SpaceTimeGrid& grid);
void continuum_inverse(std::span<cplx> data, const SpaceTimeGrid& grid);

/// Transforms every time slice in x only (the mixed (xi, t) representation).
void continuum_forward_slices(std::span<cplx> data, const SpaceTimeGrid& grid);
void continuum_inverse_slices(std::span<cplx> data, const SpaceTimeGrid& grid);

/// Samples on a Grid1D with the matching continuum spectrum.
class SpectralField {
 public:
  static SpectralField from_values(Grid1D grid, std::vector<cplx> values);
  static SpectralField from_spectrum(Grid1D grid, std::vector<cplx> spectrum);
  static SpectralField from_function(Grid1D grid,
                                     const std::function<cplx(double)>& fn);
  static SpectralField zero(Grid1D grid);

  const Grid1D& grid() const noexcept { return grid_; }
  const std::vector<cplx>& values() const noexcept { return values_; }
  const std::vector<cplx>& spectrum() const noexcept { return spectrum_; }

  /// Fourier multiplier m(xi) applied to the spectrum.
  SpectralField multiplied(const std::function<cplx(double)>& symbol) const;

  SpectralField operator+(const SpectralField& other) const;
  SpectralField operator-(const SpectralField& other) const;
  SpectralField scaled(cplx factor) const;

 private:
  SpectralField(Grid1D grid, std::vector<cplx> values, std::vector<cplx> spectrum)
      : grid_(std::move(grid)), values_(std::move(values)),
        spectrum_(std::move(spectrum)) {}

  Grid1D grid_;
  std::vector<cplx> values_;
  std::vector<cplx> spectrum_;
};

/// Samples on a SpaceTimeGrid (time-major) with the 2-D continuum spectrum
/// stored in the same layout, spectrum[itau * nx + ixi].
class SpaceTimeField {
 public:
  static SpaceTimeField from_values(SpaceTimeGrid grid, std::vector<cplx> values);
  static SpaceTimeField from_spectrum(SpaceTimeGrid grid,
                                      std::vector<cplx> spectrum);
  static SpaceTimeField from_function(
      SpaceTimeGrid grid, const std::function<cplx(double, double)>& fn);
  static SpaceTimeField zero(SpaceTimeGrid grid);

  const SpaceTimeGrid& grid() const noexcept { return grid_; }
  const std::vector<cplx>& values() const noexcept { return values_; }
  const std::vector<cplx>& spectrum() const noexcept { return spectrum_; }
  cplx at(std::size_t ix, std::size_t it) const {
    return values_[grid_.index(ix, it)];
  }

  /// Spatial slice at time node it.
  SpectralField slice(std::size_t it) const;

 private:
  SpaceTimeField(SpaceTimeGrid grid, std::vector<cplx> values,
                 std::vector<cplx> spectrum)
      : grid_(std::move(grid)), values_(std::move(values)),
        spectrum_(std::move(spectrum)) {}

  SpaceTimeGrid grid_;
  std::vector<cplx> values_;
  std::vector<cplx> spectrum_;
};

/// d/dx as multiplication by i xi; the Nyquist mode is dropped.
SpectralField spectral_derivative(const SpectralField& f);

/// Band-limited (trigonometric) interpolation at an arbitrary point.
/// The Nyquist mode contributes as a cosine so real data stays real.
cplx interpolate(const SpectralField& f, double x);

}  // namespace mblab
