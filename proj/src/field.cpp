#include "mblab/field.hpp"

#include <stdexcept>

#include "mblab/fft.hpp"

namespace mblab {
namespace {

// x_0 = -L makes e^{-i xi_k x_0} = (-1)^k for even n.
inline double parity(std::size_t k) { return (k & 1u) ? -1.0 : 1.0; }

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) throw std::invalid_argument(what);
}

}  // namespace

void continuum_forward(std::span<cplx> data, const Grid1D& grid) {
  check_size(data.size(), grid.size(), "continuum_forward: size mismatch");
  fft::forward(data);
  const double h = grid.spacing();
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= h * parity(k);
}

void continuum_inverse(std::span<cplx> data, const Grid1D& grid) {
  check_size(data.size(), grid.size(), "continuum_inverse: size mismatch");
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= parity(k);
  fft::inverse(data);
  const double scale = 1.0 / (double(grid.size()) * grid.spacing());
  for (auto& v : data) v *= scale;
}

void continuum_forward(std::span<cplx> data, const SpaceTimeGrid& grid) {
  check_size(data.size(), grid.size(), "continuum_forward: size mismatch");
  fft::forward_2d(data, grid.nt(), grid.nx());
  const double cell = grid.space().spacing() * grid.dt();
  for (std::size_t kt = 0; kt < grid.nt(); ++kt)
    for (std::size_t kx = 0; kx < grid.nx(); ++kx)
      data[grid.index(kx, kt)] *= cell * parity(kx) * parity(kt);
}

void continuum_inverse(std::span<cplx> data, const SpaceTimeGrid& grid) {
  check_size(data.size(), grid.size(), "continuum_inverse: size mismatch");
  for (std::size_t kt = 0; kt < grid.nt(); ++kt)
    for (std::size_t kx = 0; kx < grid.nx(); ++kx)
      data[grid.index(kx, kt)] *= parity(kx) * parity(kt);
  fft::inverse_2d(data, grid.nt(), grid.nx());
  const double scale =
      1.0 / (double(grid.size()) * grid.space().spacing() * grid.dt());
  for (auto& v : data) v *= scale;
}

void continuum_forward_slices(std::span<cplx> data, const SpaceTimeGrid& grid) {
  check_size(data.size(), grid.size(), "continuum_forward_slices: size mismatch");
#pragma omp parallel for schedule(static)
  for (std::size_t it = 0; it < grid.nt(); ++it)
    continuum_forward(data.subspan(it * grid.nx(), grid.nx()), grid.space());
}

void continuum_inverse_slices(std::span<cplx> data, const SpaceTimeGrid& grid) {
  check_size(data.size(), grid.size(), "continuum_inverse_slices: size mismatch");
#pragma omp parallel for schedule(static)
  for (std::size_t it = 0; it < grid.nt(); ++it)
    continuum_inverse(data.subspan(it * grid.nx(), grid.nx()), grid.space());
}

// --- SpectralField -------------------------------------------------------

SpectralField SpectralField::from_values(Grid1D grid, std::vector<cplx> values) {
  check_size(values.size(), grid.size(), "SpectralField: values size mismatch");
  std::vector<cplx> spectrum = values;
  continuum_forward(spectrum, grid);
  return SpectralField(std::move(grid), std::move(values), std::move(spectrum));
}

SpectralField SpectralField::from_spectrum(Grid1D grid,
                                           std::vector<cplx> spectrum) {
  check_size(spectrum.size(), grid.size(),
             "SpectralField: spectrum size mismatch");
  std::vector<cplx> values = spectrum;
  continuum_inverse(values, grid);
  return SpectralField(std::move(grid), std::move(values), std::move(spectrum));
}

SpectralField SpectralField::from_function(
    Grid1D grid, const std::function<cplx(double)>& fn) {
  std::vector<cplx> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) values[j] = fn(grid.node(j));
  return from_values(std::move(grid), std::move(values));
}

SpectralField SpectralField::zero(Grid1D grid) {
  std::vector<cplx> z(grid.size());
  return SpectralField(grid, z, z);
}

SpectralField SpectralField::multiplied(
    const std::function<cplx(double)>& symbol) const {
  std::vector<cplx> spec = spectrum_;
  for (std::size_t k = 0; k < spec.size(); ++k)
    spec[k] *= symbol(grid_.frequency(k));
  return from_spectrum(grid_, std::move(spec));
}

SpectralField SpectralField::operator+(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
  std::vector<cplx> v = values_, s = spectrum_;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] += other.values_[i];
    s[i] += other.spectrum_[i];
  }
  return SpectralField(grid_, std::move(v), std::move(s));
}

SpectralField SpectralField::operator-(const SpectralField& other) const {
  return *this + other.scaled(-1.0);
}

SpectralField SpectralField::scaled(cplx factor) const {
  std::vector<cplx> v = values_, s = spectrum_;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] *= factor;
    s[i] *= factor;
  }
  return SpectralField(grid_, std::move(v), std::move(s));
}

// --- SpaceTimeField ------------------------------------------------------

SpaceTimeField SpaceTimeField::from_values(SpaceTimeGrid grid,
                                           std::vector<cplx> values) {
  check_size(values.size(), grid.size(), "SpaceTimeField: values size mismatch");
  std::vector<cplx> spectrum = values;
  continuum_forward(spectrum, grid);
  return SpaceTimeField(std::move(grid), std::move(values), std::move(spectrum));
}

SpaceTimeField SpaceTimeField::from_spectrum(SpaceTimeGrid grid,
                                             std::vector<cplx> spectrum) {
  check_size(spectrum.size(), grid.size(),
             "SpaceTimeField: spectrum size mismatch");
  std::vector<cplx> values = spectrum;
  continuum_inverse(values, grid);
  return SpaceTimeField(std::move(grid), std::move(values), std::move(spectrum));
}

SpaceTimeField SpaceTimeField::from_function(
    SpaceTimeGrid grid, const std::function<cplx(double, double)>& fn) {
  std::vector<cplx> values(grid.size());
  for (std::size_t it = 0; it < grid.nt(); ++it)
    for (std::size_t ix = 0; ix < grid.nx(); ++ix)
      values[grid.index(ix, it)] = fn(grid.space().node(ix), grid.t(it));
  return from_values(std::move(grid), std::move(values));
}

SpaceTimeField SpaceTimeField::zero(SpaceTimeGrid grid) {
  std::vector<cplx> z(grid.size());
  return SpaceTimeField(grid, z, z);
}

SpectralField SpaceTimeField::slice(std::size_t it) const {
  const auto nx = grid_.nx();
  std::vector<cplx> row(values_.begin() + long(it * nx),
                        values_.begin() + long((it + 1) * nx));
  return SpectralField::from_values(grid_.space(), std::move(row));
}

// --- operations ------------------------------------------------------------

SpectralField spectral_derivative(const SpectralField& f) {
  const Grid1D& g = f.grid();
  std::vector<cplx> spec = f.spectrum();
  for (std::size_t k = 0; k < spec.size(); ++k)
    spec[k] *= g.is_nyquist(k) ? cplx{} : cplx{0.0, g.frequency(k)};
  return SpectralField::from_spectrum(g, std::move(spec));
}

cplx interpolate(const SpectralField& f, double x) {
  const Grid1D& g = f.grid();
  const auto& spec = f.spectrum();
  cplx sum{};
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double xi = g.frequency(k);
    if (g.is_nyquist(k))
      sum += spec[k] * std::cos(xi * x);
    else
      sum += spec[k] * std::polar(1.0, xi * x);
  }
  return sum * g.frequency_spacing() / kTwoPi;
}

}  // namespace mblab
