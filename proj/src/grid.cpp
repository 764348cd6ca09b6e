#include "mblab/grid.hpp"

#include <stdexcept>

#include "mblab/types.hpp"

namespace mblab {

bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

Grid1D::Grid1D(std::size_t n_points, double half_width)
    : n_(n_points), half_width_(half_width) {
  if (!is_power_of_two(n_) || n_ < 4)
    throw ValidationError("Grid1D: n_points must be a power of two >= 4");
  if (!(half_width > 0.0))
    throw ValidationError("Grid1D: half width must be positive");
}

double Grid1D::frequency_spacing() const noexcept { return kPi / half_width_; }

long Grid1D::wavenumber(std::size_t k) const noexcept {
  const auto n = static_cast<long>(n_);
  const auto kk = static_cast<long>(k);
  return kk < n / 2 ? kk : kk - n;
}

double Grid1D::frequency(std::size_t k) const noexcept {
  return double(wavenumber(k)) * frequency_spacing();
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = node(j);
  return out;
}

std::vector<double> Grid1D::frequencies() const {
  std::vector<double> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = frequency(k);
  return out;
}

SpaceTimeGrid::SpaceTimeGrid(Grid1D space, std::size_t n_time, double horizon)
    : space_(std::move(space)), time_(n_time, horizon) {}

}  // namespace mblab
