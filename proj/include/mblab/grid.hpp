#pragma once

#include <cstddef>
#include <vector>

namespace mblab {

/// Uniform periodic grid on [-L, L) with n nodes, x_j = -L + j h.
///
/// Frequencies follow the FFT ordering: xi_k = pi k / L for k < n/2 and
/// pi (k - n) / L otherwise, so the single Nyquist mode sits at -pi n/(2L).
/// The origin x = 0 is always the node j = n/2.
class Grid1D {
 public:
  Grid1D(std::size_t n_points, double half_width);

  std::size_t size() const noexcept { return n_; }
  double half_width() const noexcept { return half_width_; }
  double spacing() const noexcept { return 2.0 * half_width_ / double(n_); }
  double frequency_spacing() const noexcept;

  double node(std::size_t j) const noexcept {
    return -half_width_ + double(j) * spacing();
  }
  double frequency(std::size_t k) const noexcept;
  /// Signed integer wavenumber of FFT slot k.
  long wavenumber(std::size_t k) const noexcept;
  bool is_nyquist(std::size_t k) const noexcept { return k == n_ / 2; }
  std::size_t origin_index() const noexcept { return n_ / 2; }

  std::vector<double> nodes() const;
  std::vector<double> frequencies() const;

  bool operator==(const Grid1D&) const = default;

 private:
  std::size_t n_;
  double half_width_;
};

/// Space grid times a uniform periodic time grid on [-T_grid, T_grid).
/// t = 0 is the node k = n_time/2.
class SpaceTimeGrid {
 public:
  SpaceTimeGrid(Grid1D space, std::size_t n_time, double horizon);

  const Grid1D& space() const noexcept { return space_; }
  /// The time axis shares the periodic-grid conventions of Grid1D.
  const Grid1D& time() const noexcept { return time_; }
  std::size_t nx() const noexcept { return space_.size(); }
  std::size_t nt() const noexcept { return time_.size(); }
  double horizon() const noexcept { return time_.half_width(); }
  double dt() const noexcept { return time_.spacing(); }
  double t(std::size_t k) const noexcept { return time_.node(k); }
  double tau(std::size_t k) const noexcept { return time_.frequency(k); }
  std::size_t origin_time_index() const noexcept { return time_.origin_index(); }
  std::size_t index(std::size_t ix, std::size_t it) const noexcept {
    return it * nx() + ix;
  }
  std::size_t size() const noexcept { return nx() * nt(); }

  bool operator==(const SpaceTimeGrid&) const = default;

 private:
  Grid1D space_;
  Grid1D time_;
};

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace mblab
