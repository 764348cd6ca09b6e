#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mblab/field.hpp"

namespace mblab {

/// Samples of data on [0, extent] at uniform spacing, index k at k * spacing.
/// Construction rejects data that has not decayed by the last sample.
class HalfLineFunction {
 public:
  HalfLineFunction(std::vector<double> samples, double spacing, double s);

  static HalfLineFunction from_function(const std::function<double(double)>& fn,
                                        double extent, std::size_t n_intervals,
                                        double s);
  static HalfLineFunction zero(double extent, std::size_t n_intervals, double s);
  /// Two columns (coordinate, value), one header line, coordinates uniform
  /// from 0.
  static HalfLineFunction from_csv(const std::string& path, double s);

  const std::vector<double>& samples() const noexcept { return samples_; }
  double spacing() const noexcept { return spacing_; }
  double extent() const noexcept { return spacing_ * double(samples_.size() - 1); }
  double regularity() const noexcept { return s_; }
  double boundary_value() const noexcept { return samples_.front(); }
  double peak() const noexcept { return peak_; }
  bool is_zero() const noexcept { return peak_ == 0.0; }

  /// Cubic B-spline interpolant; 0 beyond the extent.
  double at(double x) const;

  HalfLineFunction operator+(const HalfLineFunction& other) const;
  HalfLineFunction scaled(double factor) const;

 private:
  std::vector<double> samples_;
  double spacing_;
  double s_;
  double peak_ = 0.0;
  struct Spline;
  std::shared_ptr<const Spline> spline_;
};

/// Extension menu, recorded with every norm or solve that uses one.
enum class Extension { Zero, Reflect1, Reflect2, Reflect3 };

std::string to_string(Extension e);
Extension extension_from_string(const std::string& name);

/// chi_(0,inf) h on the grid; the node x = 0 carries h(0)/2.
SpectralField extend_zero(const HalfLineFunction& h, const Grid1D& grid);

/// Reflection sum_{k=1}^{order+1} a_k h(-k x) for x < 0, h itself for x >= 0.
SpectralField extend_smooth(const HalfLineFunction& h, int order, const Grid1D& grid);

SpectralField extend(const HalfLineFunction& h, Extension e, const Grid1D& grid);

/// a_k with sum_k a_k (-k)^j = 1 for j = 0..order.
std::vector<double> reflection_coefficients(int order);

/// Zero extension is controlled when s < 1/2, or for 1/2 < s < 3/2 when
/// h(0) = 0.
bool zero_extension_admissible(const HalfLineFunction& h, double s);

struct HalfLineNorm {
  double value = 0.0;
  Extension extension = Extension::Zero;
  /// Always true: the minimum over a finite menu bounds the infimum from above.
  bool upper_bound = true;
};

/// min over {zero (if admissible), reflections 1..3} of ||extension||_{H^s(R)}.
HalfLineNorm halfline_norm_upper(const HalfLineFunction& h, double s,
                                 const Grid1D& grid);

/// Whole-line norm of one fixed extension.
double halfline_norm_with(const HalfLineFunction& h, double s, Extension e,
                          const Grid1D& grid);

}  // namespace mblab
