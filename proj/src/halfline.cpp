#include "mblab/halfline.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <Eigen/Dense>

#include "mblab/norms.hpp"

namespace mblab {

struct HalfLineFunction::Spline {
  boost::math::interpolators::cardinal_cubic_b_spline<double> impl;
};

HalfLineFunction::HalfLineFunction(std::vector<double> samples, double spacing, double s)
    : samples_(std::move(samples)), spacing_(spacing), s_(s) {
  if (samples_.size() < 5)
    throw ValidationError("half-line data needs at least 5 samples");
  if (!(spacing_ > 0.0)) throw ValidationError("half-line data spacing must be positive");
  for (double v : samples_) {
    if (!std::isfinite(v)) throw ValidationError("half-line data contains non-finite values");
    peak_ = std::max(peak_, std::abs(v));
  }
  if (std::abs(samples_.back()) > 1e-8 * std::max(1.0, peak_))
    throw ValidationError(
        "half-line data has not decayed below 1e-8 at its last sample; extend the range");
  if (peak_ > 0.0) {
    spline_ = std::make_shared<const Spline>(
        Spline{{samples_.begin(), samples_.end(), 0.0, spacing_}});
  }
}

HalfLineFunction HalfLineFunction::from_function(const std::function<double(double)>& fn,
                                                 double extent, std::size_t n_intervals,
                                                 double s) {
  const double dx = extent / double(n_intervals);
  std::vector<double> v(n_intervals + 1);
  for (std::size_t k = 0; k <= n_intervals; ++k) v[k] = fn(double(k) * dx);
  return {std::move(v), dx, s};
}

HalfLineFunction HalfLineFunction::zero(double extent, std::size_t n_intervals, double s) {
  return from_function([](double) { return 0.0; }, extent, n_intervals, s);
}

HalfLineFunction HalfLineFunction::from_csv(const std::string& path, double s) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open data file " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("data file " + path + " is empty");
  std::vector<double> xs, ys;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x = 0.0, y = 0.0;
    if (!(row >> x >> y))
      throw ValidationError("data file " + path + ": malformed row '" + line + "'");
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 5) throw ValidationError("data file " + path + " has fewer than 5 rows");
  if (std::abs(xs.front()) > 1e-12)
    throw ValidationError("data file " + path + ": first coordinate must be 0");
  const double dx = xs[1] - xs[0];
  for (std::size_t k = 1; k < xs.size(); ++k)
    if (std::abs(xs[k] - double(k) * dx) > 1e-9 * std::max(1.0, xs[k]))
      throw ValidationError("data file " + path + ": coordinates must be uniform");
  return {std::move(ys), dx, s};
}

double HalfLineFunction::at(double x) const {
  if (x < 0.0 || x > extent() || !spline_) return 0.0;
  return spline_->impl(x);
}

HalfLineFunction HalfLineFunction::operator+(const HalfLineFunction& other) const {
  if (std::abs(spacing_ - other.spacing_) > 1e-14 * spacing_)
    throw std::invalid_argument("HalfLineFunction sum: spacings differ");
  std::vector<double> v(std::max(samples_.size(), other.samples_.size()), 0.0);
  for (std::size_t k = 0; k < samples_.size(); ++k) v[k] += samples_[k];
  for (std::size_t k = 0; k < other.samples_.size(); ++k) v[k] += other.samples_[k];
  return {std::move(v), spacing_, s_};
}

HalfLineFunction HalfLineFunction::scaled(double factor) const {
  std::vector<double> v = samples_;
  for (double& x : v) x *= factor;
  return {std::move(v), spacing_, s_};
}

std::string to_string(Extension e) {
  switch (e) {
    case Extension::Zero: return "zero";
    case Extension::Reflect1: return "reflect1";
    case Extension::Reflect2: return "reflect2";
    case Extension::Reflect3: return "reflect3";
  }
  return "unknown";
}

Extension extension_from_string(const std::string& name) {
  if (name == "zero") return Extension::Zero;
  if (name == "reflect1") return Extension::Reflect1;
  if (name == "reflect2") return Extension::Reflect2;
  if (name == "reflect3") return Extension::Reflect3;
  throw ValidationError("unknown extension '" + name +
                        "' (expected zero, reflect1, reflect2, reflect3)");
}

std::vector<double> reflection_coefficients(int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("reflection order must be 1, 2 or 3");
  const int m = order + 1;
  Eigen::MatrixXd V(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) V(j, k) = std::pow(-double(k + 1), j);
  const Eigen::VectorXd a = V.fullPivLu().solve(Eigen::VectorXd::Ones(m));
  return {a.data(), a.data() + m};
}

SpectralField extend_zero(const HalfLineFunction& h, const Grid1D& grid) {
  std::vector<cplx> v(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    if (j == grid.origin_index()) v[j] = 0.5 * h.boundary_value();
    else if (x > 0.0) v[j] = h.at(x);
  }
  return SpectralField::from_values(grid, std::move(v));
}

SpectralField extend_smooth(const HalfLineFunction& h, int order, const Grid1D& grid) {
  const auto a = reflection_coefficients(order);
  std::vector<cplx> v(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    if (j >= grid.origin_index()) {
      v[j] = j == grid.origin_index() ? h.boundary_value() : h.at(x);
      continue;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * h.at(-double(k + 1) * x);
    v[j] = acc;
  }
  return SpectralField::from_values(grid, std::move(v));
}

SpectralField extend(const HalfLineFunction& h, Extension e, const Grid1D& grid) {
  switch (e) {
    case Extension::Zero: return extend_zero(h, grid);
    case Extension::Reflect1: return extend_smooth(h, 1, grid);
    case Extension::Reflect2: return extend_smooth(h, 2, grid);
    case Extension::Reflect3: return extend_smooth(h, 3, grid);
  }
  throw std::invalid_argument("extend: unknown extension");
}

bool zero_extension_admissible(const HalfLineFunction& h, double s) {
  if (s < 0.5) return true;
  if (s > 0.5 && s < 1.5)
    return std::abs(h.boundary_value()) <= 1e-10 * std::max(1.0, h.peak());
  return false;
}

double halfline_norm_with(const HalfLineFunction& h, double s, Extension e,
                          const Grid1D& grid) {
  return sobolev_norm(extend(h, e, grid), s);
}

HalfLineNorm halfline_norm_upper(const HalfLineFunction& h, double s, const Grid1D& grid) {
  if (s < 0.0 || s > 2.0)
    throw ValidationError("halfline_norm_upper: s outside [0, 2]");
  HalfLineNorm best{std::numeric_limits<double>::infinity(), Extension::Reflect1, true};
  for (Extension e : {Extension::Zero, Extension::Reflect1, Extension::Reflect2,
                      Extension::Reflect3}) {
    if (e == Extension::Zero && !zero_extension_admissible(h, s)) continue;
    const double n = halfline_norm_with(h, s, e, grid);
    if (n < best.value) best = {n, e, true};
  }
  return best;
}

}  // namespace mblab
