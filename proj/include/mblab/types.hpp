#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mblab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Input rejected at a validation layer. The message names the violated
/// constraint and where the constraint comes from.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Picard iteration failed to contract. Carries the ratio history so the
/// caller can see how far from contraction the run was.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> ratios)
      : std::runtime_error(what), ratios_(std::move(ratios)) {}
  const std::vector<double>& ratios() const noexcept { return ratios_; }

 private:
  std::vector<double> ratios_;
};

/// The truncated boundary-quadrature tail exceeds the accepted bound.
class QuadratureTailError : public std::runtime_error {
 public:
  QuadratureTailError(const std::string& what, double tail)
      : std::runtime_error(what), tail_(tail) {}
  double tail() const noexcept { return tail_; }

 private:
  double tail_;
};

/// Japanese bracket <xi> = 1 + |xi|.
inline double bracket(double v) { return 1.0 + std::abs(v); }

}  // namespace mblab
