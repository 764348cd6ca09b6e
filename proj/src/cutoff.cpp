#include "mblab/cutoff.hpp"

#include <cmath>

namespace mblab {
namespace {

double psi(double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; }

}  // namespace

double smooth_step(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  const double a = psi(y);
  return a / (a + psi(1.0 - y));
}

double eta(double t) { return smooth_step(2.0 - std::abs(t)); }

double cutoff_rho(double x) { return smooth_step(0.5 * (x + 2.0)); }

}  // namespace mblab
