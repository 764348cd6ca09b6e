#include "mblab/resonance.hpp"

#include <cmath>
#include <sstream>

#include "mblab/types.hpp"

namespace mblab {

ResonanceRoots resonance_roots(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream m;
    m << "alpha=" << alpha << " outside (0, 1), the coupling range of the well-posedness result";
    throw ValidationError(m.str());
  }
  const double root = std::sqrt(3.0 * alpha * (4.0 - alpha));
  const double den = 2.0 * (alpha - 1.0);
  return {alpha, (3.0 * alpha - root) / den, (3.0 * alpha + root) / den};
}

double resonance_identity_residual(double alpha, double xi1, double xi2, double tau1,
                                   double tau2, ResonanceIdentity variant) {
  const ResonanceRoots r = resonance_roots(alpha);
  const double xi = xi1 + xi2, tau = tau1 + tau2;
  auto cube = [](double a) { return a * a * a; };
  double lhs = 0.0, rhs = 0.0;
  if (variant == ResonanceIdentity::Primary) {
    lhs = tau - cube(xi) - (tau1 - alpha * cube(xi1)) - (tau2 - alpha * cube(xi2));
    rhs = (alpha - 1.0) * xi * (xi - r.r1 * xi1) * (xi - r.r2 * xi1);
  } else {
    lhs = (tau1 - cube(xi1)) + (tau2 - alpha * cube(xi2)) - (tau - alpha * cube(xi));
    rhs = (alpha - 1.0) * r.r1 * r.r2 * xi1 * (xi - xi1 / r.r1) * (xi - xi1 / r.r2);
  }
  return std::abs(lhs - rhs);
}

double resonance_identity_relative(double alpha, double xi1, double xi2, double tau1,
                                   double tau2, ResonanceIdentity variant) {
  const double xi = xi1 + xi2;
  const double scale = std::pow(std::abs(xi), 3) + std::pow(std::abs(xi1), 3) + 1.0;
  return resonance_identity_residual(alpha, xi1, xi2, tau1, tau2, variant) / scale;
}

char to_char(Region r) {
  switch (r) {
    case Region::A: return 'A';
    case Region::B: return 'B';
    case Region::C: return 'C';
  }
  return '?';
}

double max_region_constant(double alpha) {
  const ResonanceRoots r = resonance_roots(alpha);
  return std::sqrt(std::abs(r.r2 / r.r1));
}

Region region_classify(double xi, double xi1, double alpha, double c) {
  const ResonanceRoots r = resonance_roots(alpha);
  const double cmax = std::sqrt(std::abs(r.r2 / r.r1));
  if (!(c > 1.0 && c < cmax)) {
    std::ostringstream m;
    m << "region constant c=" << c << " must satisfy 1 < c < sqrt(|r2/r1|) = " << cmax;
    throw ValidationError(m.str());
  }
  auto inside = [&](double root) {
    const double centre = std::abs(root * xi1), a = std::abs(xi);
    return centre / c < a && a < c * centre;
  };
  const bool in_a = inside(r.r1), in_b = inside(r.r2);
  if (in_a && in_b) throw std::logic_error("region_classify: A and B overlap");
  if (in_a) return Region::A;
  if (in_b) return Region::B;
  return Region::C;
}

}  // namespace mblab
