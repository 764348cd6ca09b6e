#pragma once

namespace mblab {

/// Roots of the three-wave modulation function
///   -xi^3 + alpha xi1^3 + alpha xi2^3 = (alpha - 1) xi (xi - r1 xi1)(xi - r2 xi1).
struct ResonanceRoots {
  double alpha = 0.0;
  double r1 = 0.0;  ///< in (0, 1)
  double r2 = 0.0;  ///< negative
};

/// Closed form r_{1,2} = (3 alpha -+ sqrt(3 alpha (4 - alpha))) / (2 (alpha - 1)).
/// Rejects alpha outside (0, 1).
ResonanceRoots resonance_roots(double alpha);

enum class ResonanceIdentity {
  /// tau - xi^3 - (tau1 - alpha xi1^3) - (tau2 - alpha xi2^3)
  ///   = (alpha - 1) xi (xi - r1 xi1)(xi - r2 xi1)
  Primary,
  /// tau1 - xi1^3 + tau2 - alpha xi2^3 - tau + alpha xi^3
  ///   = (alpha - 1) r1 r2 xi1 (xi - xi1/r1)(xi - xi1/r2)
  Mixed,
};

/// |LHS - RHS| with xi = xi1 + xi2 and tau = tau1 + tau2.
double resonance_identity_residual(double alpha, double xi1, double xi2, double tau1,
                                   double tau2, ResonanceIdentity variant);

/// The residual divided by |xi|^3 + |xi1|^3 + 1.
double resonance_identity_relative(double alpha, double xi1, double xi2, double tau1,
                                   double tau2, ResonanceIdentity variant);

enum class Region { A, B, C };

char to_char(Region r);

/// Largest admissible window constant, sqrt(|r2 / r1|).
double max_region_constant(double alpha);

/// A: |r1 xi1|/c < |xi| < c |r1 xi1|; B: same with r2; C: neither.
/// Requires 1 < c < sqrt(|r2/r1|), which makes A and B disjoint.
Region region_classify(double xi, double xi1, double alpha, double c);

}  // namespace mblab
