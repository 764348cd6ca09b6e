#pragma once

#include <functional>
#include <limits>

#include "mblab/field.hpp"

namespace mblab {

/// Which space-time functional to evaluate. Only the fields relevant to
/// `kind` are read; `alpha = 1` is the unscaled dispersion <tau - xi^3>.
struct NormSpec {
  enum class Kind { Hs, Xsb, XsbAlpha, Vgamma, MixedLpLq };

  Kind kind = Kind::Xsb;
  double s = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double alpha = 1.0;
  double p = 2.0;  ///< outer exponent (x); infinity allowed
  double q = 2.0;  ///< inner exponent (t); infinity allowed

  static NormSpec xsb(double s, double b) { return {Kind::Xsb, s, b}; }
  static NormSpec xsb_alpha(double s, double b, double alpha) {
    return {Kind::XsbAlpha, s, b, 0.0, alpha};
  }
  static NormSpec vgamma(double gamma) {
    return {Kind::Vgamma, 0.0, 0.0, gamma};
  }
  static NormSpec mixed(double p, double q) {
    return {Kind::MixedLpLq, 0.0, 0.0, 0.0, 1.0, p, q};
  }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// ||<xi>^s g_hat||, Plancherel-normalized so that s = 0 gives ||g||_{L^2}.
double sobolev_norm(const SpectralField& f, double s);

/// Weighted spectral L^2 functional sqrt(sum w^2 |F_hat|^2 dxi dtau/(4 pi^2)).
double weighted_spectral_norm(const SpaceTimeField& f,
                              const std::function<double(double, double)>& weight);

/// Discrete version of the named space-time norm. `Hs` reads the spatial
/// Sobolev weight over all tau, i.e. ||F||_{L^2_t H^s_x}.
/// Mixed L^inf norms are grid maxima (a lower bound for the continuum norm).
double spacetime_norm(const SpaceTimeField& f, const NormSpec& spec);

/// Iterated || ||g||_{L^q_t} ||_{L^p_x} of a raw time-major array.
double mixed_lebesgue_norm(std::span<const cplx> values, const SpaceTimeGrid& grid,
                           double p, double q);

/// Plain physical L^2 norm of a SpectralField, by Riemann sum.
double l2_norm(const SpectralField& f);

/// Measure of one (xi, tau) cell, recorded in reports.
double frequency_cell_measure(const SpaceTimeGrid& grid);

}  // namespace mblab
