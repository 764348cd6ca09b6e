#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mblab/field.hpp"
#include "mblab/halfline.hpp"

namespace mblab {

/// h_hat(tau) = int_0^inf e^{-i tau t} h(t) dt for samples h(k dt), k = 0..K.
/// Filon-Simpson: the quadratic interpolant on each pair of intervals is
/// integrated against the exact exponential; an odd trailing interval uses
/// the linear rule. Exact phase means large tau dt is not a problem.
std::vector<cplx> temporal_fourier_halfline(std::span<const double> samples, double dt,
                                            std::span<const double> taus);
std::vector<cplx> temporal_fourier_halfline(const HalfLineFunction& h,
                                            std::span<const double> taus);

/// Nodes and weights for int_0^{beta_max} g(beta) d beta.
///
/// Panels have equal width pi / t_max in rho = beta^3, so the phase e^{i rho t}
/// turns by at most pi per panel for |t| <= t_max; each panel carries a
/// 16-point Gauss-Legendre rule in beta (smooth in beta, unlike in rho near 0).
class BoundaryQuadrature {
 public:
  static constexpr std::size_t kPanelOrder = 16;

  BoundaryQuadrature(std::size_t n_beta, double t_max);

  std::size_t size() const noexcept { return beta_.size(); }
  double t_max() const noexcept { return t_max_; }
  double panel_width() const noexcept { return kPi / t_max_; }
  double rho_max() const noexcept { return panel_width() * double(n_panels()); }
  double beta_max() const noexcept { return std::cbrt(rho_max()); }
  std::size_t n_panels() const noexcept { return beta_.size() / kPanelOrder; }
  const std::vector<double>& betas() const noexcept { return beta_; }
  const std::vector<double>& weights() const noexcept { return weight_; }
  /// beta^3 at each node, i.e. the temporal frequencies at which h_hat is needed.
  const std::vector<double>& rhos() const noexcept { return rho_; }

 private:
  double t_max_;
  std::vector<double> beta_, weight_, rho_;
};

/// Truncation diagnostics for int_{rho > rho_max} h_hat e^{i rho t} d rho.
struct TailReport {
  double rho_max = 0.0;
  double decay_exponent = 0.0;  ///< fitted k in |h_hat| ~ rho^{-k}
  double tail = 0.0;            ///< estimated absolute tail
  double mass = 0.0;            ///< int_0^{rho_max} |h_hat| d rho
  double relative = 0.0;        ///< tail / mass (0 when h_hat = 0)
};

/// Power-law fit of the |h_hat| envelope between rho_max/2 and rho_max. For
/// k > 1 the tail is |h_hat(rho_max)| rho_max / (k - 1); otherwise the
/// oscillatory bound 2 |h_hat(rho_max)| / t_min is used.
TailReport estimate_tail(std::span<const cplx> hhat, const BoundaryQuadrature& quad,
                         double t_min);

/// Throws QuadratureTailError when report.relative > tolerance.
void check_tail(const TailReport& report, double tolerance);

/// The boundary operator of the linear problem u_t + c u_xxx = 0 on a fixed
/// space-time grid:
///   W1 h(x, t) = 3/(2 pi) int_0^inf e^{beta(-sqrt3/2 - i/2) y} e^{i beta^3 t}
///                rho(beta y) beta^2 h_hat(beta^3) d beta,   y = x / cbrt(c).
/// The x and t factors separate, so the whole grid is one complex matrix
/// product E diag(w beta^2 h_hat) P; both factors are built once.
class W1Operator {
 public:
  W1Operator(SpaceTimeGrid grid, double c, std::size_t n_beta);

  const SpaceTimeGrid& grid() const noexcept { return grid_; }
  const BoundaryQuadrature& quadrature() const noexcept { return quad_; }
  double dispersion() const noexcept { return c_; }
  double spatial_scale() const noexcept { return scale_; }

  /// Time-major complex values of W1 h given h_hat at quadrature().rhos().
  std::vector<cplx> apply(std::span<const cplx> hhat) const;

 private:
  SpaceTimeGrid grid_;
  double c_;
  double scale_;
  BoundaryQuadrature quad_;
  Eigen::MatrixXcd space_;  // nx x n_beta
  Eigen::MatrixXcd time_;   // n_beta x nt
};

/// Spatial factor e^{beta(-sqrt3/2 - i/2) y} rho(beta y); exactly 0 for beta y <= -2.
cplx w1_spatial_factor(double beta, double y);

/// W1 h at a single point (same quadrature, no grid).
cplx w1_point(std::span<const cplx> hhat, const BoundaryQuadrature& quad, double x,
              double t, double c);

/// Grid evaluation of W1 h with dispersion c in (0, 1]. Raises
/// QuadratureTailError when the relative tail exceeds tail_tol.
SpaceTimeField w1_apply(const HalfLineFunction& h, const SpaceTimeGrid& grid, double c,
                        std::size_t n_beta = 2048, double tail_tol = 5e-2,
                        TailReport* report = nullptr);

/// 2 Re W1 h: the real solution of the linear half-line problem with zero
/// initial data and boundary trace h.
SpaceTimeField w0_solve_linear_ibvp(const HalfLineFunction& h, const SpaceTimeGrid& grid,
                                    double c, std::size_t n_beta = 2048,
                                    double tail_tol = 5e-2, TailReport* report = nullptr);

struct Trace {
  std::vector<cplx> values;  ///< one value per time node
  bool interpolated = false; ///< x0 off-grid: local 4-point polynomial used
};

/// D_0 F as a time series: the slice at x0 when x0 is a node, otherwise
/// cubic (4-point) Lagrange interpolation in x, flagged.
Trace boundary_trace(const SpaceTimeField& f, double x0 = 0.0);

/// D_0 F via the spectral inversion (dxi dtau / 4 pi^2) sum e^{i t tau} F_hat(xi, tau).
std::vector<cplx> boundary_trace_spectral(const SpaceTimeField& f);

}  // namespace mblab
