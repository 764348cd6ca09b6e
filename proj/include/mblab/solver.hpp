#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mblab/boundary.hpp"
#include "mblab/field.hpp"
#include "mblab/halfline.hpp"

namespace mblab {

/// Coupling, regularity, and the four data functions. Boundary data carry
/// the index (s + 1)/3.
struct ProblemSpec {
  double alpha = 0.5;
  double s = 1.0;
  HalfLineFunction u0, v0, f, g;

  /// u0(0) = f(0) and v0(0) = g(0) within 1e-10.
  bool compatible_u() const;
  bool compatible_v() const;

  /// Throws ValidationError naming the violated constraint.
  void validate() const;
};

/// b = 1/2 - 2 eps and gamma = 1/2 + eps with eps = (1/2 - m)/4, where
/// m = max((3 - s)/6, 7/16) for s < 1/2 and max((s + 1)/6, 7/16) otherwise.
struct Exponents {
  double eps = 0.0;
  double b = 0.0;
  double gamma = 0.0;
};
Exponents exponents_for(double s);

struct SolverParams {
  std::size_t nx = 512;
  double box_halfwidth = 20.0;
  std::size_t nt = 256;
  double T = 0.1;               ///< local time; the window is [-4T, 4T)
  std::size_t n_beta = 2048;
  double picard_tol = 1e-10;    ///< relative Y x Y_alpha difference
  int max_iters = 60;
  int max_halvings = 4;
  double tail_tol = 5e-2;
  /// Fixed extension for both initial data; empty selects the menu minimum.
  std::optional<Extension> extension;
  bool boundary_terms = true;   ///< false: whole-line problem (no p, q, W1)
  /// Overrides for b and gamma; NaN means "derive from s".
  double b = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
};

struct IterationRecord {
  double du = 0.0;     ///< ||u_{k+1} - u_k||_Y
  double dv = 0.0;     ///< ||v_{k+1} - v_k||_{Y_alpha}
  double ratio = 0.0;  ///< (du + dv) over the previous step's value; 0 on the first
};

struct Residuals {
  double bc_u = 0.0, bc_v = 0.0;  ///< relative L2 on t in [0, T] at x = 0
  double ic_u = 0.0, ic_v = 0.0;  ///< relative L2 on x >= 0 at t = 0
  double fixed_point = 0.0;       ///< relative change under one more Gamma
  double pde_u = 0.0, pde_v = 0.0;  ///< interior L2 of the discrete PDE residual
  double pde_floor = 0.0;         ///< sum over components of (T max_t ||r(., t)||)^2
};

struct IterationReport {
  std::vector<IterationRecord> iterations;
  bool converged = false;
  double accepted_T = 0.0;
  std::vector<double> attempted_T;
  Extension extension_u = Extension::Reflect1;
  Extension extension_v = Extension::Reflect1;
  Exponents exponents;
  TailReport tail_u, tail_v;
  Residuals residuals;
  bool compatible = true;
  double cell_measure = 0.0;   ///< dxi dtau of the window grid
};

struct Solution {
  SpaceTimeField u, v;
  IterationReport report;
};

/// F = eta(t/T) (1/2) d_x(v^2), G = eta(t/T) d_x(u v); every factor and product
/// is truncated to |k| <= n/3 (2/3 rule).
std::pair<SpaceTimeField, SpaceTimeField> assemble_forcings(const SpaceTimeField& u,
                                                            const SpaceTimeField& v,
                                                            double T);

/// Uniform boundary time grid t_k = k dt, k = 0..count-1.
struct BoundarySeries {
  double dt = 0.0;
  std::vector<double> values;
};

/// p(t) = eta(t) D0(W^t u0) - eta(t) D0(int_0^t W^{t-t'} F dt') on [0, t_end],
/// and q likewise with W_alpha and G. Uses the window's dt; past the window
/// the Duhamel term evolves freely (the forcings vanish there).
std::pair<BoundarySeries, BoundarySeries> boundary_corrections(
    const SpectralField& u0_ext, const SpectralField& v0_ext, const SpaceTimeField& F,
    const SpaceTimeField& G, double alpha, double t_end);

/// Everything fixed during one solve: grid, extended data, free evolutions,
/// and the two boundary operators.
class SolveContext {
 public:
  SolveContext(const ProblemSpec& spec, const SolverParams& params);
  /// Whole-line problem from already-extended data.
  SolveContext(SpectralField u0_ext, SpectralField v0_ext, double alpha, double s,
               const SolverParams& params);

  const SpaceTimeGrid& grid() const noexcept { return grid_; }
  double alpha() const noexcept { return alpha_; }
  double T() const noexcept { return params_.T; }
  const SolverParams& params() const noexcept { return params_; }
  const Exponents& exponents() const noexcept { return exps_; }
  const SpectralField& u0_extended() const noexcept { return u0_ext_; }
  const SpectralField& v0_extended() const noexcept { return v0_ext_; }
  bool has_boundary() const noexcept { return spec_.has_value() && params_.boundary_terms; }
  const ProblemSpec* spec() const noexcept { return spec_ ? &*spec_ : nullptr; }
  Extension extension_u() const noexcept { return ext_u_; }
  Extension extension_v() const noexcept { return ext_v_; }
  const TailReport& last_tail_u() const noexcept { return tail_u_; }
  const TailReport& last_tail_v() const noexcept { return tail_v_; }

  /// (Gamma_1, Gamma_2) of the integral formulation of
  ///   u_t + u_xxx + v v_x = 0,  v_t + alpha v_xxx + (u v)_x = 0,
  /// so the Duhamel terms enter with a minus sign. Real parts taken.
  std::pair<SpaceTimeField, SpaceTimeField> gamma(const SpaceTimeField& u,
                                                  const SpaceTimeField& v);
  /// Gamma with both Duhamel terms dropped (the initial Picard guess).
  std::pair<SpaceTimeField, SpaceTimeField> data_only();

  double y_norm(const SpaceTimeField& u) const;        ///< X^{s,b} + V^gamma
  double y_alpha_norm(const SpaceTimeField& v) const;  ///< X^{s,b}_alpha + V^gamma

 private:
  void init();
  std::pair<SpaceTimeField, SpaceTimeField> assemble(const std::vector<cplx>& du_modes,
                                                     const std::vector<cplx>& dv_modes);

  SolverParams params_;
  std::optional<ProblemSpec> spec_;
  double alpha_, s_;
  Exponents exps_;
  SpaceTimeGrid grid_;
  Extension ext_u_ = Extension::Reflect1, ext_v_ = Extension::Reflect1;
  SpectralField u0_ext_, v0_ext_;
  std::vector<cplx> free_u_modes_, free_v_modes_;  // mixed (xi, t) representation
  std::optional<W1Operator> w1_u_, w1_v_;
  double t_boundary_ = 2.0;
  TailReport tail_u_, tail_v_;
};

/// Picard iteration from the data-only guess; halves T up to
/// params.max_halvings times on failure, then throws NonConvergenceError.
Solution picard_solve(const ProblemSpec& spec, const SolverParams& params);

/// Same iteration for the whole-line problem (boundary terms disabled).
Solution ivp_solve(const SpectralField& u0_ext, const SpectralField& v0_ext, double alpha,
                   double s, const SolverParams& params);

/// Nodes with x >= 0 and 0 <= t <= T, real parts, time-major.
struct QuadrantView {
  std::vector<double> x, t;
  std::vector<double> values;  ///< values[it * x.size() + ix]
  double at(std::size_t ix, std::size_t it) const { return values[it * x.size() + ix]; }
};
QuadrantView restrict_to_quadrant(const SpaceTimeField& u, double T);

/// Post-hoc residuals of a converged pair on its own grid.
Residuals compute_residuals(const SpaceTimeField& u, const SpaceTimeField& v,
                            SolveContext& ctx);

}  // namespace mblab
