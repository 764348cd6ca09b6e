#include "mblab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mblab/cutoff.hpp"
#include "mblab/norms.hpp"
#include "mblab/propagators.hpp"

namespace mblab {
namespace {

constexpr double kCompatTol = 1e-10;

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

void dealias(std::span<cplx> spectrum, const Grid1D& grid) {
  const long cut = long(grid.size()) / 3;
  for (std::size_t k = 0; k < spectrum.size(); ++k)
    if (std::labs(grid.wavenumber(k)) > cut) spectrum[k] = 0.0;
}

// Mixed (xi, t) spectra of F = eta(t/T) (1/2)(v^2)_x and G = eta(t/T)(uv)_x.
std::pair<std::vector<cplx>, std::vector<cplx>> forcing_modes(std::span<const cplx> u,
                                                              std::span<const cplx> v,
                                                              const SpaceTimeGrid& grid,
                                                              double T) {
  const std::size_t nx = grid.nx(), nt = grid.nt();
  const Grid1D& sg = grid.space();
  std::vector<cplx> F(grid.size()), G(grid.size());
#pragma omp parallel for schedule(static)
  for (std::size_t it = 0; it < nt; ++it) {
    const double cut = eta(grid.t(it) / T);
    std::span<cplx> fs(F.data() + it * nx, nx), gs(G.data() + it * nx, nx);
    if (cut == 0.0) continue;
    std::vector<cplx> a(u.begin() + long(it * nx), u.begin() + long((it + 1) * nx));
    std::vector<cplx> b(v.begin() + long(it * nx), v.begin() + long((it + 1) * nx));
    continuum_forward(a, sg);
    continuum_forward(b, sg);
    dealias(a, sg);
    dealias(b, sg);
    continuum_inverse(a, sg);
    continuum_inverse(b, sg);
    for (std::size_t j = 0; j < nx; ++j) {
      fs[j] = b[j] * b[j];
      gs[j] = a[j] * b[j];
    }
    continuum_forward(fs, sg);
    continuum_forward(gs, sg);
    dealias(fs, sg);
    dealias(gs, sg);
    for (std::size_t k = 0; k < nx; ++k) {
      const cplx dx{0.0, sg.frequency(k)};
      fs[k] *= 0.5 * cut * dx;
      gs[k] *= cut * dx;
    }
  }
  return {std::move(F), std::move(G)};
}

// eta(t) Re D0(W_c^t u0 + D(t)) at t_k = k dt for k < count. `total` holds the
// mixed representation of W_c^t u0 + D on the window; past the window end the
// sum evolves freely from its last slice.
std::vector<double> trace_series(const std::vector<cplx>& total, const SpaceTimeGrid& grid,
                                 double c, std::size_t count) {
  const std::size_t nx = grid.nx(), nt = grid.nt(), k0 = grid.origin_time_index();
  const double dxi = grid.space().frequency_spacing();
  const double dt = grid.dt();
  const double t_last = grid.t(nt - 1);
  std::vector<double> out(count, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < count; ++k) {
    const double t = double(k) * dt;
    const double cut = eta(t);
    if (cut == 0.0) continue;
    cplx acc{};
    if (k0 + k < nt) {
      for (std::size_t ix = 0; ix < nx; ++ix) acc += total[(k0 + k) * nx + ix];
    } else {
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const double xi = grid.space().frequency(ix);
        acc += total[(nt - 1) * nx + ix] * std::polar(1.0, c * xi * xi * xi * (t - t_last));
      }
    }
    out[k] = cut * (acc * dxi / kTwoPi).real();
  }
  return out;
}

std::vector<cplx> free_modes(const SpectralField& u0, const SpaceTimeGrid& grid, double c) {
  const std::size_t nx = grid.nx();
  std::vector<cplx> out(grid.size());
  const auto& spec = u0.spectrum();
  for (std::size_t it = 0; it < grid.nt(); ++it) {
    const double t = grid.t(it);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double xi = grid.space().frequency(ix);
      out[it * nx + ix] = spec[ix] * std::polar(1.0, c * t * xi * xi * xi);
    }
  }
  return out;
}

std::size_t boundary_count(double t_end, double dt) {
  return std::size_t(std::ceil(t_end / dt)) + 1;
}

SpaceTimeGrid make_grid(const SolverParams& p) {
  if (!is_power_of_two(p.nx) || p.nx < 16)
    throw ValidationError("nx must be a power of two >= 16");
  if (!is_power_of_two(p.nt) || p.nt < 16)
    throw ValidationError("nt must be a power of two >= 16");
  if (!(p.box_halfwidth > 0.0)) throw ValidationError("box half-width L must be positive");
  if (!(p.T > 0.0)) throw ValidationError("local time T must be positive");
  if (p.n_beta == 0 || p.n_beta % 16 != 0)
    throw ValidationError("n_beta must be a positive multiple of 16");
  return SpaceTimeGrid(Grid1D(p.nx, p.box_halfwidth), p.nt, 4.0 * p.T);
}

Exponents resolve_exponents(const SolverParams& p, double s) {
  Exponents e = exponents_for(s);
  if (!std::isnan(p.b)) e.b = p.b;
  if (!std::isnan(p.gamma)) e.gamma = p.gamma;
  return e;
}

Extension choose_extension(const HalfLineFunction& h, double s, const SolverParams& p,
                           const Grid1D& grid) {
  if (p.extension) {
    if (*p.extension == Extension::Zero && !zero_extension_admissible(h, s))
      throw ValidationError(
          "zero extension is not controlled in H^s for this data (needs s < 1/2, or "
          "1/2 < s < 3/2 with vanishing value at 0)");
    return *p.extension;
  }
  return halfline_norm_upper(h, std::clamp(s, 0.0, 2.0), grid).extension;
}

SpaceTimeField difference(const SpaceTimeField& a, const SpaceTimeField& b) {
  std::vector<cplx> v(a.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] - b.values()[i];
  return SpaceTimeField::from_values(a.grid(), std::move(v));
}

double rel_l2(const std::vector<double>& got, const std::vector<double>& want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    num += (got[i] - want[i]) * (got[i] - want[i]);
    den += want[i] * want[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

bool ProblemSpec::compatible_u() const {
  return std::abs(u0.boundary_value() - f.boundary_value()) <= kCompatTol;
}
bool ProblemSpec::compatible_v() const {
  return std::abs(v0.boundary_value() - g.boundary_value()) <= kCompatTol;
}

void ProblemSpec::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("alpha must lie in (0, 1) (coupling range of the well-posedness result)");
  if (!(s > 0.0 && s < 2.0))
    throw ValidationError("s must lie in (0, 2) (well-posedness range 0 < s < 2, s != 1/2, 3/2)");
  if (near(s, 0.5) || near(s, 1.5)) {
    std::ostringstream m;
    m << "s=" << s << " excluded: the well-posedness result omits s = 1/2 and s = 3/2";
    throw ValidationError(m.str());
  }
  if (s > 0.5 && !(compatible_u() && compatible_v()))
    throw ValidationError(
        "compatibility u0(0) = f(0), v0(0) = g(0) required within 1e-10 when s > 1/2");
}

Exponents exponents_for(double s) {
  const double m = s < 0.5 ? std::max((3.0 - s) / 6.0, 7.0 / 16.0)
                           : std::max((s + 1.0) / 6.0, 7.0 / 16.0);
  Exponents e;
  e.eps = (0.5 - m) / 4.0;
  e.b = 0.5 - 2.0 * e.eps;
  e.gamma = 0.5 + e.eps;
  return e;
}

std::pair<SpaceTimeField, SpaceTimeField> assemble_forcings(const SpaceTimeField& u,
                                                            const SpaceTimeField& v,
                                                            double T) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("assemble_forcings: grids differ");
  auto [F, G] = forcing_modes(u.values(), v.values(), u.grid(), T);
  continuum_inverse_slices(F, u.grid());
  continuum_inverse_slices(G, u.grid());
  return {SpaceTimeField::from_values(u.grid(), std::move(F)),
          SpaceTimeField::from_values(u.grid(), std::move(G))};
}

std::pair<BoundarySeries, BoundarySeries> boundary_corrections(
    const SpectralField& u0_ext, const SpectralField& v0_ext, const SpaceTimeField& F,
    const SpaceTimeField& G, double alpha, double t_end) {
  const SpaceTimeGrid& grid = F.grid();
  auto series = [&](const SpectralField& d, const SpaceTimeField& forcing, double c) {
    std::vector<cplx> m = forcing.values();
    continuum_forward_slices(m, grid);
    std::vector<cplx> total = free_modes(d, grid, c);
    const auto dm = duhamel_modes(m, grid, c);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] -= dm[i];
    return BoundarySeries{grid.dt(), trace_series(total, grid, c, boundary_count(t_end, grid.dt()))};
  };
  return {series(u0_ext, F, 1.0), series(v0_ext, G, alpha)};
}

SolveContext::SolveContext(const ProblemSpec& spec, const SolverParams& params)
    : params_(params), spec_((spec.validate(), spec)), alpha_(spec.alpha), s_(spec.s),
      exps_(resolve_exponents(params, spec.s)), grid_(make_grid(params)),
      ext_u_(choose_extension(spec.u0, spec.s, params, grid_.space())),
      ext_v_(choose_extension(spec.v0, spec.s, params, grid_.space())),
      u0_ext_(extend(spec.u0, ext_u_, grid_.space())),
      v0_ext_(extend(spec.v0, ext_v_, grid_.space())) {
  init();
}

SolveContext::SolveContext(SpectralField u0_ext, SpectralField v0_ext, double alpha, double s,
                           const SolverParams& params)
    : params_(params), alpha_(alpha), s_(s), exps_(resolve_exponents(params, s)),
      grid_(make_grid(params)), u0_ext_(std::move(u0_ext)), v0_ext_(std::move(v0_ext)) {
  params_.boundary_terms = false;
  if (!(u0_ext_.grid() == grid_.space()) || !(v0_ext_.grid() == grid_.space()))
    throw std::invalid_argument("SolveContext: data grid differs from the solver grid");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in (0, 1]");
  init();
}

void SolveContext::init() {
  free_u_modes_ = free_modes(u0_ext_, grid_, 1.0);
  free_v_modes_ = free_modes(v0_ext_, grid_, alpha_);
  if (has_boundary()) {
    t_boundary_ = std::max({2.0, spec_->f.extent(), spec_->g.extent()});
    w1_u_.emplace(grid_, 1.0, params_.n_beta);
    w1_v_.emplace(grid_, alpha_, params_.n_beta);
  }
}

std::pair<SpaceTimeField, SpaceTimeField> SolveContext::assemble(
    const std::vector<cplx>& du_modes, const std::vector<cplx>& dv_modes) {
  const std::size_t nx = grid_.nx(), nt = grid_.nt();
  auto component = [&](const std::vector<cplx>& free, const std::vector<cplx>& duh, double c,
                       const HalfLineFunction* data, const W1Operator* w1,
                       TailReport* tail) {
    std::vector<cplx> total = free;
    if (!duh.empty())
      for (std::size_t i = 0; i < total.size(); ++i) total[i] -= duh[i];
    std::vector<cplx> phys = total;
    continuum_inverse_slices(phys, grid_);
    if (w1) {
      const std::size_t count = boundary_count(t_boundary_, grid_.dt());
      const std::vector<double> p = trace_series(total, grid_, c, count);
      std::vector<double> h(count);
      for (std::size_t k = 0; k < count; ++k) h[k] = data->at(double(k) * grid_.dt()) - p[k];
      const auto hhat = temporal_fourier_halfline(h, grid_.dt(), w1->quadrature().rhos());
      *tail = estimate_tail(hhat, w1->quadrature(), grid_.dt());
      check_tail(*tail, params_.tail_tol);
      const auto w = w1->apply(hhat);
      for (std::size_t i = 0; i < phys.size(); ++i) phys[i] += 2.0 * w[i].real();
    }
    for (std::size_t it = 0; it < nt; ++it) {
      const double cut = eta(grid_.t(it));
      for (std::size_t ix = 0; ix < nx; ++ix) phys[it * nx + ix] = cut * phys[it * nx + ix].real();
    }
    return SpaceTimeField::from_values(grid_, std::move(phys));
  };
  const bool bnd = has_boundary();
  SpaceTimeField u = component(free_u_modes_, du_modes, 1.0, bnd ? &spec_->f : nullptr,
                               bnd ? &*w1_u_ : nullptr, &tail_u_);
  SpaceTimeField v = component(free_v_modes_, dv_modes, alpha_, bnd ? &spec_->g : nullptr,
                               bnd ? &*w1_v_ : nullptr, &tail_v_);
  return {std::move(u), std::move(v)};
}

std::pair<SpaceTimeField, SpaceTimeField> SolveContext::gamma(const SpaceTimeField& u,
                                                              const SpaceTimeField& v) {
  auto [F, G] = forcing_modes(u.values(), v.values(), grid_, params_.T);
  return assemble(duhamel_modes(F, grid_, 1.0), duhamel_modes(G, grid_, alpha_));
}

std::pair<SpaceTimeField, SpaceTimeField> SolveContext::data_only() {
  return assemble({}, {});
}

double SolveContext::y_norm(const SpaceTimeField& u) const {
  return spacetime_norm(u, NormSpec::xsb(s_, exps_.b)) +
         spacetime_norm(u, NormSpec::vgamma(exps_.gamma));
}

double SolveContext::y_alpha_norm(const SpaceTimeField& v) const {
  return spacetime_norm(v, NormSpec::xsb_alpha(s_, exps_.b, alpha_)) +
         spacetime_norm(v, NormSpec::vgamma(exps_.gamma));
}

QuadrantView restrict_to_quadrant(const SpaceTimeField& u, double T) {
  const SpaceTimeGrid& g = u.grid();
  QuadrantView q;
  const std::size_t j0 = g.space().origin_index(), k0 = g.origin_time_index();
  for (std::size_t j = j0; j < g.nx(); ++j) q.x.push_back(g.space().node(j));
  for (std::size_t k = k0; k < g.nt() && g.t(k) <= T * (1.0 + 1e-12); ++k) q.t.push_back(g.t(k));
  q.values.reserve(q.x.size() * q.t.size());
  for (std::size_t k = 0; k < q.t.size(); ++k)
    for (std::size_t j = 0; j < q.x.size(); ++j) q.values.push_back(u.at(j0 + j, k0 + k).real());
  return q;
}

Residuals compute_residuals(const SpaceTimeField& u, const SpaceTimeField& v,
                            SolveContext& ctx) {
  Residuals r;
  const SpaceTimeGrid& g = ctx.grid();
  const double T = ctx.T(), alpha = ctx.alpha();
  const std::size_t j0 = g.space().origin_index(), k0 = g.origin_time_index();
  const std::size_t nx = g.nx();
  const double dx = g.space().spacing(), dt = g.dt();

  // Boundary and initial conditions.
  std::vector<double> bu, bv, fu, fv;
  for (std::size_t k = k0; k < g.nt() && g.t(k) <= T * (1.0 + 1e-12); ++k) {
    bu.push_back(u.at(j0, k).real());
    bv.push_back(v.at(j0, k).real());
  }
  std::vector<double> iu, iv, du, dv;
  for (std::size_t j = j0; j < nx; ++j) {
    iu.push_back(u.at(j, k0).real());
    iv.push_back(v.at(j, k0).real());
  }
  if (const ProblemSpec* sp = ctx.spec()) {
    for (std::size_t k = 0; k < bu.size(); ++k) {
      fu.push_back(sp->f.at(double(k) * dt));
      fv.push_back(sp->g.at(double(k) * dt));
    }
    for (std::size_t j = j0; j < nx; ++j) {
      du.push_back(sp->u0.at(g.space().node(j)));
      dv.push_back(sp->v0.at(g.space().node(j)));
    }
    if (ctx.has_boundary()) {
      r.bc_u = rel_l2(bu, fu);
      r.bc_v = rel_l2(bv, fv);
    }
  } else {
    for (std::size_t j = j0; j < nx; ++j) {
      du.push_back(ctx.u0_extended().values()[j].real());
      dv.push_back(ctx.v0_extended().values()[j].real());
    }
  }
  r.ic_u = rel_l2(iu, du);
  r.ic_v = rel_l2(iv, dv);

  // One more Gamma.
  auto [gu, gv] = ctx.gamma(u, v);
  const double scale = ctx.y_norm(u) + ctx.y_alpha_norm(v);
  const double change = ctx.y_norm(difference(gu, u)) + ctx.y_alpha_norm(difference(gv, v));
  r.fixed_point = scale > 0.0 ? change / scale : change;

  // Discrete PDE residual on x in [0.5, L/2], interior t nodes of [0, T].
  auto U = [&](std::size_t j, std::size_t k) { return u.at(j, k).real(); };
  auto V = [&](std::size_t j, std::size_t k) { return v.at(j, k).real(); };
  const double L = g.space().half_width();
  double sum_u = 0.0, sum_v = 0.0, max_u = 0.0, max_v = 0.0;
  for (std::size_t k = k0 + 1; k + 1 < g.nt() && g.t(k + 1) <= T * (1.0 + 1e-12); ++k) {
    double su = 0.0, sv = 0.0;
    for (std::size_t j = j0; j + 2 < nx; ++j) {
      const double x = g.space().node(j);
      if (x < 0.5 || x > 0.5 * L) continue;
      auto d3 = [&](auto&& W) {
        return (-W(j - 2, k) + 2.0 * W(j - 1, k) - 2.0 * W(j + 1, k) + W(j + 2, k)) /
               (2.0 * dx * dx * dx);
      };
      auto d1 = [&](auto&& W) { return (W(j + 1, k) - W(j - 1, k)) / (2.0 * dx); };
      auto dtt = [&](auto&& W) { return (W(j, k + 1) - W(j, k - 1)) / (2.0 * dt); };
      const double ru = dtt(U) + d3(U) + V(j, k) * d1(V);
      const double uv_x = (U(j + 1, k) * V(j + 1, k) - U(j - 1, k) * V(j - 1, k)) / (2.0 * dx);
      const double rv = dtt(V) + alpha * d3(V) + uv_x;
      su += ru * ru * dx;
      sv += rv * rv * dx;
    }
    sum_u += su * dt;
    sum_v += sv * dt;
    max_u = std::max(max_u, std::sqrt(su));
    max_v = std::max(max_v, std::sqrt(sv));
  }
  r.pde_u = std::sqrt(sum_u);
  r.pde_v = std::sqrt(sum_v);
  r.pde_floor = (T * max_u) * (T * max_u) + (T * max_v) * (T * max_v);
  return r;
}

namespace {

struct Attempt {
  std::optional<std::pair<SpaceTimeField, SpaceTimeField>> result;
  std::vector<IterationRecord> records;
};

Attempt run_picard(SolveContext& ctx) {
  Attempt a;
  const SolverParams& p = ctx.params();
  auto [u, v] = ctx.data_only();
  double prev = 0.0;
  int bad = 0;
  for (int k = 1; k <= p.max_iters; ++k) {
    auto [u2, v2] = ctx.gamma(u, v);
    IterationRecord rec;
    rec.du = ctx.y_norm(difference(u2, u));
    rec.dv = ctx.y_alpha_norm(difference(v2, v));
    const double diff = rec.du + rec.dv;
    const double scale = ctx.y_norm(u2) + ctx.y_alpha_norm(v2);
    rec.ratio = (k > 1 && prev > 0.0) ? diff / prev : 0.0;
    a.records.push_back(rec);
    u = std::move(u2);
    v = std::move(v2);
    if (!std::isfinite(diff)) return a;
    if (diff <= p.picard_tol * scale) {
      a.result.emplace(std::move(u), std::move(v));
      return a;
    }
    bad = rec.ratio >= 1.0 ? bad + 1 : 0;
    if (bad >= 3) return a;
    prev = diff;
  }
  return a;
}

Solution finish(SolveContext& ctx, std::pair<SpaceTimeField, SpaceTimeField> uv,
                IterationReport report) {
  report.converged = true;
  report.accepted_T = ctx.T();
  report.extension_u = ctx.extension_u();
  report.extension_v = ctx.extension_v();
  report.exponents = ctx.exponents();
  report.cell_measure = frequency_cell_measure(ctx.grid());
  report.residuals = compute_residuals(uv.first, uv.second, ctx);
  report.tail_u = ctx.last_tail_u();
  report.tail_v = ctx.last_tail_v();
  return {std::move(uv.first), std::move(uv.second), std::move(report)};
}

[[noreturn]] void fail(const IterationReport& report, const std::vector<IterationRecord>& last) {
  std::vector<double> ratios;
  for (const auto& r : last) ratios.push_back(r.ratio);
  std::ostringstream m;
  m << "Picard iteration did not contract for T in {";
  for (std::size_t i = 0; i < report.attempted_T.size(); ++i)
    m << (i ? ", " : "") << report.attempted_T[i];
  m << "}; last ratios:";
  for (std::size_t i = ratios.size() > 5 ? ratios.size() - 5 : 0; i < ratios.size(); ++i)
    m << ' ' << ratios[i];
  m << ". Reduce the data size or T.";
  throw NonConvergenceError(m.str(), ratios);
}

}  // namespace

Solution picard_solve(const ProblemSpec& spec, const SolverParams& params) {
  spec.validate();
  IterationReport report;
  report.compatible = spec.compatible_u() && spec.compatible_v();
  SolverParams p = params;
  std::vector<IterationRecord> last;
  for (int h = 0; h <= params.max_halvings; ++h) {
    report.attempted_T.push_back(p.T);
    SolveContext ctx(spec, p);
    Attempt a = run_picard(ctx);
    if (a.result) {
      report.iterations = std::move(a.records);
      return finish(ctx, std::move(*a.result), std::move(report));
    }
    last = std::move(a.records);
    p.T *= 0.5;
  }
  fail(report, last);
}

Solution ivp_solve(const SpectralField& u0_ext, const SpectralField& v0_ext, double alpha,
                   double s, const SolverParams& params) {
  IterationReport report;
  SolverParams p = params;
  std::vector<IterationRecord> last;
  for (int h = 0; h <= params.max_halvings; ++h) {
    report.attempted_T.push_back(p.T);
    SolveContext ctx(u0_ext, v0_ext, alpha, s, p);
    Attempt a = run_picard(ctx);
    if (a.result) {
      report.iterations = std::move(a.records);
      return finish(ctx, std::move(*a.result), std::move(report));
    }
    last = std::move(a.records);
    p.T *= 0.5;
  }
  fail(report, last);
}

}  // namespace mblab
