#include "mblab/boundary.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "mblab/cutoff.hpp"

namespace mblab {
namespace {

// m_j(theta) = int_{-1}^{1} v^j e^{-i theta v} dv for j = 0, 1, 2.
struct Moments {
  cplx m0, m1, m2;
};

Moments filon_moments(double th) {
  const cplx i1{0.0, 1.0};
  if (std::abs(th) < 0.25) {
    const double t2 = th * th, t4 = t2 * t2, t6 = t4 * t2, t8 = t4 * t4;
    const double m0 = 2.0 * (1.0 - t2 / 6.0 + t4 / 120.0 - t6 / 5040.0 + t8 / 362880.0);
    const double m1 = 2.0 * th * (1.0 / 3.0 - t2 / 30.0 + t4 / 840.0 - t6 / 45360.0);
    const double m2 =
        2.0 * (1.0 / 3.0 - t2 / 10.0 + t4 / 168.0 - t6 / 6480.0 + t8 / 403200.0);
    return {m0, -i1 * m1, m2};
  }
  const double s = std::sin(th), c = std::cos(th);
  const double m0 = 2.0 * s / th;
  const double m1 = 2.0 * (s - th * c) / (th * th);
  const double m2 = 2.0 * ((th * th - 2.0) * s + 2.0 * th * c) / (th * th * th);
  return {m0, -i1 * m1, m2};
}

}  // namespace

std::vector<cplx> temporal_fourier_halfline(std::span<const double> h, double dt,
                                            std::span<const double> taus) {
  std::vector<cplx> out(taus.size());
  if (h.size() < 2) return out;
  const std::size_t n_int = h.size() - 1;
  const std::size_t n_pairs = n_int / 2;
  const bool odd = n_int % 2 == 1;

#pragma omp parallel for schedule(static)
  for (std::size_t q = 0; q < taus.size(); ++q) {
    const double tau = taus[q];
    const Moments m = filon_moments(tau * dt);
    const cplx wa = 0.5 * (m.m2 - m.m1), wb = m.m0 - m.m2, wc = 0.5 * (m.m2 + m.m1);
    cplx acc{};
    for (std::size_t p = 0; p < n_pairs; ++p) {
      const std::size_t k = 2 * p;
      const double centre = double(k + 1) * dt;
      acc += std::polar(1.0, -tau * centre) * (h[k] * wa + h[k + 1] * wb + h[k + 2] * wc);
    }
    acc *= dt;
    if (odd) {
      const double half = 0.5 * dt;
      const Moments l = filon_moments(tau * half);
      const double centre = (double(n_int) - 0.5) * dt;
      acc += half * std::polar(1.0, -tau * centre) *
             (h[n_int - 1] * 0.5 * (l.m0 - l.m1) + h[n_int] * 0.5 * (l.m0 + l.m1));
    }
    out[q] = acc;
  }
  return out;
}

std::vector<cplx> temporal_fourier_halfline(const HalfLineFunction& h,
                                            std::span<const double> taus) {
  return temporal_fourier_halfline(h.samples(), h.spacing(), taus);
}

BoundaryQuadrature::BoundaryQuadrature(std::size_t n_beta, double t_max) : t_max_(t_max) {
  if (n_beta == 0 || n_beta % kPanelOrder != 0)
    throw ValidationError("BoundaryQuadrature: n_beta must be a positive multiple of 16");
  if (!(t_max > 0.0)) throw ValidationError("BoundaryQuadrature: t_max must be positive");
  using GL = boost::math::quadrature::gauss<double, kPanelOrder>;
  const auto& x = GL::abscissa();
  const auto& w = GL::weights();
  std::vector<double> ref_x, ref_w;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ref_x.push_back(-x[i]);
    ref_w.push_back(w[i]);
    if (x[i] != 0.0) {
      ref_x.push_back(x[i]);
      ref_w.push_back(w[i]);
    }
  }
  const std::size_t panels = n_beta / kPanelOrder;
  const double width = panel_width();
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = std::cbrt(width * double(p)), b = std::cbrt(width * double(p + 1));
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < ref_x.size(); ++i) {
      const double beta = mid + half * ref_x[i];
      beta_.push_back(beta);
      weight_.push_back(half * ref_w[i]);
      rho_.push_back(beta * beta * beta);
    }
  }
}

TailReport estimate_tail(std::span<const cplx> hhat, const BoundaryQuadrature& quad,
                         double t_min) {
  TailReport r;
  r.rho_max = quad.rho_max();
  const auto& beta = quad.betas();
  const auto& w = quad.weights();
  for (std::size_t i = 0; i < hhat.size(); ++i)
    r.mass += 3.0 * beta[i] * beta[i] * w[i] * std::abs(hhat[i]);
  if (r.mass == 0.0) return r;

  // Envelopes over the last panel and the panel ending at rho_max / 2.
  const std::size_t P = quad.n_panels(), K = BoundaryQuadrature::kPanelOrder;
  auto panel_max = [&](std::size_t p) {
    double m = 0.0;
    for (std::size_t i = p * K; i < (p + 1) * K; ++i) m = std::max(m, std::abs(hhat[i]));
    return m;
  };
  const double top = panel_max(P - 1);
  const double mid = panel_max(std::max<std::size_t>(P / 2, 1) - 1);
  const double ratio = double(P) / double(std::max<std::size_t>(P / 2, 1));
  r.decay_exponent = (top > 0.0 && mid > 0.0) ? std::log(mid / top) / std::log(ratio) : 10.0;
  if (r.decay_exponent > 1.0)
    r.tail = top * r.rho_max / (r.decay_exponent - 1.0);
  else
    r.tail = 2.0 * top / t_min;
  r.tail /= kTwoPi;
  r.mass /= kTwoPi;
  r.relative = r.tail / r.mass;
  return r;
}

void check_tail(const TailReport& report, double tolerance) {
  if (report.relative > tolerance) {
    std::ostringstream msg;
    msg << "boundary quadrature tail " << report.relative << " (relative) exceeds "
        << tolerance << " at rho_max = " << report.rho_max
        << "; fitted decay exponent " << report.decay_exponent
        << ". Increase n_beta or check boundary compatibility.";
    throw QuadratureTailError(msg.str(), report.relative);
  }
}

cplx w1_spatial_factor(double beta, double y) {
  const double by = beta * y;
  if (by <= -2.0) return {0.0, 0.0};
  const double r = cutoff_rho(by);
  return r * std::exp(cplx{-0.5 * std::sqrt(3.0) * by, -0.5 * by});
}

W1Operator::W1Operator(SpaceTimeGrid grid, double c, std::size_t n_beta)
    : grid_(std::move(grid)), c_(c), scale_(1.0 / std::cbrt(c)),
      quad_(n_beta, grid_.horizon()) {
  if (!(c > 0.0 && c <= 1.0))
    throw ValidationError("W1Operator: dispersion coefficient outside (0, 1]");
  const std::size_t nx = grid_.nx(), nt = grid_.nt(), nb = quad_.size();
  space_.resize(Eigen::Index(nx), Eigen::Index(nb));
  time_.resize(Eigen::Index(nb), Eigen::Index(nt));
  const auto& beta = quad_.betas();
  const auto& rho = quad_.rhos();
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t ix = 0; ix < nx; ++ix)
      space_(Eigen::Index(ix), Eigen::Index(b)) =
          w1_spatial_factor(beta[b], scale_ * grid_.space().node(ix));
    for (std::size_t it = 0; it < nt; ++it)
      time_(Eigen::Index(b), Eigen::Index(it)) = std::polar(1.0, rho[b] * grid_.t(it));
  }
}

std::vector<cplx> W1Operator::apply(std::span<const cplx> hhat) const {
  const auto& beta = quad_.betas();
  const auto& w = quad_.weights();
  Eigen::VectorXcd coef(Eigen::Index(quad_.size()));
  for (std::size_t b = 0; b < quad_.size(); ++b)
    coef(Eigen::Index(b)) = 3.0 / kTwoPi * w[b] * beta[b] * beta[b] * hhat[b];
  // Column-major nx x nt is exactly the time-major layout.
  Eigen::MatrixXcd out = space_ * (coef.asDiagonal() * time_);
  return {out.data(), out.data() + out.size()};
}

cplx w1_point(std::span<const cplx> hhat, const BoundaryQuadrature& quad, double x,
              double t, double c) {
  const auto& beta = quad.betas();
  const auto& w = quad.weights();
  const auto& rho = quad.rhos();
  const double y = x / std::cbrt(c);
  cplx acc{};
  for (std::size_t b = 0; b < quad.size(); ++b)
    acc += w[b] * beta[b] * beta[b] * hhat[b] * w1_spatial_factor(beta[b], y) *
           std::polar(1.0, rho[b] * t);
  return 3.0 / kTwoPi * acc;
}

SpaceTimeField w1_apply(const HalfLineFunction& h, const SpaceTimeGrid& grid, double c,
                        std::size_t n_beta, double tail_tol, TailReport* report) {
  W1Operator op(grid, c, n_beta);
  const auto hhat = temporal_fourier_halfline(h, op.quadrature().rhos());
  const TailReport tail = estimate_tail(hhat, op.quadrature(), grid.dt());
  if (report) *report = tail;
  check_tail(tail, tail_tol);
  return SpaceTimeField::from_values(grid, op.apply(hhat));
}

SpaceTimeField w0_solve_linear_ibvp(const HalfLineFunction& h, const SpaceTimeGrid& grid,
                                    double c, std::size_t n_beta, double tail_tol,
                                    TailReport* report) {
  std::vector<cplx> v = w1_apply(h, grid, c, n_beta, tail_tol, report).values();
  for (auto& z : v) z = 2.0 * z.real();
  return SpaceTimeField::from_values(grid, std::move(v));
}

Trace boundary_trace(const SpaceTimeField& f, double x0) {
  const SpaceTimeGrid& g = f.grid();
  const double dx = g.space().spacing();
  const double pos = (x0 + g.space().half_width()) / dx;
  const double nearest = std::round(pos);
  Trace tr;
  tr.values.resize(g.nt());
  if (std::abs(pos - nearest) < 1e-12 && nearest >= 0.0 && nearest < double(g.nx())) {
    const auto j = std::size_t(nearest);
    for (std::size_t it = 0; it < g.nt(); ++it) tr.values[it] = f.at(j, it);
    return tr;
  }
  tr.interpolated = true;
  const long j0 = long(std::floor(pos)) - 1;
  const long n = long(g.nx());
  double wts[4];
  for (int a = 0; a < 4; ++a) {
    double l = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) l *= (pos - double(j0 + b)) / double(a - b);
    wts[a] = l;
  }
  for (std::size_t it = 0; it < g.nt(); ++it) {
    cplx acc{};
    for (int a = 0; a < 4; ++a) {
      const long j = ((j0 + a) % n + n) % n;  // periodic box
      acc += wts[a] * f.at(std::size_t(j), it);
    }
    tr.values[it] = acc;
  }
  return tr;
}

std::vector<cplx> boundary_trace_spectral(const SpaceTimeField& f) {
  const SpaceTimeGrid& g = f.grid();
  const auto& spec = f.spectrum();
  std::vector<cplx> col(g.nt());
  const double dxi = g.space().frequency_spacing();
  for (std::size_t kt = 0; kt < g.nt(); ++kt) {
    cplx acc{};
    for (std::size_t kx = 0; kx < g.nx(); ++kx) acc += spec[g.index(kx, kt)];
    col[kt] = acc * dxi / kTwoPi;
  }
  continuum_inverse(col, g.time());
  return col;
}

}  // namespace mblab
