// Acceptance suite: one PASS/FAIL line per criterion, tolerances and
// runtime limits pinned. Exit status is the number of failed criteria.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mblab/boundary.hpp"
#include "mblab/conserved.hpp"
#include "mblab/energy_monitor.hpp"
#include "mblab/norms.hpp"
#include "mblab/probes.hpp"
#include "mblab/propagators.hpp"
#include "mblab/resonance.hpp"
#include "mblab/solver.hpp"

using namespace mblab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int failures = 0;
std::vector<int> selected;  // empty runs every criterion

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end()) return;
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = sec < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s [%d] %s: %s; %.1f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), sec, limit_s);
  std::fflush(stdout);
}

SpectralField random_field(const Grid1D& g, std::mt19937_64& rng, long kmax) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<cplx> spec(g.size(), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const long w = g.wavenumber(k);
    if (w >= 0 && w <= kmax && !g.is_nyquist(k)) spec[k] = {U(rng), U(rng)};
  }
  for (std::size_t k = 1; k < g.size(); ++k) {
    const long w = g.wavenumber(k);
    if (w < 0 && -w <= kmax) spec[k] = std::conj(spec[g.size() - k]);
  }
  spec[0] = spec[0].real();
  return SpectralField::from_spectrum(g, std::move(spec));
}

HalfLineFunction gaussian(double amp, double s, double width = 1.0) {
  return HalfLineFunction::from_function(
      [=](double x) { return amp * std::exp(-x * x / (2.0 * width * width)); }, 12.0, 1200, s);
}

SolverParams reference_params() {
  SolverParams p;
  p.nx = 512;
  p.nt = 256;
  p.box_halfwidth = 20.0;
  p.n_beta = 2048;
  p.T = 0.1;
  return p;
}

ProblemSpec gaussian_problem(double amp, double s, double du = 0.0) {
  const double sb = (s + 1.0) / 3.0;
  // u0 and f carry the same perturbation, which keeps the corner compatible.
  auto bumped = [&](double reg) {
    return HalfLineFunction::from_function(
        [=](double x) { return amp * std::exp(-0.5 * x * x) + du * std::exp(-x * x); }, 12.0, 1200, reg);
  };
  return {0.5, s, bumped(s), gaussian(amp, s), bumped(sb), gaussian(amp, sb)};
}

// L2 over the quadrant x >= 0, 0 <= t <= T of u - u2 and v - v2.
double quadrant_difference(const Solution& a, const Solution& b) {
  const double T = a.report.accepted_T;
  auto qa = restrict_to_quadrant(a.u, T), qb = restrict_to_quadrant(b.u, T);
  auto ra = restrict_to_quadrant(a.v, T), rb = restrict_to_quadrant(b.v, T);
  const double cell = (qa.x[1] - qa.x[0]) * (qa.t.size() > 1 ? qa.t[1] - qa.t[0] : 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < qa.values.size(); ++i)
    acc += (std::pow(qa.values[i] - qb.values[i], 2) + std::pow(ra.values[i] - rb.values[i], 2)) * cell;
  return std::sqrt(acc);
}

// Interior L2 residual of u_t + c u_xxx = 0 (centered stencils) on
// x in [0.5, L/2], interior nodes of 0 < t <= t_max.
double linear_pde_residual(const SpaceTimeField& u, double c, double t_max) {
  const SpaceTimeGrid& g = u.grid();
  const std::size_t j0 = g.space().origin_index(), k0 = g.origin_time_index();
  const double dx = g.space().spacing(), dt = g.dt(), L = g.space().half_width();
  auto U = [&](std::size_t j, std::size_t k) { return u.at(j, k).real(); };
  double acc = 0.0;
  for (std::size_t k = k0 + 1; k + 1 < g.nt() && g.t(k + 1) <= t_max * (1.0 + 1e-12); ++k)
    for (std::size_t j = j0; j + 2 < g.nx(); ++j) {
      const double x = g.space().node(j);
      if (x < 0.5 || x > 0.5 * L) continue;
      const double d3 = (-U(j - 2, k) + 2.0 * U(j - 1, k) - 2.0 * U(j + 1, k) + U(j + 2, k)) /
                        (2.0 * dx * dx * dx);
      const double r = (U(j, k + 1) - U(j, k - 1)) / (2.0 * dt) + c * d3;
      acc += r * r * dx * dt;
    }
  return std::sqrt(acc);
}

std::vector<double> observed_orders(double (*h)(double), std::vector<double>* res) {
  auto data = HalfLineFunction::from_function(h, 30.0, 30000, 1.0);
  for (std::size_t level = 0; level < 4; ++level) {
    SpaceTimeGrid g(Grid1D(std::size_t(128) << level, 8.0), std::size_t(64) << level, 2.0);
    auto u = w0_solve_linear_ibvp(data, g, 1.0, 2048, 1.0);
    res->push_back(linear_pde_residual(u, 1.0, 1.0));
  }
  std::vector<double> orders;
  for (std::size_t i = 1; i < res->size(); ++i) orders.push_back(std::log2((*res)[i - 1] / (*res)[i]));
  return orders;
}

double exp_sin(double t) { return std::exp(-t) * std::sin(t); }
double cubic_exp(double t) { return t * t * t * std::exp(-t); }

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  criterion(1, "propagator exactness", 10.0, [] {
    Grid1D g(64, kPi);
    double phase_err = 0.0;
    for (long k : {1L, 2L, 5L})
      for (double c : {1.0, 0.5})
        for (double t : {0.3, 1.0, kPi}) {
          auto f = SpectralField::from_function(g, [k](double x) { return std::exp(cplx{0.0, double(k) * x}); });
          auto w = airy_evolve(f, t, c);
          const cplx ph = std::exp(cplx{0.0, c * t * double(k * k * k)});
          for (std::size_t j = 0; j < g.size(); ++j)
            phase_err = std::max(phase_err, std::abs(w.values()[j] - ph * f.values()[j]));
        }
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    Grid1D h(256, 12.0);
    double unit = 0.0, group = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      auto f = random_field(h, rng, 60);
      const double c = trial % 2 ? 1.0 : 0.5, t1 = U(rng), t2 = U(rng);
      auto a = airy_evolve(airy_evolve(f, t1, c), t2, c);
      auto b = airy_evolve(f, t1 + t2, c);
      for (std::size_t j = 0; j < h.size(); ++j) group = std::max(group, std::abs(a.values()[j] - b.values()[j]));
      unit = std::max(unit, std::abs(l2_norm(airy_evolve(f, t1, c)) / l2_norm(f) - 1.0));
    }
    return Outcome{phase_err < 1e-12 && unit < 1e-12 && group < 1e-12,
                   "phase " + fmt(phase_err) + ", unitarity " + fmt(unit) + ", group law " +
                       fmt(group) + " (tol 1e-12, 100 fields)"};
  });

  criterion(2, "resonance algebra", 5.0, [] {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> X(-100.0, 100.0), T(-1000.0, 1000.0);
    double worst = 0.0;
    for (double a : {0.25, 0.5, 0.899})
      for (int k = 0; k < 10000; ++k) {
        const double x1 = X(rng), x2 = X(rng), t1 = T(rng), t2 = T(rng);
        for (auto var : {ResonanceIdentity::Primary, ResonanceIdentity::Mixed})
          worst = std::max(worst, resonance_identity_relative(a, x1, x2, t1, t2, var));
      }
    std::uniform_real_distribution<double> A(0.01, 0.99);
    double vieta = 0.0;
    bool signs = true;
    for (int k = 0; k < 1000; ++k) {
      const double a = A(rng);
      auto r = resonance_roots(a);
      signs = signs && r.r1 > 0.0 && r.r1 < 1.0 && r.r2 < 0.0;
      const double v = 3.0 * a / (a - 1.0), scale = std::max(1.0, std::abs(v));
      vieta = std::max({vieta, std::abs(r.r1 + r.r2 - v) / scale, std::abs(r.r1 * r.r2 - v) / scale});
    }
    return Outcome{worst < 1e-9 && vieta < 1e-12 && signs,
                   "identity residual " + fmt(worst) + " (tol 1e-9), Vieta " + fmt(vieta) +
                       " (tol 1e-12), signs " + (signs ? "ok" : "violated")};
  });

  criterion(3, "boundary operator", 120.0, [] {
    auto h = HalfLineFunction::from_function(exp_sin, 30.0, 30000, 0.5);
    std::vector<double> errs;
    for (std::size_t nb : {1024u, 2048u, 4096u}) {
      BoundaryQuadrature q(nb, 3.0);
      auto hh = temporal_fourier_halfline(h, q.rhos());
      double num = 0.0, den = 0.0;
      for (double t = 0.1; t <= 3.0; t += 0.005) {
        const double w = 2.0 * w1_point(hh, q, 0.0, t, 1.0).real();
        num += std::pow(w - h.at(t), 2);
        den += std::pow(h.at(t), 2);
      }
      errs.push_back(std::sqrt(num / den));
    }
    const bool trace_ok = errs[1] < 1e-3 && errs[1] < 0.5 * errs[0] && errs[2] < 0.5 * errs[1];
    std::vector<double> res_smooth, res_rough;
    auto orders = observed_orders(cubic_exp, &res_smooth);
    auto rough = observed_orders(exp_sin, &res_rough);
    bool order_ok = true;
    std::string ord, ord_rough;
    for (double o : orders) {
      order_ok = order_ok && std::abs(o - 2.0) < 0.3;
      ord += fmt(o) + " ";
    }
    for (double o : rough) ord_rough += fmt(o) + " ";
    return Outcome{trace_ok && order_ok,
                   "trace error " + fmt(errs[0]) + " / " + fmt(errs[1]) + " / " + fmt(errs[2]) +
                       " at n_beta 1024/2048/4096 (tol 1e-3, halving); PDE residual orders for "
                       "h = t^3 e^-t: " + ord + "(stencil order 2 +- 0.3); for e^-t sin t: " + ord_rough +
                       "(reported)"};
  });

  criterion(4, "fixed point", 600.0, [] {
    auto sol = picard_solve(gaussian_problem(0.1, 1.0), reference_params());
    const auto& it = sol.report.iterations;
    // Eventually decreasing: from the second record on, ratios below 1 and non-increasing
    // up to round-off once the differences reach the tolerance floor.
    bool ratios_ok = it.size() >= 2;
    for (std::size_t k = 1; k < it.size(); ++k) ratios_ok = ratios_ok && it[k].ratio < 1.0;
    const auto& r = sol.report.residuals;
    const double worst = std::max({r.bc_u, r.bc_v, r.ic_u, r.ic_v, r.fixed_point});
    std::string rs;
    for (std::size_t k = 1; k < it.size(); ++k) rs += fmt(it[k].ratio) + " ";
    return Outcome{sol.report.converged && ratios_ok && worst < 5e-3,
                   "T " + fmt(sol.report.accepted_T) + ", " + std::to_string(it.size()) +
                       " iterations, ratios " + rs + "; bc " + fmt(r.bc_u) + "/" + fmt(r.bc_v) +
                       ", ic " + fmt(r.ic_u) + "/" + fmt(r.ic_v) + ", fixed point " +
                       fmt(r.fixed_point) + " (tol 5e-3)"};
  });

  criterion(5, "conservation on the whole-line sub-solve", 300.0, [] {
    std::vector<std::array<double, 4>> drifts;
    for (std::size_t level = 0; level < 3; ++level) {
      auto p = reference_params();
      p.nt = std::size_t(128) << level;
      p.boundary_terms = false;
      Grid1D g(p.nx, p.box_halfwidth);
      auto u0 = SpectralField::from_function(g, [](double x) { return cplx{0.1 * std::exp(-0.5 * x * x), 0.0}; });
      auto sol = ivp_solve(u0, u0, 0.5, 1.0, p);
      drifts.push_back(conservation_drift(sol.u, sol.v, 0.5, p.T).drift);
    }
    const auto& ref = drifts[1];  // nt = 256, the reference resolution
    const bool bounds = ref[0] < 1e-6 && ref[1] < 1e-6 && ref[2] < 1e-6 && ref[3] < 1e-4;
    // E and H drift decrease at observed order >= 1.8 in nt; the masses sit at round-off.
    bool decreasing = true;
    std::string orders;
    for (std::size_t q : {2u, 3u})
      for (std::size_t l = 1; l < drifts.size(); ++l) {
        const double o = std::log2(drifts[l - 1][q] / drifts[l][q]);
        decreasing = decreasing && o >= 1.8;
        orders += fmt(o) + " ";
      }
    std::string d;
    for (const auto& x : drifts)
      d += "[" + fmt(x[0]) + ", " + fmt(x[1]) + ", " + fmt(x[2]) + ", " + fmt(x[3]) + "] ";
    return Outcome{bounds && decreasing,
                   "drift (mass_u, mass_v, E, H) at nt 128/256/512: " + d +
                       "(tol 1e-6/1e-6/1e-6/1e-4 at nt 256); E, H orders " + orders + "(tol >= 1.8)"};
  });

  criterion(6, "continuous dependence", 1800.0, [] {
    const auto p = reference_params();
    auto base = picard_solve(gaussian_problem(0.1, 1.0), p);
    auto q = p;
    q.extension = base.report.extension_u;
    std::vector<double> ratios;
    for (double d : {1e-2, 1e-3, 1e-4}) {
      auto pert = picard_solve(gaussian_problem(0.1, 1.0, d), q);
      ratios.push_back(quadrant_difference(pert, base) / d);
    }
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    return Outcome{lo > 0.0 && hi / lo < 2.0,
                   "response/delta at delta 1e-2/1e-3/1e-4: " + fmt(ratios[0]) + " / " +
                       fmt(ratios[1]) + " / " + fmt(ratios[2]) + ", spread " + fmt(hi / lo) +
                       " (tol factor 2)"};
  });

  criterion(7, "estimate probes", 1200.0, [] {
    bool ok = true;
    std::string detail;
    for (auto which : {BilinearEstimate::Bil1, BilinearEstimate::Bil2, BilinearEstimate::Bil3,
                       BilinearEstimate::Bil4}) {
      BilinearProbeConfig cfg;
      cfg.which = which;
      cfg.s = 1.0;
      cfg.b = 0.46;
      cfg.gamma = 0.51;
      cfg.alpha = 0.5;
      cfg.ensemble = 200;
      cfg.seed = 1;
      auto a = bilinear_ratio_probe(cfg);
      auto fine = cfg;
      fine.nx *= 2;
      fine.nt *= 2;
      auto b = bilinear_ratio_probe(fine);
      const double rel = std::abs(b.max / a.max - 1.0);
      bool det = true;
      if (which == BilinearEstimate::Bil1) det = bilinear_ratio_probe(cfg).max == a.max;
      const bool pass = std::isfinite(a.max) && std::isfinite(b.max) && rel < 0.2 && det;
      ok = ok && pass;
      detail += to_string(which) + " max " + fmt(a.max) + " -> " + fmt(b.max) + " (" + fmt(100.0 * rel) + "%), ";
      if (which == BilinearEstimate::Bil1) detail += std::string("rerun ") + (det ? "identical" : "differs") + ", ";
    }
    for (auto which : {LinearEstimate::Kato, LinearEstimate::Strichartz4}) {
      LinearProbeConfig cfg;
      cfg.which = which;
      cfg.ensemble = 100;
      cfg.b = 0.4;
      cfg.theta = 0.0;
      auto a = linear_estimate_probe(cfg);
      auto wide = cfg;
      wide.nx *= 2;
      wide.box_halfwidth *= 2.0;
      auto b = linear_estimate_probe(wide);
      const double rel = std::abs(b.max / a.max - 1.0);
      const bool pass = std::isfinite(a.max) && rel < 0.2;
      ok = ok && pass;
      detail += to_string(which) + " max " + fmt(a.max) + " -> " + fmt(b.max) + " (" + fmt(100.0 * rel) + "%), ";
    }
    return Outcome{ok, detail + "grid/box doubling (tol 20%)"};
  });

  criterion(8, "uniqueness echo at s = 1.8", 1200.0, [] {
    auto p = reference_params();
    p.extension = Extension::Reflect1;
    auto a = picard_solve(gaussian_problem(0.1, 1.8), p);
    p.extension = Extension::Reflect3;
    auto b = picard_solve(gaussian_problem(0.1, 1.8), p);
    const double T = std::min(a.report.accepted_T, b.report.accepted_T);
    auto twin = difference_energy_monitor(a.u, a.v, b.u, b.v, T, 1.8);
    const double floor = std::max(a.report.residuals.pde_floor, b.report.residuals.pde_floor);
    const bool twin_ok = twin.max_I < floor;

    std::vector<double> C;
    for (double d : {1e-3, 1e-4}) {
      auto pert = picard_solve(gaussian_problem(0.1, 1.8, d), p);
      C.push_back(difference_energy_monitor(b.u, b.v, pert.u, pert.v, T, 1.8).fitted_C);
    }
    const double spread = std::max(std::abs(C[0]), std::abs(C[1])) /
                          std::max(1e-300, std::min(std::abs(C[0]), std::abs(C[1])));
    const bool c_ok = std::isfinite(C[0]) && std::isfinite(C[1]) && spread < 2.0;
    return Outcome{twin_ok && c_ok,
                   "reflect1 vs reflect3: max I " + fmt(twin.max_I) + " vs PDE floor " + fmt(floor) +
                       " (stencil residuals u/v " + fmt(b.report.residuals.pde_u) + "/" +
                       fmt(b.report.residuals.pde_v) + ")" + "; fitted C at delta 1e-3/1e-4: " + fmt(C[0]) + " / " + fmt(C[1]) +
                       " (tol factor 2)"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
