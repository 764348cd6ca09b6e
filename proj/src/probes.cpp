#include "mblab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "mblab/cutoff.hpp"
#include "mblab/norms.hpp"

namespace mblab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SpaceTimeGrid probe_grid(std::size_t nx, double L, std::size_t nt, double T) {
  if (!is_power_of_two(nx) || !is_power_of_two(nt))
    throw ValidationError("probe grid sizes must be powers of two");
  return SpaceTimeGrid(Grid1D(nx, L), nt, T);
}

double cube(double a) { return a * a * a; }

}  // namespace

std::uint64_t member_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 finalizer over (seed, index)
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + std::uint64_t(index) + 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ProbeStats summarize(std::vector<double> ratios, std::vector<std::uint64_t> seeds) {
  ProbeStats st;
  double sum = 0.0;
  st.max = kNaN;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (std::isnan(ratios[i])) {
      ++st.skipped;
      continue;
    }
    ++st.evaluated;
    sum += ratios[i];
    if (std::isnan(st.max) || ratios[i] > st.max) {
      st.max = ratios[i];
      st.argmax_seed = seeds[i];
    }
  }
  st.mean = st.evaluated ? sum / double(st.evaluated) : kNaN;
  st.ratios = std::move(ratios);
  st.seeds = std::move(seeds);
  return st;
}

SpaceTimeField random_packet_field(const SpaceTimeGrid& grid, double c, std::uint64_t seed,
                                   std::size_t packets) {
  std::mt19937_64 rng(seed);
  auto U = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  const double xi_nyq = grid.space().frequency_spacing() * double(grid.nx()) / 2.0;
  const double tau_nyq = grid.time().frequency_spacing() * double(grid.nt()) / 2.0;
  const double L = grid.space().half_width(), T = grid.horizon();
  // Half band in each variable, minus a six-width margin for the envelopes.
  const double xi_cap = std::min(3.0, 0.5 * xi_nyq - 6.0 / 0.8);
  const double tau_room = 0.5 * tau_nyq - 4.0 - 6.0 / 0.6;
  const double xi_cap_tau = tau_room > 0.0 ? std::cbrt(tau_room / c) : 0.0;
  const double xmax = std::max(0.0, std::min(xi_cap, xi_cap_tau));
  const double xc = std::min(5.0, L / 3.0), tc = std::min(2.0, T / 4.0);

  const double p = U(1.0, 3.0), q = U(1.0, 3.0);
  struct Packet { double amp, x0, t0, sx, st, xi, tau, phase; };
  std::vector<Packet> list;
  for (std::size_t j = 0; j < packets; ++j) {
    Packet k;
    k.xi = U(-xmax, xmax);
    const double offset = U(-4.0, 4.0);
    k.tau = c * cube(k.xi) + offset;
    k.amp = std::pow(bracket(k.xi), -p) * std::pow(bracket(offset), -q);
    k.x0 = U(-xc, xc);
    k.t0 = U(-tc, tc);
    k.sx = U(0.8, 1.6);
    k.st = U(0.6, 1.2);
    k.phase = U(0.0, kTwoPi);
    list.push_back(k);
  }
  // Each packet factors as Re(X(x) Y(t)); tabulate both factors once.
  const std::size_t nx = grid.nx(), nt = grid.nt(), m = list.size();
  std::vector<cplx> X(m * nx), Y(m * nt);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& k = list[j];
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double x = grid.space().node(ix), e = (x - k.x0) / k.sx;
      X[j * nx + ix] = std::polar(k.amp * std::exp(-0.5 * e * e), k.xi * x);
    }
    for (std::size_t it = 0; it < nt; ++it) {
      const double t = grid.t(it), e = (t - k.t0) / k.st;
      Y[j * nt + it] = std::polar(std::exp(-0.5 * e * e), k.tau * t + k.phase);
    }
  }
  std::vector<cplx> values(grid.size());
  for (std::size_t it = 0; it < nt; ++it)
    for (std::size_t ix = 0; ix < nx; ++ix) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += (X[j * nx + ix] * Y[j * nt + it]).real();
      values[grid.index(ix, it)] = acc;
    }
  return SpaceTimeField::from_values(grid, std::move(values));
}

// ---------------------------------------------------------------- bilinear

std::string to_string(BilinearEstimate e) {
  switch (e) {
    case BilinearEstimate::Bil1: return "bil1";
    case BilinearEstimate::Bil2: return "bil2";
    case BilinearEstimate::Bil3: return "bil3";
    case BilinearEstimate::Bil4: return "bil4";
  }
  return "unknown";
}

BilinearEstimate bilinear_from_string(const std::string& name) {
  if (name == "bil1") return BilinearEstimate::Bil1;
  if (name == "bil2") return BilinearEstimate::Bil2;
  if (name == "bil3") return BilinearEstimate::Bil3;
  if (name == "bil4") return BilinearEstimate::Bil4;
  throw ValidationError("unknown bilinear estimate '" + name + "' (expected bil1..bil4)");
}

void validate(const BilinearProbeConfig& cfg) {
  const bool low = cfg.which == BilinearEstimate::Bil1 || cfg.which == BilinearEstimate::Bil2;
  std::ostringstream m;
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    m << "alpha=" << cfg.alpha << " outside (0, 1)";
    throw ValidationError(m.str());
  }
  if (low && !(cfg.s > 0.0)) {
    m << to_string(cfg.which) << " requires s > 0 (got " << cfg.s << ")";
    throw ValidationError(m.str());
  }
  if (!low && !(cfg.s > 0.5 && cfg.s < 2.0)) {
    m << to_string(cfg.which) << " requires 1/2 < s < 2 (got " << cfg.s << ")";
    throw ValidationError(m.str());
  }
  const double lower = std::max(low ? (3.0 - cfg.s) / 6.0 : (cfg.s + 1.0) / 6.0, 7.0 / 16.0);
  const bool at_boundary = std::abs(cfg.b - 7.0 / 16.0) < 1e-12 && lower == 7.0 / 16.0;
  if (!((cfg.b > lower || at_boundary) && cfg.b < 0.5)) {
    m << to_string(cfg.which) << " requires " << lower << " < b < 1/2 (got b=" << cfg.b << ")";
    throw ValidationError(m.str());
  }
  if (!(cfg.gamma > 0.5)) {
    m << "gamma must exceed 1/2 (got " << cfg.gamma << ")";
    throw ValidationError(m.str());
  }
  if (!(cfg.plus > 0.0)) throw ValidationError("the '1/2+' offset must be positive");
}

double bilinear_ratio(const BilinearProbeConfig& cfg, const SpaceTimeField& u,
                      const SpaceTimeField& v) {
  const bool pair = cfg.which == BilinearEstimate::Bil2 || cfg.which == BilinearEstimate::Bil4;
  const bool high = cfg.which == BilinearEstimate::Bil3 || cfg.which == BilinearEstimate::Bil4;
  const SpaceTimeGrid& grid = v.grid();

  std::vector<cplx> prod(grid.size());
  for (std::size_t i = 0; i < prod.size(); ++i)
    prod[i] = pair ? u.values()[i] * v.values()[i] : v.values()[i] * v.values()[i];
  const SpaceTimeField product = SpaceTimeField::from_values(grid, std::move(prod));

  const double c_left = pair ? cfg.alpha : 1.0;
  const double s_left = high ? 0.5 + cfg.plus : cfg.s;
  const double b_left = high ? (2.0 * cfg.s - 1.0) / 6.0 - cfg.b : -cfg.b;
  const double left = weighted_spectral_norm(product, [=](double xi, double tau) {
    return std::abs(xi) * std::pow(bracket(xi), s_left) *
           std::pow(bracket(tau - c_left * cube(xi)), b_left);
  });

  const double v_norm = spacetime_norm(v, NormSpec::xsb_alpha(cfg.s, cfg.b, cfg.alpha));
  double right = 0.0;
  if (pair) {
    const double uy = spacetime_norm(u, NormSpec::xsb(cfg.s, cfg.b)) +
                      spacetime_norm(u, NormSpec::vgamma(cfg.gamma));
    right = uy * (v_norm + spacetime_norm(v, NormSpec::vgamma(cfg.gamma)));
  } else {
    right = v_norm * v_norm;
  }
  return right > 0.0 ? left / right : kNaN;
}

ProbeStats bilinear_ratio_probe(const BilinearProbeConfig& cfg) {
  validate(cfg);
  const SpaceTimeGrid grid = probe_grid(cfg.nx, cfg.box_halfwidth, cfg.nt, cfg.horizon);
  const bool pair = cfg.which == BilinearEstimate::Bil2 || cfg.which == BilinearEstimate::Bil4;
  std::vector<double> ratios(cfg.ensemble);
  std::vector<std::uint64_t> seeds(cfg.ensemble);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cfg.ensemble; ++i) {
    seeds[i] = member_seed(cfg.seed, i);
    const SpaceTimeField v = random_packet_field(grid, cfg.alpha, seeds[i], cfg.packets);
    if (pair) {
      const SpaceTimeField u =
          random_packet_field(grid, 1.0, member_seed(seeds[i], 1), cfg.packets);
      ratios[i] = bilinear_ratio(cfg, u, v);
    } else {
      ratios[i] = bilinear_ratio(cfg, v, v);
    }
  }
  ProbeStats st = summarize(std::move(ratios), std::move(seeds));
  st.box_halfwidth = cfg.box_halfwidth;
  st.horizon = cfg.horizon;
  st.cell_measure = frequency_cell_measure(grid);
  st.boundary_exponent = std::abs(cfg.b - 7.0 / 16.0) < 1e-12;
  return st;
}

// ------------------------------------------------------------------ linear

std::string to_string(LinearEstimate e) {
  switch (e) {
    case LinearEstimate::Kato: return "kato";
    case LinearEstimate::KatoTrace: return "kato_trace";
    case LinearEstimate::Strichartz4: return "strichartz4";
    case LinearEstimate::Sobolev: return "sobolev";
    case LinearEstimate::KatoP: return "katop";
  }
  return "unknown";
}

LinearEstimate linear_from_string(const std::string& name) {
  if (name == "kato") return LinearEstimate::Kato;
  if (name == "kato_trace") return LinearEstimate::KatoTrace;
  if (name == "strichartz4") return LinearEstimate::Strichartz4;
  if (name == "sobolev") return LinearEstimate::Sobolev;
  if (name == "katop") return LinearEstimate::KatoP;
  throw ValidationError("unknown linear estimate '" + name +
                        "' (expected kato, kato_trace, strichartz4, sobolev, katop)");
}

void validate(const LinearProbeConfig& cfg) {
  std::ostringstream m;
  switch (cfg.which) {
    case LinearEstimate::Strichartz4:
      if (!(cfg.theta >= 0.0 && cfg.theta <= 0.125 && cfg.b > 0.375)) {
        m << "strichartz4 requires 0 <= theta <= 1/8 and b > 3/8 (got theta=" << cfg.theta
          << ", b=" << cfg.b << ")";
        throw ValidationError(m.str());
      }
      break;
    case LinearEstimate::KatoP:
      if (!(cfg.p > 2.0 && std::isfinite(cfg.p))) {
        m << "katop requires 2 < p < inf (got " << cfg.p << ")";
        throw ValidationError(m.str());
      }
      break;
    case LinearEstimate::KatoTrace:
      if (!(cfg.s >= -1.0)) throw ValidationError("kato_trace requires s >= -1");
      break;
    default:
      break;
  }
  if (!(cfg.plus > 0.0)) throw ValidationError("the '+' offset must be positive");
  if (!(cfg.width_min > 0.0 && cfg.width_max >= cfg.width_min))
    throw ValidationError("Gaussian widths must satisfy 0 < width_min <= width_max");
}

namespace {

// eta(t) W^t u0 (optionally differentiated once in x) on the grid.
std::vector<cplx> windowed_flow(const SpectralField& u0, const SpaceTimeGrid& grid,
                                bool derivative) {
  const std::size_t nx = grid.nx();
  std::vector<cplx> m(grid.size());
  for (std::size_t it = 0; it < grid.nt(); ++it) {
    const double t = grid.t(it);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double xi = grid.space().frequency(ix);
      cplx sym = std::polar(1.0, t * cube(xi));
      if (derivative) sym *= grid.space().is_nyquist(ix) ? cplx{} : cplx{0.0, xi};
      m[it * nx + ix] = u0.spectrum()[ix] * sym;
    }
  }
  continuum_inverse_slices(m, grid);
  for (std::size_t it = 0; it < grid.nt(); ++it) {
    const double cut = eta(grid.t(it));
    for (std::size_t ix = 0; ix < nx; ++ix) m[it * nx + ix] *= cut;
  }
  return m;
}

SpaceTimeField reweighted(const SpaceTimeField& f,
                          const std::function<double(double, double)>& w) {
  const SpaceTimeGrid& g = f.grid();
  std::vector<cplx> spec = f.spectrum();
  for (std::size_t kt = 0; kt < g.nt(); ++kt)
    for (std::size_t kx = 0; kx < g.nx(); ++kx)
      spec[g.index(kx, kt)] *= w(g.space().frequency(kx), g.tau(kt));
  return SpaceTimeField::from_spectrum(g, std::move(spec));
}

double l2(const SpaceTimeField& f) { return mixed_lebesgue_norm(f.values(), f.grid(), 2.0, 2.0); }

}  // namespace

double kato_ratio(const SpectralField& u0, const SpaceTimeGrid& grid) {
  const double den = l2_norm(u0);
  if (den == 0.0) return kNaN;
  const auto flow = windowed_flow(u0, grid, true);
  return mixed_lebesgue_norm(flow, grid, kInf, 2.0) / den;
}

double kato_trace_ratio(const SpectralField& u0, const SpaceTimeGrid& grid, double s) {
  const double den = sobolev_norm(u0, s);
  if (den == 0.0) return kNaN;
  const auto flow = windowed_flow(u0, grid, false);
  const double sigma = (s + 1.0) / 3.0;
  double best = 0.0;
  std::vector<cplx> col(grid.nt());
  for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
    for (std::size_t it = 0; it < grid.nt(); ++it) col[it] = flow[grid.index(ix, it)];
    best = std::max(best, sobolev_norm(SpectralField::from_values(grid.time(), col), sigma));
  }
  return best / den;
}

double strichartz4_ratio(const SpaceTimeField& f, double theta, double b) {
  const double den = l2(f);
  if (den == 0.0) return kNaN;
  const SpaceTimeField g = reweighted(f, [=](double xi, double tau) {
    return std::pow(std::abs(xi), theta) * std::pow(bracket(tau - cube(xi)), -b);
  });
  return mixed_lebesgue_norm(g.values(), g.grid(), 4.0, 4.0) / den;
}

double sobolev_ratio(const SpaceTimeField& f, double plus) {
  const double den = l2(f);
  if (den == 0.0) return kNaN;
  const SpaceTimeField g =
      reweighted(f, [=](double, double tau) { return std::pow(bracket(tau), -(0.5 + plus)); });
  return mixed_lebesgue_norm(g.values(), g.grid(), 2.0, kInf) / den;
}

double katop_ratio(const SpaceTimeField& f, double p, double plus) {
  const double den = l2(f);
  if (den == 0.0) return kNaN;
  const double a = (p - 2.0) / p, e = (p - 2.0) / (2.0 * p) + plus;
  const SpaceTimeField g = reweighted(f, [=](double xi, double tau) {
    return std::pow(std::abs(xi), a) * std::pow(bracket(tau - cube(xi)), -e);
  });
  return mixed_lebesgue_norm(g.values(), g.grid(), p, 2.0) / den;
}

ProbeStats linear_estimate_probe(const LinearProbeConfig& cfg) {
  validate(cfg);
  const SpaceTimeGrid grid = probe_grid(cfg.nx, cfg.box_halfwidth, cfg.nt, cfg.horizon);
  std::vector<double> ratios(cfg.ensemble);
  std::vector<std::uint64_t> seeds(cfg.ensemble);
  const bool data_probe =
      cfg.which == LinearEstimate::Kato || cfg.which == LinearEstimate::KatoTrace;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cfg.ensemble; ++i) {
    seeds[i] = member_seed(cfg.seed, i);
    if (data_probe) {
      std::mt19937_64 rng(seeds[i]);
      auto U = [&](double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(rng);
      };
      const double w = U(cfg.width_min, cfg.width_max), x0 = U(-5.0, 5.0), k0 = U(-1.0, 1.0);
      const SpectralField u0 = SpectralField::from_function(grid.space(), [=](double x) {
        const double y = (x - x0) / w;
        return cplx{std::exp(-0.5 * y * y) * std::cos(k0 * x), 0.0};
      });
      ratios[i] = cfg.which == LinearEstimate::Kato ? kato_ratio(u0, grid)
                                                    : kato_trace_ratio(u0, grid, cfg.s);
      continue;
    }
    const SpaceTimeField f = random_packet_field(grid, 1.0, seeds[i], cfg.packets);
    switch (cfg.which) {
      case LinearEstimate::Strichartz4: ratios[i] = strichartz4_ratio(f, cfg.theta, cfg.b); break;
      case LinearEstimate::Sobolev: ratios[i] = sobolev_ratio(f, cfg.plus); break;
      case LinearEstimate::KatoP: ratios[i] = katop_ratio(f, cfg.p, cfg.plus); break;
      default: break;
    }
  }
  ProbeStats st = summarize(std::move(ratios), std::move(seeds));
  st.box_halfwidth = cfg.box_halfwidth;
  st.horizon = cfg.horizon;
  st.cell_measure = frequency_cell_measure(grid);
  return st;
}

}  // namespace mblab
