#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mblab/field.hpp"

namespace mblab {

/// Summary of an ensemble of ratios left/right. Members with a vanishing
/// denominator are skipped.
struct ProbeStats {
  double max = 0.0;
  double mean = 0.0;
  std::uint64_t argmax_seed = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::vector<double> ratios;        ///< per member, NaN when skipped
  std::vector<std::uint64_t> seeds;  ///< per member
  double box_halfwidth = 0.0;
  double horizon = 0.0;
  double cell_measure = 0.0;
  bool boundary_exponent = false;    ///< b = 7/16 requested
};

ProbeStats summarize(std::vector<double> ratios, std::vector<std::uint64_t> seeds);

/// Member seed derived from the run seed and the member index.
std::uint64_t member_seed(std::uint64_t seed, std::size_t index);

/// Real sum of `packets` Gaussian wave packets centred near tau = c xi^3, with
/// amplitudes <xi0>^{-p} <tau0 - c xi0^3>^{-q} (p, q drawn from [1, 3]).
/// Packets are kept inside half the grid's frequency band so quadratic
/// products are alias-free, and well inside the box.
SpaceTimeField random_packet_field(const SpaceTimeGrid& grid, double c, std::uint64_t seed,
                                   std::size_t packets = 8);

// ---------------------------------------------------------------- bilinear

enum class BilinearEstimate { Bil1, Bil2, Bil3, Bil4 };

std::string to_string(BilinearEstimate e);
BilinearEstimate bilinear_from_string(const std::string& name);

struct BilinearProbeConfig {
  BilinearEstimate which = BilinearEstimate::Bil1;
  double s = 1.0;
  double b = 0.46;
  double gamma = 0.51;
  double alpha = 0.5;
  double plus = 0.01;  ///< "1/2+" is read as 1/2 + plus
  std::size_t ensemble = 200;
  std::uint64_t seed = 1;
  std::size_t packets = 8;
  std::size_t nx = 256;
  std::size_t nt = 512;
  double box_halfwidth = 16.0;
  double horizon = 8.0;
};

/// Rejects exponents outside the stated hypotheses:
/// bil1/2: s > 0, max((3 - s)/6, 7/16) < b < 1/2, gamma > 1/2;
/// bil3/4: 1/2 < s < 2, max((s + 1)/6, 7/16) < b < 1/2, gamma > 1/2.
/// b = 7/16 exactly is accepted and reported as a boundary exponent.
void validate(const BilinearProbeConfig& cfg);

/// left / right for one pair. bil1 and bil3 read only v.
///   bil1: ||(v^2)_x||_{X^{s,-b}}                 / ||v||^2_{X^{s,b}_alpha}
///   bil2: ||(uv)_x||_{X^{s,-b}_alpha}            / ||u||_{Y} ||v||_{Y_alpha}
///   bil3: ||(v^2)_x||_{X^{1/2+, (2s-1)/6 - b}}   / ||v||^2_{X^{s,b}_alpha}
///   bil4: ||(uv)_x||_{X^{1/2+, (2s-1)/6 - b}_alpha} / ||u||_{Y} ||v||_{Y_alpha}
/// with Y = X^{s,b} + V^gamma. Returns NaN if the right side vanishes.
double bilinear_ratio(const BilinearProbeConfig& cfg, const SpaceTimeField& u,
                      const SpaceTimeField& v);

ProbeStats bilinear_ratio_probe(const BilinearProbeConfig& cfg);

// ------------------------------------------------------------------ linear

enum class LinearEstimate { Kato, KatoTrace, Strichartz4, Sobolev, KatoP };

std::string to_string(LinearEstimate e);
LinearEstimate linear_from_string(const std::string& name);

struct LinearProbeConfig {
  LinearEstimate which = LinearEstimate::Kato;
  double s = 1.0;        ///< KatoTrace data regularity
  double b = 0.4;        ///< Strichartz4 exponent (> 3/8)
  double theta = 0.0;    ///< Strichartz4 derivative gain in [0, 1/8]
  double p = 4.0;        ///< KatoP exponent in (2, inf)
  double plus = 0.01;
  std::size_t ensemble = 100;
  std::uint64_t seed = 1;
  /// Kato / KatoTrace: data u0 on [-L, L), flow sampled on [-horizon, horizon).
  /// Space-time estimates: packet fields on the same box.
  std::size_t nx = 1024;
  std::size_t nt = 512;
  double box_halfwidth = 64.0;
  double horizon = 2.5;
  double width_min = 1.0;
  double width_max = 3.0;
  std::size_t packets = 8;
};

void validate(const LinearProbeConfig& cfg);

/// Kato: sup_x ||eta(t) d_x W^t u0||_{L2_t} / ||u0||_{L2}.
double kato_ratio(const SpectralField& u0, const SpaceTimeGrid& grid);
/// sup_x ||eta(t) W^t u0||_{H^{(s+1)/3}_t} / ||u0||_{H^s}.
double kato_trace_ratio(const SpectralField& u0, const SpaceTimeGrid& grid, double s);
/// ||[|xi|^theta f_hat / <tau - xi^3>^b]^vee||_{L4 L4} / ||f||_{L2}.
double strichartz4_ratio(const SpaceTimeField& f, double theta, double b);
/// ||[f_hat / <tau>^{1/2+}]^vee||_{L2_x Linf_t} / ||f||_{L2}.
double sobolev_ratio(const SpaceTimeField& f, double plus);
/// ||[|xi|^{(p-2)/p} f_hat / <tau - xi^3>^{(p-2)/(2p)+}]^vee||_{Lp_x L2_t} / ||f||_{L2}.
double katop_ratio(const SpaceTimeField& f, double p, double plus);

ProbeStats linear_estimate_probe(const LinearProbeConfig& cfg);

}  // namespace mblab
