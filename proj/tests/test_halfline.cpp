#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mblab/halfline.hpp"
#include "mblab/norms.hpp"
#include "oracles.hpp"

using namespace mblab;

namespace {
HalfLineFunction sample(double (*fn)(double), double s, double extent = 30.0,
                        std::size_t n = 6000) {
  return HalfLineFunction::from_function(fn, extent, n, s);
}
double exp_neg(double t) { return std::exp(-t); }
double exp_sin(double t) { return std::exp(-t) * std::sin(t); }
double x_exp(double x) { return x * std::exp(-x); }
double gauss(double x) { return std::exp(-0.5 * x * x); }
}  // namespace

TEST_CASE("half-line samples and validation") {
  auto h = sample(exp_sin, 1.0);
  CHECK(h.boundary_value() == 0.0);
  CHECK(h.at(0.7) == doctest::Approx(exp_sin(0.7)).epsilon(1e-8));
  CHECK(h.at(-1.0) == 0.0);
  CHECK(h.at(1e3) == 0.0);
  CHECK(HalfLineFunction::zero(5.0, 50, 1.0).is_zero());
  // Not decayed at the last sample.
  CHECK_THROWS_AS(HalfLineFunction::from_function(exp_neg, 2.0, 100, 0.0), ValidationError);
  CHECK_THROWS_AS(HalfLineFunction(std::vector<double>{1.0, 0.0}, 0.1, 0.0), ValidationError);
}

TEST_CASE("CSV input") {
  const auto path = std::filesystem::temp_directory_path() / "mblab_halfline.csv";
  {
    std::ofstream out(path);
    out << "t,value\n";
    for (int k = 0; k <= 400; ++k) out << k * 0.05 << "," << exp_sin(k * 0.05) << "\n";
  }
  auto h = HalfLineFunction::from_csv(path.string(), 2.0 / 3.0);
  CHECK(h.samples().size() == 401);
  CHECK(h.spacing() == doctest::Approx(0.05));
  CHECK(h.at(1.0) == doctest::Approx(exp_sin(1.0)).epsilon(1e-4));
  {
    std::ofstream out(path);
    out << "t value\n0.1 0\n0.2 0\n";
  }
  CHECK_THROWS_AS(HalfLineFunction::from_csv(path.string(), 1.0), ValidationError);
  std::filesystem::remove(path);
}

TEST_CASE("zero extension of e^{-t} at s = 0 has norm 1/sqrt(2)") {
  Grid1D g(4096, 40.0);
  auto h = sample(exp_neg, 0.0, 38.0, 7600);
  const double v = halfline_norm_with(h, 0.0, Extension::Zero, g);
  CHECK(std::abs(v - 1.0 / std::sqrt(2.0)) < g.spacing());
  CHECK(halfline_norm_with(HalfLineFunction::zero(10.0, 100, 0.0), 0.0, Extension::Zero, g) == 0.0);
  auto best = halfline_norm_upper(h, 0.0, g);
  CHECK(best.extension == Extension::Zero);
  CHECK(best.upper_bound);
  CHECK(std::abs(best.value - 1.0 / std::sqrt(2.0)) < g.spacing());
}

TEST_CASE("reflection coefficients") {
  auto a1 = reflection_coefficients(1);
  REQUIRE(a1.size() == 2);
  CHECK(a1[0] == doctest::Approx(3.0));
  CHECK(a1[1] == doctest::Approx(-2.0));
  for (int order = 1; order <= 3; ++order) {
    auto a = reflection_coefficients(order);
    for (int j = 0; j <= order; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * std::pow(-double(k + 1), j);
      CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("first-order reflection is C^1 at the origin") {
  auto h = sample(x_exp, 1.0);
  double prev = 0.0;
  for (std::size_t n : {2048u, 4096u}) {
    Grid1D g(n, 20.0);
    auto e = extend_smooth(h, 1, g);
    const std::size_t o = g.origin_index();
    const double dx = g.spacing();
    auto u = [&](long k) { return e.values()[std::size_t(long(o) + k)].real(); };
    // Second-order one-sided slopes from each side of x = 0.
    const double right = (-3.0 * u(0) + 4.0 * u(1) - u(2)) / (2.0 * dx);
    const double left = (3.0 * u(0) - 4.0 * u(-1) + u(-2)) / (2.0 * dx);
    const double gap = std::abs(right - left);
    if (prev > 0.0) CHECK(gap < 0.35 * prev);
    CHECK(gap < 20.0 * dx * dx);
    prev = gap;
  }
}

TEST_CASE("reflections reproduce constants near the origin") {
  Grid1D g(1024, 20.0);
  auto h = HalfLineFunction::from_function(
      [](double x) { return x < 2.0 ? 1.0 : std::exp(-(x - 2.0) * (x - 2.0) * 4.0); }, 12.0, 2400,
      1.0);
  for (int order = 1; order <= 3; ++order) {
    auto e = extend_smooth(h, order, g);
    for (std::size_t j = g.origin_index() - 10; j <= g.origin_index(); ++j)
      CHECK(e.values()[j].real() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("third-order reflection of a Gaussian: H^2 constant stable under refinement") {
  auto h = sample(gauss, 2.0, 12.0, 2400);
  const double ref = std::sqrt(oracle::integrate_real(
      [](double x) { return std::exp(-x * x) * (1.0 + x * x + std::pow(x * x - 1.0, 2)); }, 0.0,
      12.0));  // ||h||_{H^2(R+)} reference with weights 1, |h'|^2, |h''|^2
  std::vector<double> C;
  for (std::size_t n : {1024u, 2048u}) {
    Grid1D g(n, 20.0);
    C.push_back(halfline_norm_with(h, 2.0, Extension::Reflect3, g) / ref);
  }
  MESSAGE("H^2 extension constant: " << C[0] << " -> " << C[1]);
  CHECK(std::isfinite(C[0]));
  CHECK(std::abs(C[1] - C[0]) < 0.05 * C[0]);
}

TEST_CASE("extension menu for e^{-t} sin t at s = 0.6") {
  Grid1D g(2048, 20.0);
  auto h = sample(exp_sin, 0.6);
  CHECK(zero_extension_admissible(h, 0.6));
  const double zero = halfline_norm_with(h, 0.6, Extension::Zero, g);
  auto best = halfline_norm_upper(h, 0.6, g);
  CHECK(best.value <= zero + 1e-12);
  double prev = 0.0;
  for (double s : {0.0, 0.3, 0.6, 1.0, 1.4}) {
    const double v = halfline_norm_upper(h, s, g).value;
    CHECK(v >= prev);
    prev = v;
  }
  // h(0) = 1 rules out the zero extension above s = 1/2.
  CHECK_FALSE(zero_extension_admissible(sample(exp_neg, 1.0), 1.0));
  CHECK(halfline_norm_upper(sample(exp_neg, 1.0), 1.0, g).extension != Extension::Zero);
  CHECK_THROWS_AS(halfline_norm_upper(h, 2.5, g), ValidationError);
}

TEST_CASE("extension names round-trip") {
  for (auto e : {Extension::Zero, Extension::Reflect1, Extension::Reflect2, Extension::Reflect3})
    CHECK(extension_from_string(to_string(e)) == e);
  CHECK_THROWS_AS(extension_from_string("mirror"), ValidationError);
}
