#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gke/distributions.hpp"
#include "gke/kernel.hpp"
#include "gke/quadrature.hpp"
#include "gke/rng.hpp"
#include "gke/special_math.hpp"

using gke::gamma_kernel;
using gke::gamma_kernel_derivative;
using gke::KernelPoint;
using gke::log_correction;
using gke::shape_param;
using gke::ShapeBranch;

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008;

double kernel_mass(double x, double b) {
  // Integrate the kernel over the data argument; the Gamma(rho, b) law has
  // mean rho*b and sd sqrt(rho)*b, so the window below covers all the mass.
  const auto sp = shape_param(x, b);
  const double upper = b * (sp.value + 30.0 * std::sqrt(sp.value) + 40.0);
  gke::QuadratureOptions opt;
  opt.initial_panels = 64;
  opt.abs_tol = 1e-11;
  opt.rel_tol = 1e-10;
  return gke::integrate(
      [x, b](double t) { return gamma_kernel({x, b, t}); }, 0.0, upper, opt);
}

double fd_derivative(double x, double b, double t) {
  const double h = 1e-6 * std::max(x, 1.0);
  return (gamma_kernel({x + h, b, t}) - gamma_kernel({x - h, b, t})) / (2.0 * h);
}

}  // namespace

TEST_CASE("shape parameter branches") {
  for (double b : {0.1, 0.5}) {
    const auto sp = shape_param(2.0 * b, b);
    CHECK(sp.branch == ShapeBranch::Interior);
    CHECK(sp.value == 2.0);
  }
  const auto interior = shape_param(1.0, 0.1);
  CHECK(interior.branch == ShapeBranch::Interior);
  CHECK(interior.value == doctest::Approx(10.0));

  const auto boundary = shape_param(0.1, 0.1);
  CHECK(boundary.branch == ShapeBranch::Boundary);
  CHECK(boundary.value == doctest::Approx(1.25));

  CHECK(shape_param(0.0, 0.3).value == 1.0);
  CHECK_THROWS_AS(shape_param(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(shape_param(1.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(shape_param(-1.0, 0.1), std::domain_error);
  // x/b beyond the supported shape range
  CHECK_THROWS_AS(shape_param(6e7, 0.5), std::domain_error);
}

TEST_CASE("gamma kernel value at a hand-checkable point") {
  // x = 1, b = 0.5 gives rho = 2: K = t e^(-t/b) / b^2 at t = 1 is 4 e^-2.
  CHECK(gamma_kernel({1.0, 0.5, 1.0}) ==
        doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-13));
}

TEST_CASE("log-space evaluation matches the naive formula at small rho") {
  gke::SplitMix64 g(5);
  for (int i = 0; i < 200; ++i) {
    const double b = 0.1 + g.next_unit();
    const double x = 2.0 * b + 3.0 * g.next_unit();  // interior, small rho
    const double rho = x / b;
    const double t = (0.2 + 2.0 * g.next_unit()) * x;
    const double naive =
        std::pow(t, rho - 1.0) * std::exp(-t / b) / (std::pow(b, rho) * std::tgamma(rho));
    CHECK(gamma_kernel({x, b, t}) == doctest::Approx(naive).epsilon(1e-11));
  }
}

TEST_CASE("large-rho value matches an independent log-space gamma-pdf oracle") {
  // x = 5, b = 0.01: rho = 500. Oracle built on std::lgamma.
  const double rho = 500.0, b = 0.01, t = 5.0;
  const double oracle =
      std::exp((rho - 1.0) * std::log(t) - t / b - rho * std::log(b) - std::lgamma(rho));
  CHECK(gamma_kernel({5.0, 0.01, t}) == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(gamma_kernel({5.0, 0.01, t}) > 0.0);
}

TEST_CASE("kernel integrates to one over the data argument") {
  for (double x : {0.0, 0.5, 1.0}) {
    for (double b : {0.1, 0.5}) {
      CHECK(kernel_mass(x, b) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
  CHECK(kernel_mass(5.0, 0.01) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("kernel value at t = 0") {
  CHECK(gamma_kernel({1.0, 0.5, 0.0}) == 0.0);      // rho = 2
  CHECK(gamma_kernel({0.05, 0.1, 0.0}) == 0.0);     // boundary, rho > 1
  CHECK(gamma_kernel({0.0, 0.1, 0.0}) == 10.0);     // rho = 1: limit 1/b
  CHECK_THROWS_AS(gamma_kernel({1.0, 0.5, -1.0}), std::domain_error);
}

TEST_CASE("log correction examples") {
  // ln 1 - ln 0.5 - Psi(2)
  const double expected = std::log(2.0) - (1.0 - kEulerGamma);
  CHECK(log_correction({1.0, 0.5, 1.0}) == doctest::Approx(expected).epsilon(1e-12));

  // Boundary branch: ln 0.2 - ln 0.1 - Psi(1.25), with
  // Psi(1.25) = 4 - gamma - pi/2 - 3 ln 2.
  const double psi_5_4 = 4.0 - kEulerGamma - M_PI / 2.0 - 3.0 * std::log(2.0);
  CHECK(log_correction({0.1, 0.1, 0.2}) ==
        doctest::Approx(std::log(2.0) - psi_5_4).epsilon(1e-12));

  // Zero of L1 by construction: t = b exp(Psi(x/b)) for x >= 2b.
  const double x = 1.7, b = 0.2;
  const double t0 = b * std::exp(gke::digamma(x / b));
  CHECK(std::abs(log_correction({x, b, t0})) <= 1e-12);
}

TEST_CASE("derivative kernel at a hand-checkable point") {
  const double k = 4.0 * std::exp(-2.0);
  const double l = std::log(2.0) - (1.0 - kEulerGamma);
  // Interior prefactor 1/b = 2. Oracle product evaluates to 0.29271706...
  CHECK(gamma_kernel_derivative({1.0, 0.5, 1.0}) ==
        doctest::Approx(2.0 * k * l).epsilon(1e-12));
}

TEST_CASE("derivative vanishes at x = 0 and at t = 0") {
  for (double t : {0.01, 0.5, 2.0}) {
    CHECK(gamma_kernel_derivative({0.0, 0.1, t}) == 0.0);
  }
  CHECK(gamma_kernel_derivative({1.0, 0.5, 0.0}) == 0.0);
  CHECK(gamma_kernel_derivative({0.03, 0.1, 0.0}) == 0.0);
}

TEST_CASE("derivative matches central finite differences on both branches") {
  gke::SplitMix64 g(11);
  int interior = 0, boundary = 0;
  while (interior < 50 || boundary < 50) {
    const double b = 0.05 + 0.45 * g.next_unit();
    const bool pick_boundary = boundary < 50 && g.next_unit() < 0.5;
    double x;
    if (pick_boundary) {
      x = (0.15 + 0.7 * g.next_unit()) * 2.0 * b;  // inside [0, 2b)
    } else {
      x = 2.0 * b * (1.1 + 2.0 * g.next_unit());
    }
    const auto sp = shape_param(x, b);
    // Draw t from the kernel's bulk so values are not denormal.
    const double mean = sp.value * b;
    const double sd = std::sqrt(sp.value) * b;
    const double t = std::max(0.05 * mean, mean + sd * (2.0 * g.next_unit() - 1.0));
    const double analytic = gamma_kernel_derivative({x, b, t});
    const double fd = fd_derivative(x, b, t);
    const double scale = std::max(std::abs(analytic), 1e-8);
    CHECK(std::abs(analytic - fd) / scale <= 1e-4);
    (sp.branch == ShapeBranch::Boundary ? boundary : interior) += 1;
  }

  // The spec's named spot check.
  const double analytic = gamma_kernel_derivative({2.0, 0.05, 2.1});
  CHECK(std::abs(analytic - fd_derivative(2.0, 0.05, 2.1)) <= 1e-4 * std::abs(analytic));
}

TEST_CASE("x = 2b uses the interior branch for the derivative") {
  const double b = 0.25, t = 0.6;
  const gke::KernelProfile profile(2.0 * b, b);
  CHECK(profile.branch() == ShapeBranch::Interior);
  const double expected =
      (1.0 / b) * gamma_kernel({2.0 * b, b, t}) * log_correction({2.0 * b, b, t});
  CHECK(gamma_kernel_derivative({2.0 * b, b, t}) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("kernel is continuous in x across the branch switch") {
  for (double b : {0.05, 0.2}) {
    for (double t : {0.5 * b, 1.5 * b, 2.0 * b, 3.5 * b}) {
      const double lo = gamma_kernel({2.0 * b - 1e-9, b, t});
      const double hi = gamma_kernel({2.0 * b + 1e-9, b, t});
      CHECK(std::abs(lo - hi) <= 1e-6 * std::max(std::abs(lo), 1e-300));
    }
  }
}

TEST_CASE("kernel is the Gamma(rho, b) law: sampler mean matches rho*b") {
  const double rho = 7.3, b = 0.2;
  const auto dist = gke::ReferenceDistribution::gamma(rho, b);
  const auto sample = dist.sample(100000, 99, 0);
  const double se = std::sqrt(rho) * b / std::sqrt(1e5);
  CHECK(std::abs(sample.mean() - rho * b) <= 4.0 * se);
}
