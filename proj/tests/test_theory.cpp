#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "gke/quadrature.hpp"
#include "gke/rng.hpp"
#include "gke/theory.hpp"

using gke::CovarianceConstants;
using gke::covariance_bound;
using gke::covariance_constants;
using gke::covariance_constants_from;
using gke::CovOrderForm;
using gke::mise_leading_term;
using gke::mise_terms;
using gke::mise_upper_bound_dependent;
using gke::mixing_integral;
using gke::MixingSpec;
using gke::pointwise_P;
using gke::ReferenceDistribution;

namespace {

const ReferenceDistribution kGamma = ReferenceDistribution::gamma(2.43, 1.0);
const ReferenceDistribution kMaxwell = ReferenceDistribution::maxwell(2.0);

const MixingSpec kArSpec{1.0, 1.0, 0.5, 1.0, 0.5, 0.5};

// Independent transcription of the C1..C3 polynomials: integer coefficient
// arrays evaluated by Horner, x-grouped differently from the implementation.
CovarianceConstants horner_constants(double f, double fp, double fpp, double q,
                                     double x) {
  const double p1 = -33.0 + q * (4.0 + q * (-9.0 + q * 2.0));
  const double c1 = -f * p1 / (24.0 * x) - 0.5 * fp * (q + 1.0) + 0.5 * fpp * x;
  const double xpoly = 54.0 + q * (93.0 + q * (-1.0 + q * (21.0 + q)));
  const double c2 = f * (2.0 * q + x * xpoly) / (144.0 * x * x * x) -
                    fp * (q + 1.0) * (q + 1.0) / (12.0 * x) +
                    fpp * (q + 1.0) / 12.0;
  const double c3 = -0.5 * f * (q + 1.0) * (q - 2.0);
  return {c1, c2, c3};
}

// Quadrature oracle for the mixing integral: alpha~(tau)^upsilon integrated
// over [1, tau_max] with an exponentially negligible truncated tail.
double mixing_integral_by_quadrature(const MixingSpec& s) {
  const double head = s.tau0 - 1.0;
  if (s.rho_ar == 0.0) return head;
  const double r = std::pow(std::abs(s.rho_ar), s.nu);
  const double amp = 2.0 * (s.c + 1.0) * s.abs_moment;
  const double decay = s.upsilon * std::log(1.0 / r);
  const double tau_max = s.tau0 + 80.0 / decay;
  gke::QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-10;
  opt.initial_panels = 64;
  const double tail = gke::integrate(
      [&](double tau) { return std::pow(amp * std::pow(r, tau), s.upsilon); },
      s.tau0, tau_max, opt);
  return head + tail;
}

}  // namespace

TEST_CASE("pointwise P is a nonnegative square") {
  gke::SplitMix64 g(3);
  for (int i = 0; i < 100; ++i) {
    const double x = 0.05 + 6.0 * g.next_unit();
    CHECK(pointwise_P(kGamma, x) >= 0.0);
    CHECK(pointwise_P(kMaxwell, x) >= 0.0);
  }
  CHECK_THROWS_AS(pointwise_P(kGamma, 0.0), std::domain_error);
}

TEST_CASE("pointwise P assembles f and f'' as stated") {
  const double x = 1.0;
  const double direct = kGamma.pdf(x) / 3.0 + kGamma.pdf_second_derivative(x);
  CHECK(pointwise_P(kGamma, x) == doctest::Approx(direct * direct).epsilon(1e-14));
}

TEST_CASE("P vanishes where f/(3x^2) cancels f''") {
  // Bisection on g = f/(3x^2) + f'' for the Maxwell(2); g changes sign in
  // (0.5, 2).
  auto g = [&](double x) {
    return kMaxwell.pdf(x) / (3.0 * x * x) + kMaxwell.pdf_second_derivative(x);
  };
  double lo = 0.5, hi = 2.0;
  REQUIRE(g(lo) > 0.0);
  REQUIRE(g(hi) < 0.0);
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  CHECK(pointwise_P(kMaxwell, root) <= 1e-14 * pointwise_P(kMaxwell, 1.0));
}

TEST_CASE("mise leading term grows as b -> 0") {
  CHECK(mise_leading_term(kGamma, 1e-4, 1000) > mise_leading_term(kGamma, 1e-2, 1000));
}

TEST_CASE("optimal bandwidth sits near the mise minimum") {
  const auto fun = gke::theory_functionals(kGamma);
  const auto dens = gke::functionals_of(kGamma);
  const std::size_t n = 10000;
  const double b0 = gke::optimal_bandwidth(dens, n).value;
  double grid_min = 1e300;
  for (double b = b0 / 8.0; b <= b0 * 8.0; b *= 1.05) {
    const auto t = gke::mise_terms_from(fun, b, n);
    grid_min = std::min(grid_min, t.bias_sq + t.variance);
  }
  const auto at_b0 = gke::mise_terms_from(fun, b0, n);
  CHECK(at_b0.bias_sq + at_b0.variance <= 1.05 * grid_min);
}

TEST_CASE("doubling n halves the variance term exactly") {
  const auto fun = gke::theory_functionals(kGamma);
  for (double b : {0.05, 0.2}) {
    for (std::size_t n : {100ul, 1000ul, 4077ul}) {
      const auto t1 = gke::mise_terms_from(fun, b, n);
      const auto t2 = gke::mise_terms_from(fun, b, 2 * n);
      CHECK(t2.variance == t1.variance / 2.0);
      CHECK(t2.bias_sq == t1.bias_sq);
    }
  }
}

TEST_CASE("covariance constants: q = 2 kills C3") {
  for (double x : {0.3, 1.0, 4.0}) {
    CHECK(covariance_constants(kGamma, 2.0, x).c3 == 0.0);
    CHECK(covariance_constants(kMaxwell, 2.0, x).c3 == 0.0);
  }
}

TEST_CASE("covariance constants match an independent transcription") {
  gke::SplitMix64 g(17);
  for (int i = 0; i < 200; ++i) {
    const double q = 4.0 * g.next_unit();
    const double x = 0.1 + 5.0 * g.next_unit();
    for (const auto& d : {kGamma, kMaxwell}) {
      const auto got = covariance_constants(d, q, x);
      const auto want = horner_constants(d.pdf(x), d.pdf_derivative(x),
                                         d.pdf_second_derivative(x), q, x);
      CHECK(got.c1 == doctest::Approx(want.c1).epsilon(1e-12));
      CHECK(got.c2 == doctest::Approx(want.c2).epsilon(1e-12));
      CHECK(got.c3 == doctest::Approx(want.c3).epsilon(1e-12));
    }
  }
  CHECK(std::isfinite(covariance_constants(kGamma, 2.5, 1.0).c1));
}

TEST_CASE("covariance constants are linear in (f, f', f'')") {
  // With f = 0 only the derivative terms survive.
  const double q = 2.5, x = 1.3, fp = -0.4, fpp = 0.9;
  const auto got = covariance_constants_from(0.0, fp, fpp, q, x);
  CHECK(got.c1 == doctest::Approx(-fp * (q + 1.0) / 2.0 + fpp * x / 2.0));
  CHECK(got.c2 == doctest::Approx(-fp * (q + 1.0) * (q + 1.0) / (12.0 * x) +
                                  fpp * (q + 1.0) / 12.0));
  CHECK(got.c3 == 0.0);
}

TEST_CASE("covariance bound scales exactly as 1/n") {
  const double a = covariance_bound(kGamma, 1.0, 0.1, 1000, kArSpec);
  const double b = covariance_bound(kGamma, 1.0, 0.1, 2000, kArSpec);
  CHECK(b == a / 2.0);
}

TEST_CASE("covariance bound scales as b^(-(u+1)/2) when C3 dominates") {
  const double u = kArSpec.upsilon;
  const double b1 = 1e-4, b2 = 5e-5;
  const double r = covariance_bound(kGamma, 1.0, b1, 1000, kArSpec) /
                   covariance_bound(kGamma, 1.0, b2, 1000, kArSpec);
  CHECK(r == doctest::Approx(std::pow(b1 / b2, -(u + 1.0) / 2.0)).epsilon(0.02));
}

TEST_CASE("covariance bound golden value") {
  // Pinned at first computation: upsilon = 0.5, x = 1, b = 0.1, n = 1000,
  // Gamma(2.43, 1), AR spec (C, nu, rho, tau0, E|X|^nu) = (1, 1, 0.5, 1, 0.5).
  const double got = covariance_bound(kGamma, 1.0, 0.1, 1000, kArSpec);
  CHECK(got > 0.0);
  CHECK(std::isfinite(got));
  CHECK(got == doctest::Approx(0.003747742921693616).epsilon(1e-10));
}

TEST_CASE("q-substituted order form differs but stays finite") {
  const double lit = covariance_bound(kGamma, 1.0, 0.1, 1000, kArSpec,
                                      CovOrderForm::UpsilonLiteral);
  const double sub = covariance_bound(kGamma, 1.0, 0.1, 1000, kArSpec,
                                      CovOrderForm::QSubstituted);
  CHECK(std::isfinite(sub));
  CHECK(sub > 0.0);
  CHECK(sub != lit);
}

TEST_CASE("mixing integral closed form") {
  MixingSpec s = kArSpec;
  s.rho_ar = 0.0;
  s.tau0 = 3.5;
  CHECK(mixing_integral(s) == 2.5);

  // 2(C+1)E|X|^nu = 2(1.25)(0.4) = 1, rho = 0.5, nu = 1, upsilon = 0.5,
  // tau0 = 1: closed form 0.5^0.5 / (0.5 ln 2) = sqrt(2)/ln 2 = 2.0402857...
  const MixingSpec unit{0.25, 1.0, 0.5, 1.0, 0.4, 0.5};
  CHECK(mixing_integral(unit) ==
        doctest::Approx(std::sqrt(2.0) / std::log(2.0)).epsilon(1e-13));

  // Quadrature oracle across random specs.
  gke::SplitMix64 g(23);
  for (int i = 0; i < 8; ++i) {
    MixingSpec r{0.2 + 3.0 * g.next_unit(),       0.3 + 0.7 * g.next_unit(),
                 -0.8 + 1.6 * g.next_unit(),      1.0 + 3.0 * g.next_unit(),
                 0.2 + 2.0 * g.next_unit(),       0.2 + 0.7 * g.next_unit()};
    CHECK(mixing_integral(r) ==
          doctest::Approx(mixing_integral_by_quadrature(r)).epsilon(1e-6));
  }

  // Monotone in |rho|.
  MixingSpec lo = kArSpec, hi = kArSpec;
  lo.rho_ar = 0.3;
  hi.rho_ar = 0.7;
  CHECK(mixing_integral(hi) > mixing_integral(lo));

  MixingSpec bad = kArSpec;
  bad.rho_ar = 1.0;
  CHECK_THROWS_AS(mixing_integral(bad), std::domain_error);
  bad = kArSpec;
  bad.upsilon = 1.0;
  CHECK_THROWS_AS(mixing_integral(bad), std::domain_error);
}

TEST_CASE("dependent bound equals the leading term when mixing vanishes") {
  MixingSpec s = kArSpec;
  s.rho_ar = 0.0;
  s.tau0 = 1.0;
  for (double b : {0.05, 0.15}) {
    CHECK(mise_upper_bound_dependent(kGamma, b, 2000, s) ==
          mise_leading_term(kGamma, b, 2000));
  }
}

TEST_CASE("covariance addend is nonnegative and additive") {
  const auto t = gke::mise_bound_terms(kGamma, 0.1, 2000, kArSpec);
  CHECK(t.covariance >= 0.0);
  CHECK(mise_upper_bound_dependent(kGamma, 0.1, 2000, kArSpec) ==
        (t.bias_sq + t.variance) + t.covariance);
  CHECK(mise_upper_bound_dependent(kGamma, 0.1, 2000, kArSpec) >=
        mise_leading_term(kGamma, 0.1, 2000));
}

TEST_CASE("covariance addend is negligible against the variance as b -> 0") {
  for (double u : {0.1, 0.5, 0.9}) {
    MixingSpec s = kArSpec;
    s.upsilon = u;
    double prev = 1e300;
    for (double b : {1e-1, 1e-2, 1e-3}) {
      const auto t = gke::mise_bound_terms(kGamma, b, 10000, s);
      const double ratio = t.covariance / t.variance;
      CHECK(ratio < prev);
      prev = ratio;
    }
  }
}

TEST_CASE("minimized dependent bound decays like n^(-4/7)") {
  const auto fun = gke::theory_functionals(kGamma);
  const double xint = gke::covariance_x_integral(kGamma, kArSpec.upsilon);
  const double mix = mixing_integral(kArSpec);
  std::vector<double> ln_n, ln_min;
  for (std::size_t n : {1000ul, 10000ul, 100000ul}) {
    double best = 1e300;
    for (double b = 1e-3; b <= 1.0; b *= 1.07) {
      const auto t = gke::mise_terms_from(fun, b, n);
      const double bound =
          t.bias_sq + t.variance +
          gke::covariance_term_from(xint, mix, kArSpec.upsilon, b, n);
      best = std::min(best, bound);
    }
    ln_n.push_back(std::log(static_cast<double>(n)));
    ln_min.push_back(std::log(best));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = 3.0;
  for (int i = 0; i < 3; ++i) {
    sx += ln_n[i];
    sy += ln_min[i];
    sxx += ln_n[i] * ln_n[i];
    sxy += ln_n[i] * ln_min[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  CHECK(std::abs(slope + 4.0 / 7.0) <= 0.1);
}

TEST_CASE("mixing spec validation") {
  MixingSpec bad = kArSpec;
  bad.c = 0.0;
  CHECK_THROWS_AS(gke::validate(bad), std::domain_error);
  bad = kArSpec;
  bad.nu = 1.5;
  CHECK_THROWS_AS(gke::validate(bad), std::domain_error);
  bad = kArSpec;
  bad.tau0 = 0.5;
  CHECK_THROWS_AS(gke::validate(bad), std::domain_error);
  bad = kArSpec;
  bad.abs_moment = -1.0;
  CHECK_THROWS_AS(gke::validate(bad), std::domain_error);
  CHECK_NOTHROW(gke::validate(kArSpec));
}
