#include "gke/bandwidth.hpp"

#include <cmath>
#include <stdexcept>

#include "gke/errors.hpp"
#include "gke/quadrature.hpp"

namespace gke {

namespace {

constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kFunctionalLowerCut = 1e-6;
constexpr double kAlphaClamp = 2.6;

// Leading power of the pdf at the origin, f ~ c x^kappa. I1 needs
// kappa > 1/2; the truncated quadrature would quietly return a finite number
// for a divergent integral, so the check is analytic.
double origin_exponent(const ReferenceDistribution& d) {
  switch (d.kind()) {
    case DistKind::Maxwell:
      return 2.0;
    case DistKind::Weibull:
      return d.param1() - 1.0;
    case DistKind::Gamma:
      return d.param1() - 1.0;
  }
  return 0.0;
}

// T^e n^(-e) evaluated in base-2 exponent space; exp2/log2 keeps the
// power-of-two cases exact (T = 1, n = 128 gives 0.25 on the nose).
double power_law(double t_const, std::size_t n, double e) {
  return std::exp2(e * (std::log2(t_const) - std::log2(static_cast<double>(n))));
}

}  // namespace

DensityFunctionals functionals_of(const ReferenceDistribution& dist) {
  if (origin_exponent(dist) <= 0.5) {
    throw DivergedFunctionalError("functionals_of: x^(-3/2) f(x) is not integrable at 0 for " +
                                  dist.label());
  }
  const double xmax = dist.quantile(1.0 - 1e-9);
  QuadratureOptions opt;
  opt.abs_tol = 1e-9;
  opt.rel_tol = 1e-7;
  const double i1 = integrate_origin_aware(
      [&dist](double x) { return std::pow(x, -1.5) * dist.pdf(x); },
      kFunctionalLowerCut, xmax, opt);
  const double i2 = integrate_origin_aware(
      [&dist](double x) {
        const double u = dist.pdf(x) / (3.0 * x * x) + dist.pdf_second_derivative(x);
        return u * u;
      },
      kFunctionalLowerCut, xmax, opt);
  if (!(i1 > 0.0) || !(i2 > 0.0) || !std::isfinite(i1) || !std::isfinite(i2)) {
    throw DivergedFunctionalError("functionals_of: non-finite functional for " + dist.label());
  }
  return {i1, i2, 3.0 * i1 / (kSqrtPi * i2)};
}

Bandwidth optimal_bandwidth(const DensityFunctionals& fun, std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("optimal_bandwidth: need n >= 2");
  }
  return {power_law(fun.t_const, n, 2.0 / 7.0), n, BandwidthSource::Functionals};
}

double pdf_law_bandwidth(const ReferenceDistribution& reference, std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("pdf_law_bandwidth: need n >= 2");
  }
  const double xmax = reference.quantile(1.0 - 1e-9);
  QuadratureOptions opt;
  opt.abs_tol = 1e-9;
  opt.rel_tol = 1e-7;
  const double v0 = integrate_origin_aware(
      [&reference](double x) { return reference.pdf(x) / std::sqrt(x); },
      kFunctionalLowerCut, xmax, opt);
  const double a = integrate_origin_aware(
      [&reference](double x) {
        const double fpp = reference.pdf_second_derivative(x);
        return x * x * fpp * fpp;
      },
      kFunctionalLowerCut, xmax, opt);
  if (!(v0 > 0.0) || !(a > 0.0)) {
    throw DivergedFunctionalError("pdf_law_bandwidth: non-finite functional for " +
                                  reference.label());
  }
  return power_law(v0 / (2.0 * kSqrtPi * a), n, 2.0 / 5.0);
}

GammaFit fit_gamma_by_moments(const Sample& s) {
  const double m = s.mean();
  const double v = s.variance();
  if (!(v > 0.0)) {
    throw DegenerateSampleError("rule of thumb: sample variance is zero");
  }
  double alpha = m * m / v;
  bool clamped = false;
  // The fitted reference must satisfy the finiteness conditions behind the
  // b0 formula: I1 needs alpha > 3/2 and the P(x) integral needs alpha > 5/2.
  // Below that the truncated I2 is dominated by the 1e-6 cutoff and the
  // selected bandwidth collapses.
  if (alpha <= kAlphaClamp) {
    alpha = kAlphaClamp;
    clamped = true;
  }
  return {alpha, v / m, clamped};
}

RuleOfThumbReport rule_of_thumb_report(const Sample& s) {
  const GammaFit fit = fit_gamma_by_moments(s);
  const DensityFunctionals fun =
      functionals_of(ReferenceDistribution::gamma(fit.alpha, fit.beta));
  Bandwidth bw = optimal_bandwidth(fun, s.size());
  bw.source = BandwidthSource::RuleOfThumb;
  return {fit, fun, bw};
}

Bandwidth rule_of_thumb(const Sample& s) { return rule_of_thumb_report(s).bandwidth; }

}  // namespace gke
