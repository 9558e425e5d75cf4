#include "gke/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gke/quadrature.hpp"

namespace gke {

namespace {

constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kTheoryLowerCut = 1e-6;

QuadratureOptions theory_quadrature_options() {
  QuadratureOptions opt;
  opt.abs_tol = 1e-9;
  opt.rel_tol = 1e-7;
  return opt;
}

double theory_upper_cut(const ReferenceDistribution& dist) {
  return dist.quantile(1.0 - 1e-9);
}

}  // namespace

void validate(const MixingSpec& spec) {
  if (!(spec.c > 0.0)) throw std::domain_error("MixingSpec: C must be positive");
  if (!(spec.nu > 0.0) || !(spec.nu <= 1.0)) {
    throw std::domain_error("MixingSpec: nu must lie in (0, 1]");
  }
  if (!(std::abs(spec.rho_ar) < 1.0)) {
    throw std::domain_error("MixingSpec: |rho_ar| must be below 1");
  }
  if (!(spec.tau0 >= 1.0)) throw std::domain_error("MixingSpec: tau0 must be at least 1");
  if (!(spec.abs_moment > 0.0)) {
    throw std::domain_error("MixingSpec: E|X|^nu must be positive");
  }
  if (!(spec.upsilon > 0.0) || !(spec.upsilon < 1.0)) {
    throw std::domain_error("MixingSpec: upsilon must lie in (0, 1)");
  }
}

double pointwise_P(const ReferenceDistribution& dist, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("pointwise_P: x must be positive");
  }
  const double u = dist.pdf(x) / (3.0 * x * x) + dist.pdf_second_derivative(x);
  return u * u;
}

TheoryFunctionals theory_functionals(const ReferenceDistribution& dist) {
  const DensityFunctionals base = functionals_of(dist);
  const double xmax = theory_upper_cut(dist);
  const double corr = integrate_origin_aware(
      [&dist](double x) {
        return std::pow(x, -1.5) * (dist.pdf(x) / x - dist.pdf_derivative(x));
      },
      kTheoryLowerCut, xmax, theory_quadrature_options());
  return {base.i1, base.i2, corr};
}

MiseTerms mise_terms_from(const TheoryFunctionals& fun, double b, std::size_t n) {
  if (!(b > 0.0)) throw std::domain_error("mise_terms: bandwidth must be positive");
  if (n < 1) throw std::invalid_argument("mise_terms: need n >= 1");
  const double bias_sq = b * b / 16.0 * fun.i2;
  // Variance carries the 1/n factor last so that doubling n halves it exactly.
  const double variance =
      std::pow(b, -1.5) * (fun.i1 + 0.5 * b * fun.corr) / (4.0 * kSqrtPi) /
      static_cast<double>(n);
  return {bias_sq, variance};
}

MiseTerms mise_terms(const ReferenceDistribution& dist, double b, std::size_t n) {
  return mise_terms_from(theory_functionals(dist), b, n);
}

double mise_leading_term(const ReferenceDistribution& dist, double b, std::size_t n) {
  const MiseTerms t = mise_terms(dist, b, n);
  return t.bias_sq + t.variance;
}

CovarianceConstants covariance_constants_from(double f, double fp, double fpp,
                                              double q, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("covariance_constants: x must be positive");
  }
  const double c1 = -f * (2.0 * q * q * q - 9.0 * q * q + 4.0 * q - 33.0) / (24.0 * x) -
                    fp * (q + 1.0) / 2.0 + fpp * x / 2.0;
  const double c2 =
      f * (2.0 * q + 54.0 * x - q * q * x + 21.0 * q * q * q * x + q * q * q * q * x +
           93.0 * q * x) /
          (144.0 * x * x * x) -
      fp * (q + 1.0) * (q + 1.0) / (12.0 * x) + fpp * (q + 1.0) / 12.0;
  const double c3 = -f * (q + 1.0) * (q - 2.0) / 2.0;
  return {c1, c2, c3};
}

CovarianceConstants covariance_constants(const ReferenceDistribution& dist,
                                         double q, double x) {
  return covariance_constants_from(dist.pdf(x), dist.pdf_derivative(x),
                                   dist.pdf_second_derivative(x), q, x);
}

double covariance_bound(const ReferenceDistribution& dist, double x, double b,
                        std::size_t n, const MixingSpec& spec, CovOrderForm form) {
  validate(spec);
  if (!(x > 0.0)) throw std::domain_error("covariance_bound: x must be positive");
  if (!(b > 0.0)) throw std::domain_error("covariance_bound: bandwidth must be positive");
  if (n < 1) throw std::invalid_argument("covariance_bound: need n >= 1");
  const double u = spec.upsilon;
  const CovarianceConstants c =
      covariance_constants(dist, cov_order_parameter(u, form), x);
  const double base = b * b * c.c2 + b * c.c1 + c.c3;
  const double scale = std::pow(2.0, -(u + 3.0) / 2.0) *
                       std::pow(std::numbers::pi, (1.0 - u) / 2.0) *
                       std::pow(x, -(u + 5.0) / 2.0) * std::pow(b, -(u + 1.0) / 2.0) /
                       static_cast<double>(n);
  return scale * std::pow(std::abs(base), 1.0 - u) * mixing_integral(spec);
}

double mixing_integral(const MixingSpec& spec) {
  validate(spec);
  const double head = spec.tau0 - 1.0;
  if (spec.rho_ar == 0.0) return head;
  const double r = std::pow(std::abs(spec.rho_ar), spec.nu);  // |rho^nu| in (0, 1)
  const double amplitude = 2.0 * (spec.c + 1.0) * spec.abs_moment;
  const double tail = std::pow(amplitude, spec.upsilon) *
                      std::pow(r, spec.tau0 * spec.upsilon) /
                      (spec.upsilon * std::log(1.0 / r));
  return head + tail;
}

double covariance_x_integral(const ReferenceDistribution& dist, double upsilon,
                             CovOrderForm form) {
  if (!(upsilon > 0.0) || !(upsilon < 1.0)) {
    throw std::domain_error("covariance_x_integral: upsilon must lie in (0, 1)");
  }
  const double q = cov_order_parameter(upsilon, form);
  const double power = -(upsilon + 5.0) / 2.0;
  return integrate_origin_aware(
      [&dist, q, power, upsilon](double x) {
        const double c3 = -dist.pdf(x) * (q + 1.0) * (q - 2.0) / 2.0;
        return std::pow(x, power) * std::pow(std::abs(c3), 1.0 - upsilon);
      },
      kTheoryLowerCut, theory_upper_cut(dist), theory_quadrature_options());
}

double covariance_term_from(double x_integral, double mixing, double upsilon,
                            double b, std::size_t n) {
  const double u = upsilon;
  return std::pow(2.0, -(u + 3.0) / 2.0) * std::pow(std::numbers::pi, (1.0 - u) / 2.0) *
         std::pow(b, -(u + 1.0) / 2.0) / static_cast<double>(n) * x_integral * mixing;
}

MiseBoundTerms mise_bound_terms(const ReferenceDistribution& dist, double b,
                                std::size_t n, const MixingSpec& spec,
                                CovOrderForm form) {
  validate(spec);
  const MiseTerms iid = mise_terms(dist, b, n);
  const double mixing = mixing_integral(spec);
  double covariance = 0.0;
  if (mixing != 0.0) {
    covariance = covariance_term_from(covariance_x_integral(dist, spec.upsilon, form),
                                      mixing, spec.upsilon, b, n);
  }
  return {iid.bias_sq, iid.variance, covariance};
}

double mise_upper_bound_dependent(const ReferenceDistribution& dist, double b,
                                  std::size_t n, const MixingSpec& spec,
                                  CovOrderForm form) {
  const MiseBoundTerms t = mise_bound_terms(dist, b, n, spec, form);
  return (t.bias_sq + t.variance) + t.covariance;
}

}  // namespace gke
