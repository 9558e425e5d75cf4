#pragma once

#include <cstddef>

#include "gke/bandwidth.hpp"
#include "gke/distributions.hpp"

namespace gke {

// Parameters of the AR(1) strong-mixing envelope
//   alpha(tau) <= 1                          for 1 <= tau < tau0,
//   alpha(tau) <= 2(C+1) E|X|^nu |rho^nu|^tau for tau >= tau0,
// together with the exponent upsilon in (0,1) used by the covariance bound.
struct MixingSpec {
  double c;           // C > 0
  double nu;          // min{p, q, 1}, in (0, 1]
  double rho_ar;      // AR coefficient, |rho| < 1
  double tau0;        // envelope switch point, >= 1
  double abs_moment;  // E|X|^nu > 0
  double upsilon;     // in (0, 1)
};

void validate(const MixingSpec& spec);

// P(x) = (f(x)/(3x^2) + f''(x))^2, the squared-bias density of the MISE
// leading term.
double pointwise_P(const ReferenceDistribution& dist, double x);

// Distribution functionals entering the MISE expressions; computing them once
// makes bandwidth sweeps cheap. i1 and i2 are the bandwidth module's
// functionals; corr = int x^(-3/2) (f/x - f') dx is the variance correction.
struct TheoryFunctionals {
  double i1;
  double i2;
  double corr;
};

TheoryFunctionals theory_functionals(const ReferenceDistribution& dist);

struct MiseTerms {
  double bias_sq;   // (b^2/16) I2
  double variance;  // b^(-3/2)/(4 sqrt(pi) n) * (I1 + (b/2) corr)
};

MiseTerms mise_terms_from(const TheoryFunctionals& fun, double b, std::size_t n);
MiseTerms mise_terms(const ReferenceDistribution& dist, double b, std::size_t n);

// Leading MISE term of the derivative estimate for independent data.
double mise_leading_term(const ReferenceDistribution& dist, double b, std::size_t n);

// The C1, C2, C3 constants of the covariance bound, linear in (f, f', f'').
struct CovarianceConstants {
  double c1;
  double c2;
  double c3;
};

CovarianceConstants covariance_constants_from(double f, double fp, double fpp,
                                              double q_order, double x);
CovarianceConstants covariance_constants(const ReferenceDistribution& dist,
                                         double q_order, double x);

// The bound's statement evaluates C_i at upsilon itself; the appendix derives
// them at q = 2 + delta with upsilon = delta/(2 + delta). Both forms are
// exposed; the literal one is the default.
enum class CovOrderForm { UpsilonLiteral, QSubstituted };

inline double cov_order_parameter(double upsilon, CovOrderForm form) {
  return form == CovOrderForm::UpsilonLiteral ? upsilon : 2.0 / (1.0 - upsilon);
}

// Pointwise covariance bound
//   2^(-(u+3)/2) pi^((1-u)/2) x^(-(u+5)/2) (b^(-(u+1)/2)/n)
//     |b^2 C2 + b C1 + C3|^(1-u) * mixing_integral(spec).
// The base is signed in general; its magnitude is what the norm inequality
// controls, hence the absolute value.
double covariance_bound(const ReferenceDistribution& dist, double x, double b,
                        std::size_t n, const MixingSpec& spec,
                        CovOrderForm form = CovOrderForm::UpsilonLiteral);

// Closed form of int_1^inf alpha~(tau)^upsilon dtau:
//   (tau0 - 1) + (2(C+1) E|X|^nu)^upsilon |rho^nu|^(tau0 upsilon)
//                / (upsilon ln(1/|rho^nu|)),
// with a vanishing tail at rho = 0.
double mixing_integral(const MixingSpec& spec);

// int x^(-(u+5)/2) |C3(q, x)|^(1-u) dx over the theory domain; independent of
// b and n.
double covariance_x_integral(const ReferenceDistribution& dist, double upsilon,
                             CovOrderForm form = CovOrderForm::UpsilonLiteral);

// Covariance addend of the dependent-data MISE bound, assembled from a
// precomputed x-integral.
double covariance_term_from(double x_integral, double mixing, double upsilon,
                            double b, std::size_t n);

struct MiseBoundTerms {
  double bias_sq;
  double variance;
  double covariance;
};

MiseBoundTerms mise_bound_terms(const ReferenceDistribution& dist, double b,
                                std::size_t n, const MixingSpec& spec,
                                CovOrderForm form = CovOrderForm::UpsilonLiteral);

// Dependent-data MISE upper bound: variance + covariance + squared bias.
// Coincides exactly with mise_leading_term when the mixing integral is zero.
double mise_upper_bound_dependent(const ReferenceDistribution& dist, double b,
                                  std::size_t n, const MixingSpec& spec,
                                  CovOrderForm form = CovOrderForm::UpsilonLiteral);

}  // namespace gke
