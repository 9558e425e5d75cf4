#pragma once

#include <cstddef>

#include "gke/distributions.hpp"
#include "gke/sample.hpp"

namespace gke {

// Density functionals feeding the optimal-bandwidth constant:
//   I1 = int_0^inf x^(-3/2) f(x) dx
//   I2 = int_0^inf (f(x)/(3x^2) + f''(x))^2 dx
//   T  = 3 I1 / (sqrt(pi) I2)
// Quadrature runs on [1e-6, q(1 - 1e-9)]; the lower cut is part of the
// definition since I2's integrand need not be integrable at 0.
struct DensityFunctionals {
  double i1;
  double i2;
  double t_const;
};

DensityFunctionals functionals_of(const ReferenceDistribution& dist);

enum class BandwidthSource { Explicit, RuleOfThumb, Functionals };

struct Bandwidth {
  double value;
  std::size_t n;
  BandwidthSource source;
};

// b0 = T^(2/7) n^(-2/7), the derivative-estimation law. Requires n >= 2.
Bandwidth optimal_bandwidth(const DensityFunctionals& fun, std::size_t n);

// Comparison-only: the pdf-estimation optimal bandwidth
//   b2* = [ int x^(-1/2) f dx / (2 sqrt(pi) int x^2 f''(x)^2 dx) ]^(2/5) n^(-2/5)
// for the given reference density. Selecting the derivative bandwidth by this
// law is exactly the mistake the CLI toggle is there to demonstrate.
double pdf_law_bandwidth(const ReferenceDistribution& reference, std::size_t n);

// Gamma reference fitted by moments; alpha_hat is clamped up to 1.6 when the
// fit lands at or below it, keeping I1 finite with margin.
struct GammaFit {
  double alpha;
  double beta;
  bool clamped;
};

GammaFit fit_gamma_by_moments(const Sample& s);

struct RuleOfThumbReport {
  GammaFit fit;
  DensityFunctionals functionals;
  Bandwidth bandwidth;
};

RuleOfThumbReport rule_of_thumb_report(const Sample& s);
Bandwidth rule_of_thumb(const Sample& s);

}  // namespace gke
