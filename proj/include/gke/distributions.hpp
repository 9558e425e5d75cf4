#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "gke/rng.hpp"
#include "gke/sample.hpp"

namespace gke {

enum class DistKind { Maxwell, Weibull, Gamma };

// Reference densities on (0, inf) used by the bandwidth selector, the theory
// diagnostics and the simulation study:
//   Maxwell(sigma):  sqrt(2) x^2 exp(-x^2/(2 sigma^2)) / (sigma^3 sqrt(pi))
//   Weibull(s):      s x^(s-1) exp(-x^s)                 (scale fixed at 1)
//   Gamma(a, b):     x^(a-1) exp(-x/b) / (b^a Gamma(a))
// Each exposes analytic first and second pdf derivatives, the CDF, quantiles
// and an exact sampler driven by an explicit (seed, stream) pair.
class ReferenceDistribution {
 public:
  static ReferenceDistribution maxwell(double sigma);
  static ReferenceDistribution weibull(double shape);
  static ReferenceDistribution gamma(double shape, double scale);

  // "maxwell:2", "weibull:4", "gamma:2.43,1"
  static ReferenceDistribution parse(std::string_view spec);

  DistKind kind() const { return kind_; }
  double param1() const { return p1_; }  // sigma / s / alpha
  double param2() const { return p2_; }  // unused / unused / beta

  double pdf(double x) const;
  double pdf_derivative(double x) const;
  double pdf_second_derivative(double x) const;
  double cdf(double x) const;

  // Monotone in p; satisfies |cdf(quantile(p)) - p| <= 1e-9.
  double quantile(double p) const;

  double mean() const;
  double variance() const;

  double draw(SplitMix64& rng) const;
  Sample sample(std::size_t n, std::uint64_t seed, std::uint64_t stream = 0) const;

  // Comma-free identifier used in CSV output, e.g. "gamma_2.43_1".
  std::string label() const;

 private:
  ReferenceDistribution(DistKind kind, double p1, double p2);

  DistKind kind_;
  double p1_;
  double p2_;
};

// Gamma(alpha, 1) variate; Marsaglia-Tsang squeeze, valid for all alpha > 0.
double draw_standard_gamma(SplitMix64& rng, double alpha);

}  // namespace gke
