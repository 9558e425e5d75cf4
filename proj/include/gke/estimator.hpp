#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gke/kernel.hpp"
#include "gke/sample.hpp"

namespace gke {

enum class EstimateKind { Density, Derivative };

// Sample-average gamma-kernel estimator of the density and its derivative.
// Construction precomputes the sorted observations and their logs once, so
// grid sweeps cost one exp() per (grid point, observation) pair. Summation
// runs in ascending-value order with compensated accumulation, which makes
// results independent of the input ordering and of how grid points are
// distributed over threads.
class GammaKernelEstimator {
 public:
  GammaKernelEstimator(const Sample& s, double bandwidth);

  // (1/n) sum_i K_{rho_b(x),b}(X_i)
  double density(double x) const;

  // (1/n) sum_i K'_{rho_b(x),b}(X_i); exactly 0 at x = 0
  double derivative(double x) const;

  std::vector<std::pair<double, double>> on_grid(const EvalGrid& g,
                                                 EstimateKind which) const;

  double bandwidth() const { return b_; }

 private:
  std::vector<double> t_;      // ascending
  std::vector<double> log_t_;
  double b_;
};

// One-shot conveniences; construct the estimator once when evaluating many
// points.
double density_estimate(const Sample& s, double bandwidth, double x);
double derivative_estimate(const Sample& s, double bandwidth, double x);
std::vector<std::pair<double, double>> estimate_on_grid(const Sample& s,
                                                        double bandwidth,
                                                        const EvalGrid& g,
                                                        EstimateKind which);

}  // namespace gke
