#include "gke/estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "gke/compensated.hpp"

namespace gke {

GammaKernelEstimator::GammaKernelEstimator(const Sample& s, double bandwidth)
    : t_(s.sorted_values()), b_(bandwidth) {
  if (!(b_ > 0.0) || !std::isfinite(b_)) {
    throw std::domain_error("estimator: bandwidth must be positive");
  }
  log_t_.resize(t_.size());
  for (std::size_t i = 0; i < t_.size(); ++i) {
    log_t_[i] = std::log(t_[i]);
  }
}

double GammaKernelEstimator::density(double x) const {
  const KernelProfile k(x, b_);
  CompensatedSum acc;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    acc.add(k.density_weight(t_[i], log_t_[i]));
  }
  return acc.value() / static_cast<double>(t_.size());
}

double GammaKernelEstimator::derivative(double x) const {
  if (x == 0.0) return 0.0;  // boundary prefactor x/(2b^2) vanishes
  const KernelProfile k(x, b_);
  CompensatedSum acc;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    acc.add(k.derivative_weight(t_[i], log_t_[i]));
  }
  return acc.value() / static_cast<double>(t_.size());
}

std::vector<std::pair<double, double>> GammaKernelEstimator::on_grid(
    const EvalGrid& g, EstimateKind which) const {
  std::vector<std::pair<double, double>> out;
  out.reserve(g.size());
  for (double x : g.points()) {
    out.emplace_back(x, which == EstimateKind::Density ? density(x) : derivative(x));
  }
  return out;
}

double density_estimate(const Sample& s, double bandwidth, double x) {
  return GammaKernelEstimator(s, bandwidth).density(x);
}

double derivative_estimate(const Sample& s, double bandwidth, double x) {
  return GammaKernelEstimator(s, bandwidth).derivative(x);
}

std::vector<std::pair<double, double>> estimate_on_grid(const Sample& s,
                                                        double bandwidth,
                                                        const EvalGrid& g,
                                                        EstimateKind which) {
  return GammaKernelEstimator(s, bandwidth).on_grid(g, which);
}

}  // namespace gke
