#include "gke/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "gke/special_math.hpp"

namespace gke {

ShapeParam shape_param(double x, double b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw std::domain_error("shape_param: bandwidth must be positive");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("shape_param: evaluation point must be nonnegative");
  }
  if (x >= 2.0 * b) {
    const double rho = x / b;
    if (rho > kMaxShapeParam) {
      throw std::domain_error("shape_param: x/b exceeds the supported range 1e8");
    }
    return {ShapeBranch::Interior, rho};
  }
  const double r = x / (2.0 * b);
  return {ShapeBranch::Boundary, r * r + 1.0};
}

KernelProfile::KernelProfile(double x, double b) {
  const ShapeParam sp = shape_param(x, b);
  branch_ = sp.branch;
  rho_ = sp.value;
  inv_b_ = 1.0 / b;
  log_b_ = std::log(b);
  log_norm_ = rho_ * log_b_ + ln_gamma(rho_);
  psi_ = digamma(rho_);
  deriv_prefactor_ =
      branch_ == ShapeBranch::Interior ? inv_b_ : x / (2.0 * b * b);
}

double KernelProfile::density_weight(double t, double log_t) const {
  if (t == 0.0) {
    // Gamma-pdf limit: rho = 1 only at x = 0, where K(0) = 1/b.
    return rho_ > 1.0 ? 0.0 : inv_b_;
  }
  return std::exp((rho_ - 1.0) * log_t - t * inv_b_ - log_norm_);
}

double KernelProfile::derivative_weight(double t, double log_t) const {
  if (t == 0.0) return 0.0;  // K L -> 0 as t -> 0 for every rho >= 1
  const double k = density_weight(t, log_t);
  return deriv_prefactor_ * k * (log_t - log_b_ - psi_);
}

namespace {

void check_data_argument(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::domain_error("gamma_kernel: data argument must be nonnegative");
  }
}

}  // namespace

double gamma_kernel(const KernelPoint& p) {
  check_data_argument(p.t);
  const KernelProfile k(p.x, p.b);
  return k.density_weight(p.t, p.t > 0.0 ? std::log(p.t) : 0.0);
}

double log_correction(const KernelPoint& p) {
  check_data_argument(p.t);
  const ShapeParam sp = shape_param(p.x, p.b);
  return std::log(p.t) - std::log(p.b) - digamma(sp.value);
}

double gamma_kernel_derivative(const KernelPoint& p) {
  check_data_argument(p.t);
  const KernelProfile k(p.x, p.b);
  return k.derivative_weight(p.t, p.t > 0.0 ? std::log(p.t) : 0.0);
}

}  // namespace gke
