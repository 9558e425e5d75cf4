#pragma once

// The gamma kernel K_{rho_b(x),b}(t): a Gamma(rho, b) density in the data
// argument t, anchored at the evaluation point x through the two-branch
// shape parameter rho_b(x). All arithmetic is carried out in log space; the
// shape parameter reaches x/b ~ 1e4..1e6 in realistic runs and both
// Gamma(rho) and b^rho overflow long before that.

namespace gke {

enum class ShapeBranch { Interior, Boundary };

struct ShapeParam {
  ShapeBranch branch;
  double value;
};

// Largest supported shape parameter x/b. Beyond this we refuse to evaluate
// rather than guess an asymptotic form.
inline constexpr double kMaxShapeParam = 1e8;

// rho_b(x) = x/b for x >= 2b (interior), (x/(2b))^2 + 1 on [0, 2b)
// (boundary strip). Both branches give 2 at x = 2b.
ShapeParam shape_param(double x, double b);

struct KernelPoint {
  double x;  // evaluation point, x >= 0
  double b;  // bandwidth, b > 0
  double t;  // data argument; t = 0 takes the Gamma-pdf limit
};

// K(t) = t^(rho-1) exp(-t/b) / (b^rho Gamma(rho)), computed as
// exp((rho-1) ln t - t/b - rho ln b - lnGamma(rho)).
double gamma_kernel(const KernelPoint& p);

// L(t, x) = ln t - ln b - Psi(rho_b(x)) with the branch-appropriate rho.
double log_correction(const KernelPoint& p);

// d/dx of gamma_kernel: (1/b) K L1 in the interior, (x/(2b^2)) K L2 in the
// boundary strip. x = 2b itself uses the interior branch.
double gamma_kernel_derivative(const KernelPoint& p);

// Per-(x, b) coefficients, shared across the data argument. The estimator
// sums thousands of kernel evaluations per grid point; everything that does
// not depend on t is computed once here.
class KernelProfile {
 public:
  KernelProfile(double x, double b);

  // Requires log_t == ln t for t > 0 (callers precompute it per sample).
  double density_weight(double t, double log_t) const;
  double derivative_weight(double t, double log_t) const;

  ShapeBranch branch() const { return branch_; }
  double shape() const { return rho_; }

 private:
  double rho_;
  double inv_b_;
  double log_b_;
  double log_norm_;          // rho ln b + lnGamma(rho)
  double psi_;               // digamma(rho)
  double deriv_prefactor_;   // 1/b or x/(2 b^2)
  ShapeBranch branch_;
};

}  // namespace gke
