#pragma once

// Log-gamma and digamma evaluations that stay accurate for the very large
// shape parameters (up to 1e8) produced by the gamma kernel. Direct Gamma()
// overflows long before that, so everything downstream works with ln Gamma.

namespace gke {

// ln Gamma(z) for z > 0, Lanczos approximation (g = 7, 9 terms).
// Throws std::domain_error for non-positive or non-finite z.
double ln_gamma(double z);

// Digamma Psi(z) for z > 0: recurrence shift Psi(z) = Psi(z+1) - 1/z until
// z >= 10, then the asymptotic series ln z - 1/(2z) - sum B_2k / (2k z^2k).
// Throws std::domain_error for non-positive or non-finite z.
double digamma(double z);

// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0; series for
// x < a + 1, continued fraction otherwise. Backs the gamma-family CDFs.
double regularized_gamma_p(double a, double x);

}  // namespace gke
