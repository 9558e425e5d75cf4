#pragma once

// Adaptive Simpson quadrature. The origin-aware variant splits at x = 1 and
// integrates the lower part in log coordinates, which tames the x^(-3/2) and
// steeper power factors the density functionals carry near 0.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gke/errors.hpp"

namespace gke {

struct QuadratureOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  int max_depth = 44;
  int initial_panels = 16;
};

namespace detail {

template <class F>
double simpson_adapt(const F& f, double a, double fa, double m, double fm,
                     double b, double fb, double whole, double eps, int depth,
                     bool& converged) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0 || !(rm > lm)) {
    converged = false;
    return left + right + delta / 15.0;
  }
  return simpson_adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth - 1, converged) +
         simpson_adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth - 1, converged);
}

}  // namespace detail

// Integral of f over [a, b]. Starts from a uniform composite-Simpson pass
// (initial_panels wide enough to see narrow bumps), then refines each panel
// adaptively. Throws DivergedFunctionalError when the depth budget runs out
// before the tolerance is met.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("integrate: invalid interval");
  }
  const int n = opt.initial_panels;
  std::vector<double> edge(n + 1), f_edge(n + 1), mid(n), f_mid(n);
  const double width = (b - a) / n;
  for (int i = 0; i <= n; ++i) {
    edge[i] = (i == n) ? b : a + i * width;
    f_edge[i] = f(edge[i]);
  }
  double coarse = 0.0;
  for (int i = 0; i < n; ++i) {
    mid[i] = 0.5 * (edge[i] + edge[i + 1]);
    f_mid[i] = f(mid[i]);
    coarse += (edge[i + 1] - edge[i]) / 6.0 * (f_edge[i] + 4.0 * f_mid[i] + f_edge[i + 1]);
  }
  const double eps_total = std::max(opt.abs_tol, opt.rel_tol * std::abs(coarse));
  bool converged = true;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double panel = (edge[i + 1] - edge[i]) / 6.0 *
                         (f_edge[i] + 4.0 * f_mid[i] + f_edge[i + 1]);
    total += detail::simpson_adapt(f, edge[i], f_edge[i], mid[i], f_mid[i],
                                   edge[i + 1], f_edge[i + 1], panel,
                                   eps_total * (edge[i + 1] - edge[i]) / (b - a),
                                   opt.max_depth, converged);
  }
  if (!converged) {
    throw DivergedFunctionalError("integrate: tolerance not reached on [" +
                                  std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return total;
}

// Integral of f over [a, b] with 0 < a, evaluated in u = ln x coordinates.
template <class F>
double integrate_log_scaled(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (!(a > 0.0)) {
    throw std::domain_error("integrate_log_scaled: lower bound must be positive");
  }
  auto g = [&f](double u) {
    const double x = std::exp(u);
    return f(x) * x;
  };
  return integrate(g, std::log(a), std::log(b), opt);
}

// Semi-axis integrand on [a, b], 0 < a < b: log coordinates below x = 1,
// plain coordinates above.
template <class F>
double integrate_origin_aware(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (!(a > 0.0) || !(b > a)) {
    throw std::domain_error("integrate_origin_aware: need 0 < a < b");
  }
  if (b <= 1.0) return integrate_log_scaled(f, a, b, opt);
  if (a >= 1.0) return integrate(f, a, b, opt);
  QuadratureOptions half = opt;
  half.abs_tol = 0.5 * opt.abs_tol;
  return integrate_log_scaled(f, a, 1.0, half) + integrate(f, 1.0, b, half);
}

// Trapezoid rule over tabulated (x, y) points.
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  }
  return acc;
}

}  // namespace gke
