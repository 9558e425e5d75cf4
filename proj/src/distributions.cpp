#include "gke/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gke/csv.hpp"
#include "gke/special_math.hpp"

namespace gke {

namespace {

constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kSqrtTwo = std::numbers::sqrt2;

void check_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("reference pdf: x must be positive");
  }
}

double parse_positive(std::string_view text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(text), &used);
    if (used != text.size() || !(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("");
    }
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("invalid ") + what + " parameter: '" +
                                std::string(text) + "'");
  }
}

}  // namespace

ReferenceDistribution::ReferenceDistribution(DistKind kind, double p1, double p2)
    : kind_(kind), p1_(p1), p2_(p2) {}

ReferenceDistribution ReferenceDistribution::maxwell(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("maxwell: sigma must be positive");
  }
  return ReferenceDistribution(DistKind::Maxwell, sigma, 0.0);
}

ReferenceDistribution ReferenceDistribution::weibull(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::invalid_argument("weibull: shape must be positive");
  }
  return ReferenceDistribution(DistKind::Weibull, shape, 0.0);
}

ReferenceDistribution ReferenceDistribution::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale)) {
    throw std::invalid_argument("gamma: shape and scale must be positive");
  }
  return ReferenceDistribution(DistKind::Gamma, shape, scale);
}

ReferenceDistribution ReferenceDistribution::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("distribution spec must look like name:params, got '" +
                                std::string(spec) + "'");
  }
  const std::string_view name = spec.substr(0, colon);
  const std::string_view params = spec.substr(colon + 1);
  if (name == "maxwell") {
    return maxwell(parse_positive(params, "maxwell sigma"));
  }
  if (name == "weibull") {
    return weibull(parse_positive(params, "weibull shape"));
  }
  if (name == "gamma") {
    const auto comma = params.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("gamma spec needs two parameters: gamma:shape,scale");
    }
    return gamma(parse_positive(params.substr(0, comma), "gamma shape"),
                 parse_positive(params.substr(comma + 1), "gamma scale"));
  }
  throw std::invalid_argument("unknown distribution '" + std::string(name) +
                              "' (expected maxwell, weibull or gamma)");
}

double ReferenceDistribution::pdf(double x) const {
  check_x(x);
  switch (kind_) {
    case DistKind::Maxwell: {
      const double s = p1_;
      return kSqrtTwo * x * x * std::exp(-x * x / (2.0 * s * s)) / (s * s * s * kSqrtPi);
    }
    case DistKind::Weibull: {
      const double s = p1_;
      return s * std::exp((s - 1.0) * std::log(x) - std::pow(x, s));
    }
    case DistKind::Gamma: {
      const double a = p1_, b = p2_;
      return std::exp((a - 1.0) * std::log(x) - x / b - a * std::log(b) - ln_gamma(a));
    }
  }
  return 0.0;
}

double ReferenceDistribution::pdf_derivative(double x) const {
  check_x(x);
  switch (kind_) {
    case DistKind::Maxwell: {
      const double s = p1_;
      const double s2 = s * s;
      return -kSqrtTwo * x * std::exp(-x * x / (2.0 * s2)) * (x * x - 2.0 * s2) /
             (s2 * s2 * s * kSqrtPi);
    }
    case DistKind::Weibull: {
      const double s = p1_;
      const double xs = std::pow(x, s);
      return -s * std::exp((s - 2.0) * std::log(x) - xs) * (s * xs - s + 1.0);
    }
    case DistKind::Gamma: {
      // d/dx of the gamma pdf: x^(a-2) e^(-x/b) (b(a-1) - x) / (b^(a+1) Gamma(a)).
      const double a = p1_, b = p2_;
      const double base =
          std::exp((a - 2.0) * std::log(x) - x / b - (a + 1.0) * std::log(b) - ln_gamma(a));
      return base * (b * (a - 1.0) - x);
    }
  }
  return 0.0;
}

double ReferenceDistribution::pdf_second_derivative(double x) const {
  check_x(x);
  switch (kind_) {
    case DistKind::Maxwell: {
      const double s = p1_;
      const double s2 = s * s;
      const double x2 = x * x;
      return kSqrtTwo * std::exp(-x2 / (2.0 * s2)) *
             (x2 * x2 - 5.0 * s2 * x2 + 2.0 * s2 * s2) /
             (s2 * s2 * s2 * s * kSqrtPi);
    }
    case DistKind::Weibull: {
      const double s = p1_;
      const double xs = std::pow(x, s);
      const double poly = s * s * xs * xs - 3.0 * s * (s - 1.0) * xs + (s - 1.0) * (s - 2.0);
      return s * std::exp((s - 3.0) * std::log(x) - xs) * poly;
    }
    case DistKind::Gamma: {
      const double a = p1_, b = p2_;
      const double c = b * (a - 1.0);
      const double poly = x * x - 2.0 * c * x + c * b * (a - 2.0);
      return std::exp((a - 3.0) * std::log(x) - x / b - (a + 2.0) * std::log(b) - ln_gamma(a)) *
             poly;
    }
  }
  return 0.0;
}

double ReferenceDistribution::cdf(double x) const {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("cdf: x must be nonnegative");
  }
  if (x == 0.0) return 0.0;
  switch (kind_) {
    case DistKind::Maxwell:
      // Maxwell is the chi distribution with 3 degrees of freedom.
      return regularized_gamma_p(1.5, x * x / (2.0 * p1_ * p1_));
    case DistKind::Weibull:
      return -std::expm1(-std::pow(x, p1_));
    case DistKind::Gamma:
      return regularized_gamma_p(p1_, x / p2_);
  }
  return 0.0;
}

double ReferenceDistribution::quantile(double p) const {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("quantile: p must lie in (0, 1)");
  }
  if (kind_ == DistKind::Weibull) {
    return std::pow(-std::log1p(-p), 1.0 / p1_);
  }
  // Bisection on the CDF. Bracket the root first.
  double lo = 0.0;
  double hi = mean() + 1.0;
  while (cdf(hi) < p) {
    hi *= 2.0;
    if (hi > 1e300) throw std::domain_error("quantile: failed to bracket");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

double ReferenceDistribution::mean() const {
  switch (kind_) {
    case DistKind::Maxwell:
      return 2.0 * p1_ * kSqrtTwo / kSqrtPi;  // 2 sigma sqrt(2/pi)
    case DistKind::Weibull:
      return std::exp(ln_gamma(1.0 + 1.0 / p1_));
    case DistKind::Gamma:
      return p1_ * p2_;
  }
  return 0.0;
}

double ReferenceDistribution::variance() const {
  switch (kind_) {
    case DistKind::Maxwell: {
      const double pi = std::numbers::pi;
      return p1_ * p1_ * (3.0 * pi - 8.0) / pi;
    }
    case DistKind::Weibull: {
      const double m = mean();
      return std::exp(ln_gamma(1.0 + 2.0 / p1_)) - m * m;
    }
    case DistKind::Gamma:
      return p1_ * p2_ * p2_;
  }
  return 0.0;
}

double draw_standard_gamma(SplitMix64& rng, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::domain_error("draw_standard_gamma: alpha must be positive");
  }
  if (alpha < 1.0) {
    // Boost from alpha + 1 with the inverse-power trick.
    const double g = draw_standard_gamma(rng, alpha + 1.0);
    return g * std::pow(rng.next_open_unit(), 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z = rng.next_normal();
    double v = 1.0 + c * z;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.next_open_unit();
    if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) {
      return d * v;
    }
  }
}

double ReferenceDistribution::draw(SplitMix64& rng) const {
  switch (kind_) {
    case DistKind::Maxwell: {
      const double z1 = rng.next_normal();
      const double z2 = rng.next_normal();
      const double z3 = rng.next_normal();
      return p1_ * std::sqrt(z1 * z1 + z2 * z2 + z3 * z3);
    }
    case DistKind::Weibull:
      return std::pow(-std::log(rng.next_open_unit()), 1.0 / p1_);
    case DistKind::Gamma:
      return p2_ * draw_standard_gamma(rng, p1_);
  }
  return 0.0;
}

Sample ReferenceDistribution::sample(std::size_t n, std::uint64_t seed,
                                     std::uint64_t stream) const {
  if (n == 0) {
    throw std::invalid_argument("sample: n must be at least 1");
  }
  SplitMix64 rng = SplitMix64::for_stream(seed, stream);
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    values.push_back(draw(rng));
  }
  return Sample(std::move(values), DataMode::IID,
                label() + " seed=" + std::to_string(seed) +
                    " stream=" + std::to_string(stream));
}

std::string ReferenceDistribution::label() const {
  switch (kind_) {
    case DistKind::Maxwell:
      return "maxwell_" + format_double(p1_);
    case DistKind::Weibull:
      return "weibull_" + format_double(p1_);
    case DistKind::Gamma:
      return "gamma_" + format_double(p1_) + "_" + format_double(p2_);
  }
  return "unknown";
}

}  // namespace gke
