#include "gke/sample.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "gke/errors.hpp"

namespace gke {

Sample::Sample(std::vector<double> values, DataMode mode, std::string seed_info)
    : values_(std::move(values)), mode_(mode), seed_info_(std::move(seed_info)) {
  if (values_.empty()) {
    throw std::invalid_argument("empty sample");
  }
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("sample values must be positive and finite");
    }
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());
}

Sample Sample::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IngestionError("cannot open sample file: " + path);
  }
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r\n");
    const std::string token = line.substr(first, last - first + 1);
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
      throw IngestionError(path + ":" + std::to_string(line_no) +
                           ": not a decimal number: '" + token + "'");
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw IngestionError(path + ":" + std::to_string(line_no) +
                           ": observations must be positive, got " + token);
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw std::invalid_argument("empty sample");
  }
  return Sample(std::move(values), DataMode::IID, "file:" + path);
}

double Sample::empirical_quantile(double p) const {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("empirical_quantile: p must lie in (0, 1)");
  }
  const auto n = sorted_.size();
  auto idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  if (idx > 0) --idx;
  if (idx >= n) idx = n - 1;
  return sorted_[idx];
}

double Sample::mean() const {
  double acc = 0.0;
  for (double v : values_) acc += v;
  return acc / static_cast<double>(values_.size());
}

double Sample::variance() const {
  if (values_.size() < 2) return 0.0;
  const double m = mean();
  double acc = 0.0;
  for (double v : values_) {
    const double d = v - m;
    acc += d * d;
  }
  return acc / static_cast<double>(values_.size() - 1);
}

EvalGrid::EvalGrid(std::vector<double> points, double lower_cut, double upper_cut)
    : points_(std::move(points)), lower_cut_(lower_cut), upper_cut_(upper_cut) {
  if (!(lower_cut_ > 0.0) || !(upper_cut_ > lower_cut_)) {
    throw std::invalid_argument("EvalGrid: need 0 < lower_cut < upper_cut");
  }
  if (points_.size() < 2) {
    throw std::invalid_argument("EvalGrid: need at least two points");
  }
  double prev = 0.0;
  for (double x : points_) {
    if (!(x > prev)) {
      throw std::invalid_argument("EvalGrid: points must be strictly increasing and positive");
    }
    if (x < lower_cut_ || x > upper_cut_) {
      throw std::invalid_argument("EvalGrid: points must lie within [lower_cut, upper_cut]");
    }
    prev = x;
  }
}

EvalGrid EvalGrid::uniform(double lo, double hi, std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("EvalGrid::uniform: need at least two points");
  }
  std::vector<double> pts(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = (i + 1 == n) ? hi : lo + static_cast<double>(i) * step;
  }
  return EvalGrid(std::move(pts), lo, hi);
}

EvalGrid EvalGrid::default_for(const Sample& s, std::size_t n) {
  const double lo = std::max(1e-3, 0.5 * s.min_value());
  const double hi = s.empirical_quantile(0.999);
  if (!(hi > lo)) {
    throw std::invalid_argument("EvalGrid::default_for: degenerate sample range");
  }
  return uniform(lo, hi, n);
}

}  // namespace gke
