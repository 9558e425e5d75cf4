#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gke {

enum class DataMode { IID, Dependent };

// Positive observations plus provenance. values() keeps generation order
// (chains are time-ordered); sorted_values() backs quantiles and the
// fixed-order estimator sums.
class Sample {
 public:
  Sample(std::vector<double> values, DataMode mode, std::string seed_info = "");

  // One positive decimal per line; '#' starts a comment, blank lines skipped.
  static Sample from_file(const std::string& path);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& sorted_values() const { return sorted_; }
  DataMode mode() const { return mode_; }
  const std::string& seed_info() const { return seed_info_; }
  std::size_t size() const { return values_.size(); }

  double min_value() const { return sorted_.front(); }
  double max_value() const { return sorted_.back(); }

  // Nearest-rank order statistic, p in (0, 1).
  double empirical_quantile(double p) const;

  double mean() const;
  double variance() const;  // unbiased (n - 1 denominator)

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
  DataMode mode_;
  std::string seed_info_;
};

// Strictly increasing positive evaluation points inside [lower_cut, upper_cut].
class EvalGrid {
 public:
  static constexpr std::size_t kDefaultPoints = 512;

  EvalGrid(std::vector<double> points, double lower_cut, double upper_cut);

  static EvalGrid uniform(double lo, double hi, std::size_t n);

  // Default evaluation window: 512 equally spaced points from
  // max(1e-3, 0.5 * min observation) to the empirical 0.999 quantile.
  static EvalGrid default_for(const Sample& s, std::size_t n = kDefaultPoints);

  const std::vector<double>& points() const { return points_; }
  double lower_cut() const { return lower_cut_; }
  double upper_cut() const { return upper_cut_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<double> points_;
  double lower_cut_;
  double upper_cut_;
};

}  // namespace gke
