#pragma once

#include <cmath>

namespace gke {

// Neumaier-compensated accumulator. The result is a pure function of the
// order in which add() is called, so callers that need reproducible sums
// feed values in a fixed (sorted) order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace gke
