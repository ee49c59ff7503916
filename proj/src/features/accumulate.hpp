#pragma once

#include <cmath>

namespace artfeat::features::detail {

// Neumaier-compensated running sum; error stays O(eps) regardless of the
// number of terms.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_{0.0};
  double comp_{0.0};
};

}  // namespace artfeat::features::detail
