#pragma once

#include <cmath>

namespace csl {

/// Neumaier's variant of Kahan summation: also correct when the incoming
/// term is larger in magnitude than the running sum.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace csl
