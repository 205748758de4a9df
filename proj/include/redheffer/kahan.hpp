#pragma once

#include <cstddef>
#include <span>

namespace redheffer {

// Kahan compensated accumulator. All long reductions in this codebase run
// through it in a fixed (ascending-index) order, which keeps results
// deterministic across runs and thread counts and keeps the summation error
// O(1) ulp instead of O(n) ulp -- the double-sum constants genuinely need
// that at cutoff 1e6.
class KahanAccumulator {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }

  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline double kahan_sum(std::span<const double> xs) {
  KahanAccumulator acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

// Compensated dot product over 1-based vectors (slot 0 ignored).
inline double kahan_dot(std::span<const double> a, std::span<const double> b) {
  KahanAccumulator acc;
  for (std::size_t i = 1; i < a.size(); ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

}  // namespace redheffer
