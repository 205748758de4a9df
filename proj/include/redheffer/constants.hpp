#pragma once

#include <cstddef>
#include <functional>

#include "redheffer/gcd_constants.hpp"

namespace redheffer {

// Tail-corrected limit of a partial-sum sequence S(N) assumed to behave like
// S(N) ~ limit - tail_coefficient / N^tail_exponent. Two cutoffs pin the
// two unknowns:
//   tail_coefficient = (S(N2) - S(N1)) / (N1^-e - N2^-e)
//   limit            = S(N2) + tail_coefficient / N2^e.
struct ExtrapolationEstimate {
  std::size_t cutoff_lo = 0;
  std::size_t cutoff_hi = 0;
  double sum_lo = 0.0;
  double sum_hi = 0.0;
  double tail_coefficient = 0.0;
  double tail_exponent = 1.0;
  double limit = 0.0;
};

// S1(D) = sum_{d<=D} c_d^2 / d^2, compensated, ascending. Requires the
// constants table to cover D. Converges to ~5.60422 with a ~5.29/D tail.
double sum_cd_squared(std::size_t D, const GcdConstants& constants);

// S2(D) = sum_{d1,d2<=D} c_d1 c_d2 gcd(d1,d2) / (d1^2 d2^2). O(D^2) gcds:
// computed as diagonal plus twice the strict upper triangle, rows in
// parallel, per-row compensated partials combined in fixed ascending order
// (bit-identical for any thread count). Soft-warns above D = 2e4.
// Converges to ~10.4933 with a ~20.5/D tail.
double double_gcd_sum_weighted(std::size_t D, const GcdConstants& constants,
                               unsigned threads = 1);

// Same double sum with both weights c == 1:
// sum gcd(d1,d2)/(d1^2 d2^2) -> 5 zeta(3)/2 ~ 3.005142. Used as a
// known-limit calibration target for the extrapolation machinery.
double double_gcd_sum_unweighted(std::size_t D, unsigned threads = 1);

// Evaluates sum_fn at both cutoffs and fits the tail model above.
// Requires 0 < n1 < n2 and tail_exponent > 0.
ExtrapolationEstimate extrapolate(const std::function<double(std::size_t)>& sum_fn,
                                  std::size_t n1, std::size_t n2,
                                  double tail_exponent = 1.0);

struct AlphaReport {
  double s1 = 0.0;         // extrapolated limit of S1
  double s2 = 0.0;         // extrapolated limit of S2
  double prefactor = 0.0;  // sqrt(2) / (sqrt(5) sqrt(zeta(3)))
  double alpha = 0.0;      // prefactor * s1 / sqrt(s2)
  ExtrapolationEstimate s1_estimate;
  ExtrapolationEstimate s2_estimate;
};

// Closed-form limit of the similarity statistic:
//   alpha = sqrt(2)/(sqrt(5) sqrt(zeta(3))) * S1 / sqrt(S2) ~ 0.997992.
// Throws std::invalid_argument if the S2 limit is not positive.
AlphaReport compute_alpha(const ExtrapolationEstimate& s1_estimate,
                          const ExtrapolationEstimate& s2_estimate);

}  // namespace redheffer
