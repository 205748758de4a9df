#include "redheffer/constants.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "redheffer/kahan.hpp"
#include "redheffer/operators.hpp"
#include "redheffer/zeta.hpp"

namespace redheffer {

namespace {

// Binary gcd on machine words: the double-sum kernels evaluate O(D^2) of
// these, and avoiding the division unit is a solid constant factor.
std::uint32_t binary_gcd(std::uint32_t a, std::uint32_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  while (b != 0) {
    b >>= std::countr_zero(b);
    if (a > b) std::swap(a, b);
    b -= a;
  }
  return a << shift;
}

constexpr std::size_t kDoubleSumWarnCutoff = 20000;

// Shared kernel: sum over d1, d2 <= D of w[d1] w[d2] gcd(d1, d2), computed
// as diagonal + 2x strict upper triangle. Per-row compensated partials,
// rows combined in ascending order -- deterministic for any thread count.
double double_gcd_sum(std::span<const double> w, unsigned threads) {
  const std::size_t D = w.size() - 1;
  std::vector<double> row(D + 1, 0.0);
  detail::parallel_rows(1, D + 1, threads, [&](std::size_t d1) {
    KahanAccumulator acc;
    const std::uint32_t a = static_cast<std::uint32_t>(d1);
    for (std::size_t d2 = d1 + 1; d2 <= D; ++d2) {
      const double g = static_cast<double>(binary_gcd(a, static_cast<std::uint32_t>(d2)));
      acc.add(w[d2] * g);
    }
    row[d1] = w[d1] * acc.value();
  });

  KahanAccumulator total;
  for (std::size_t d = 1; d <= D; ++d) {
    total.add(w[d] * w[d] * static_cast<double>(d));  // gcd(d, d) = d
    total.add(2.0 * row[d]);
  }
  return total.value();
}

void check_cutoff(std::size_t D, const char* fn) {
  if (D == 0) throw std::invalid_argument(std::string(fn) + ": cutoff must be >= 1");
  if (D > kDoubleSumWarnCutoff) {
    std::fprintf(stderr, "%s: warning: cutoff %zu means %.1e gcd evaluations\n", fn, D,
                 0.5 * static_cast<double>(D) * static_cast<double>(D));
  }
}

}  // namespace

double sum_cd_squared(std::size_t D, const GcdConstants& constants) {
  if (D == 0) throw std::invalid_argument("sum_cd_squared: cutoff must be >= 1");
  if (constants.L < D) {
    throw std::invalid_argument("sum_cd_squared: constants table covers " +
                                std::to_string(constants.L) + " < cutoff " +
                                std::to_string(D));
  }
  KahanAccumulator acc;
  for (std::size_t d = 1; d <= D; ++d) {
    const double c = constants.values[d];
    acc.add((c * c) / (static_cast<double>(d) * static_cast<double>(d)));
  }
  return acc.value();
}

double double_gcd_sum_weighted(std::size_t D, const GcdConstants& constants,
                               unsigned threads) {
  check_cutoff(D, "double_gcd_sum_weighted");
  if (constants.L < D) {
    throw std::invalid_argument("double_gcd_sum_weighted: constants table covers " +
                                std::to_string(constants.L) + " < cutoff " +
                                std::to_string(D));
  }
  std::vector<double> w(D + 1, 0.0);
  for (std::size_t d = 1; d <= D; ++d) {
    w[d] = constants.values[d] / (static_cast<double>(d) * static_cast<double>(d));
  }
  return double_gcd_sum(w, threads);
}

double double_gcd_sum_unweighted(std::size_t D, unsigned threads) {
  check_cutoff(D, "double_gcd_sum_unweighted");
  std::vector<double> w(D + 1, 0.0);
  for (std::size_t d = 1; d <= D; ++d) {
    w[d] = 1.0 / (static_cast<double>(d) * static_cast<double>(d));
  }
  return double_gcd_sum(w, threads);
}

ExtrapolationEstimate extrapolate(const std::function<double(std::size_t)>& sum_fn,
                                  std::size_t n1, std::size_t n2, double tail_exponent) {
  if (n1 == 0 || n1 >= n2) {
    throw std::invalid_argument("extrapolate: need 0 < n1 < n2");
  }
  if (!(tail_exponent > 0.0)) {
    throw std::invalid_argument("extrapolate: tail_exponent must be > 0");
  }
  ExtrapolationEstimate e;
  e.cutoff_lo = n1;
  e.cutoff_hi = n2;
  e.tail_exponent = tail_exponent;
  e.sum_lo = sum_fn(n1);
  e.sum_hi = sum_fn(n2);
  const double w1 = std::pow(static_cast<double>(n1), -tail_exponent);
  const double w2 = std::pow(static_cast<double>(n2), -tail_exponent);
  e.tail_coefficient = (e.sum_hi - e.sum_lo) / (w1 - w2);
  e.limit = e.sum_hi + e.tail_coefficient * w2;
  return e;
}

AlphaReport compute_alpha(const ExtrapolationEstimate& s1_estimate,
                          const ExtrapolationEstimate& s2_estimate) {
  if (!(s2_estimate.limit > 0.0)) {
    throw std::invalid_argument("compute_alpha: S2 limit must be positive");
  }
  AlphaReport rep;
  rep.s1_estimate = s1_estimate;
  rep.s2_estimate = s2_estimate;
  rep.s1 = s1_estimate.limit;
  rep.s2 = s2_estimate.limit;
  rep.prefactor = std::sqrt(2.0) / (std::sqrt(5.0) * std::sqrt(kZeta3));
  rep.alpha = rep.prefactor * rep.s1 / std::sqrt(rep.s2);
  return rep;
}

}  // namespace redheffer
