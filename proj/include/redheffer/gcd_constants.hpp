#pragma once

#include <cstddef>
#include <vector>

#include "redheffer/number_theory.hpp"

namespace redheffer {

// Table of the gcd-series constants
//   c_l = sum_{d>=1} gcd(d, l) / d^2,
// which admit the closed form c_l = zeta(2)/l^2 * sum_{d|l} d^2 phi(l/d)
// (equivalently zeta(2)/l^2 times the one-period sum of gcd(l, d)^2).
// values is 1-based: values[1..L], slot 0 unused. c_1 = zeta(2) and
// c_l >= zeta(2) > 1 for every l.
struct GcdConstants {
  enum class Method { kClosedForm, kTruncatedSeries };

  std::size_t L = 0;
  std::vector<double> values;
  Method method = Method::kClosedForm;
  std::size_t series_cutoff = 0;  // nonzero iff method == kTruncatedSeries
};

// Closed-form table for all l <= L via one divisor-convolution sieve over
// d^2 * phi(m), O(L log L). Requires tables.n >= L (phi is read from them).
GcdConstants build_gcd_constants(std::size_t L, const DivisorTables& tables);

// Single closed-form value, O(sigma0(l)) after factoring l by smallest prime
// factor. The divisor sum sum_{d|l} d^2 phi(l/d) is exact integer arithmetic;
// only the final zeta(2)/l^2 scaling rounds.
double c_constant(std::size_t l, const DivisorTables& tables);

// Truncated series sum_{d<=cutoff} gcd(d, l)/d^2, compensated, ascending d.
// Independent slow route used to cross-check the closed form; the truncation
// error is O(sigma0(l) * l / cutoff). Requires cutoff >= l.
double c_constant_series(std::size_t l, std::size_t cutoff);

// Series-method table (one c_constant_series call per l). O(L * cutoff):
// meant for small L cross-checks, not production use.
GcdConstants build_gcd_constants_series(std::size_t L, std::size_t cutoff);

}  // namespace redheffer
