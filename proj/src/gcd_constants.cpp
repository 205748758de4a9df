#include "redheffer/gcd_constants.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "redheffer/kahan.hpp"
#include "redheffer/zeta.hpp"

namespace redheffer {

namespace {

// sum_{d|l} d^2 phi(l/d) for a single l, via spf factorization. The result
// is multiplicative with p-power value p^(2k) + (p-1) p^(k-1) (p^k + ... ),
// but enumerating divisors keeps it transparent; l has at most 15 distinct
// prime factors in 64 bits, so this is O(sigma0(l)).
std::uint64_t divisor_phi_convolution(std::uint64_t l, const DivisorTables& tables) {
  std::vector<std::uint64_t> divisors{1};
  std::uint64_t rest = l;
  while (rest > 1) {
    const std::uint64_t p = tables.spf[rest];
    std::uint64_t pk = 1;
    while (rest % p == 0) {
      rest /= p;
      pk *= p;
    }
    const std::size_t base = divisors.size();
    for (std::size_t j = 0; j < base; ++j) {
      std::uint64_t q = p;
      while (true) {
        divisors.push_back(divisors[j] * q);
        if (q == pk) break;
        q *= p;
      }
    }
  }
  std::uint64_t sum = 0;
  for (std::uint64_t d : divisors) sum += d * d * tables.phi[l / d];
  return sum;
}

}  // namespace

GcdConstants build_gcd_constants(std::size_t L, const DivisorTables& tables) {
  if (L == 0) throw std::invalid_argument("build_gcd_constants: L must be >= 1");
  if (!tables.covers(L)) {
    throw std::invalid_argument("build_gcd_constants: tables do not cover L = " +
                                std::to_string(L));
  }

  // One convolution sieve: conv[l] = sum_{d|l} d^2 phi(l/d). Max value is
  // ~5.3e12 at L = 1e6 (c_l stays below ~9 there), far inside uint64.
  std::vector<std::uint64_t> conv(L + 1, 0);
  for (std::uint64_t d = 1; d <= L; ++d) {
    const std::uint64_t dd = d * d;
    for (std::uint64_t m = 1, dm = d; dm <= L; ++m, dm += d) {
      conv[dm] += dd * tables.phi[m];
    }
  }

  GcdConstants c;
  c.L = L;
  c.method = GcdConstants::Method::kClosedForm;
  c.values.assign(L + 1, 0.0);
  for (std::size_t l = 1; l <= L; ++l) {
    c.values[l] = kZeta2 * static_cast<double>(conv[l]) /
                  (static_cast<double>(l) * static_cast<double>(l));
  }
  return c;
}

double c_constant(std::size_t l, const DivisorTables& tables) {
  if (l == 0) throw std::invalid_argument("c_constant: l must be >= 1");
  if (!tables.covers(l)) {
    throw std::invalid_argument("c_constant: tables do not cover l = " + std::to_string(l));
  }
  const std::uint64_t conv = divisor_phi_convolution(l, tables);
  return kZeta2 * static_cast<double>(conv) /
         (static_cast<double>(l) * static_cast<double>(l));
}

double c_constant_series(std::size_t l, std::size_t cutoff) {
  if (l == 0) throw std::invalid_argument("c_constant_series: l must be >= 1");
  if (cutoff < l) {
    throw std::invalid_argument("c_constant_series: cutoff " + std::to_string(cutoff) +
                                " < l = " + std::to_string(l) +
                                " (need at least one full period)");
  }
  KahanAccumulator acc;
  for (std::size_t d = 1; d <= cutoff; ++d) {
    const double g = static_cast<double>(std::gcd(d, l));
    acc.add(g / (static_cast<double>(d) * static_cast<double>(d)));
  }
  return acc.value();
}

GcdConstants build_gcd_constants_series(std::size_t L, std::size_t cutoff) {
  if (L == 0) throw std::invalid_argument("build_gcd_constants_series: L must be >= 1");
  GcdConstants c;
  c.L = L;
  c.method = GcdConstants::Method::kTruncatedSeries;
  c.series_cutoff = cutoff;
  c.values.assign(L + 1, 0.0);
  for (std::size_t l = 1; l <= L; ++l) c.values[l] = c_constant_series(l, cutoff);
  return c;
}

}  // namespace redheffer
