#include "redheffer/operators.hpp"

#include <gmpxx.h>

#include <cstdlib>
#include <vector>

namespace redheffer {

namespace {

// Dense 0/1 Redheffer matrix in row-major order, 0-based storage.
template <class T>
std::vector<T> build_dense(std::size_t n) {
  std::vector<T> m(n * n, T(0));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (j == 1 || j % i == 0) m[(i - 1) * n + (j - 1)] = T(1);
    }
  }
  return m;
}

}  // namespace

namespace detail {

// Bareiss fraction-free elimination: every division is exact, intermediates
// are (k+1)x(k+1) minors of the original integer matrix. For Redheffer
// matrices the leading principal minors are Mertens values, so the pivots
// stay tiny -- int64 has enormous headroom, but every multiply/subtract is
// still overflow-checked and the caller falls back to GMP on failure.
bool bareiss_determinant_i64(std::size_t n, std::int64_t& out) {
  std::vector<std::int64_t> m = build_dense<std::int64_t>(n);
  int sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot * n + k] == 0) ++pivot;
      if (pivot == n) {
        out = 0;
        return true;
      }
      for (std::size_t j = k; j < n; ++j) std::swap(m[k * n + j], m[pivot * n + j]);
      sign = -sign;
    }
    const std::int64_t pkk = m[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::int64_t mik = m[i * n + k];
      for (std::size_t j = k + 1; j < n; ++j) {
        std::int64_t a, b;
        if (__builtin_mul_overflow(m[i * n + j], pkk, &a)) return false;
        if (__builtin_mul_overflow(mik, m[k * n + j], &b)) return false;
        if (__builtin_sub_overflow(a, b, &a)) return false;
        m[i * n + j] = a / prev;  // exact by the Bareiss identity
      }
      m[i * n + k] = 0;
    }
    prev = pkk;
  }
  out = sign * m[(n - 1) * n + (n - 1)];
  return true;
}

std::int64_t bareiss_determinant_gmp(std::size_t n) {
  std::vector<mpz_class> m = build_dense<mpz_class>(n);
  int sign = 1;
  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot * n + k] == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(m[k * n + j], m[pivot * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        tmp = m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j];
        mpz_divexact(m[i * n + j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      m[i * n + k] = 0;
    }
    prev = m[k * n + k];
  }
  mpz_class det = sign * m[(n - 1) * n + (n - 1)];
  if (!det.fits_slong_p()) std::abort();  // |det(A_n)| = O(sqrt(n)-ish); unreachable
  return det.get_si();
}

}  // namespace detail

std::int64_t exact_determinant(std::size_t n, bool force) {
  if (n == 0) throw std::invalid_argument("exact_determinant: n must be >= 1");
  if (n > kDeterminantDimGuard && !force) {
    throw GuardViolation("exact_determinant: n = " + std::to_string(n) +
                         " exceeds the O(n^3) guard (" +
                         std::to_string(kDeterminantDimGuard) +
                         "); pass force to run anyway");
  }
  if (n == 1) return 1;
  std::int64_t det = 0;
  if (detail::bareiss_determinant_i64(n, det)) return det;
  return detail::bareiss_determinant_gmp(n);
}

}  // namespace redheffer
