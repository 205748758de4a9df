#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "redheffer/number_theory.hpp"

namespace redheffer {

// Thrown when a size guard would be exceeded without force=true. The CLI
// maps this to its own exit code, distinct from ordinary usage errors.
class GuardViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact determinants run Bareiss elimination, O(n^3); past a few hundred
// rows that is minutes of silent compute, so refuse unless forced.
inline constexpr std::size_t kDeterminantDimGuard = 300;
// Dense application of the gcd-divisor matrix B is O(n^2) gcds; warn past
// this point but keep going (it is slow, not wrong).
inline constexpr std::size_t kDenseBDimGuard = 5000;

// Matrix-free handle for the n x n 0/1 matrix A with A_ij = 1 iff j = 1 or
// i | j. Never materialized: row/column structure is implicit in the
// divisor lattice, so applying A or A^T costs O(n log n).
class RedhefferOperator {
 public:
  // tables must cover n. The operator keeps a pointer; the tables must
  // outlive it.
  RedhefferOperator(std::size_t n, const DivisorTables& tables);

  std::size_t dim() const { return n_; }
  const DivisorTables& tables() const { return *tables_; }

  // Single-entry oracle, used by tests and the dense cross-checks.
  int entry(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_;
  const DivisorTables* tables_;
};

namespace detail {

inline void check_vector_size(std::size_t got, std::size_t n, const char* fn) {
  if (got != n + 1) {
    throw std::invalid_argument(std::string(fn) + ": expected 1-based vector of size " +
                                std::to_string(n + 1) + ", got " + std::to_string(got));
  }
}

}  // namespace detail

// y = A x over 1-based vectors (slot 0 unused, stays zero).
// Row 1 of A is all ones; row i >= 2 has ones at column 1 and at the
// multiples of i. Templated so tests can run the same code path over exact
// integer types (e.g. mpz_class).
template <class T>
std::vector<T> apply_forward(const RedhefferOperator& op, std::span<const T> x) {
  const std::size_t n = op.dim();
  detail::check_vector_size(x.size(), n, "apply_forward");
  std::vector<T> y(n + 1, T{});
  T total{};
  for (std::size_t j = 1; j <= n; ++j) total += x[j];
  y[1] = std::move(total);
  for (std::size_t i = 2; i <= n; ++i) {
    T acc = x[1];
    for (std::size_t m = i; m <= n; m += i) acc += x[m];
    y[i] = std::move(acc);
  }
  return y;
}

// z = A^T x over 1-based vectors. Column 1 of A is all ones, so
// z_1 = sum_i x_i; column j >= 2 has ones at the divisors of j, so
// z_j = sum_{d|j} x_d, accumulated by one scatter pass over d.
template <class T>
std::vector<T> apply_transpose(const RedhefferOperator& op, std::span<const T> x) {
  const std::size_t n = op.dim();
  detail::check_vector_size(x.size(), n, "apply_transpose");
  std::vector<T> z(n + 1, T{});
  for (std::size_t d = 1; d <= n; ++d) {
    const T& xd = x[d];
    for (std::size_t j = d; j <= n; j += d) z[j] += xd;
  }
  T total{};
  for (std::size_t j = 1; j <= n; ++j) total += x[j];
  z[1] = std::move(total);  // overwrite: row 1 of A^T is all ones
  return z;
}

// (A^T A) x as two structured passes; O(n log n) total and never forms the
// Gram matrix.
template <class T>
std::vector<T> apply_gram(const RedhefferOperator& op, std::span<const T> x) {
  const std::size_t n = op.dim();
  detail::check_vector_size(x.size(), n, "apply_gram");
  std::vector<T> y = apply_forward(op, x);
  return apply_transpose(op, std::span<const T>(y));
}

// Single Gram entry (A^T A)_ij = <col_i, col_j>:
//   n              if i = j = 1,
//   sigma0(j)      if i = 1,
//   sigma0(i)      if j = 1,
//   sigma0(gcd(i,j)) otherwise.
std::uint64_t gram_entry(std::size_t i, std::size_t j, std::size_t n,
                         const DivisorTables& tables);

// Dense application of B_ij = sigma0(gcd(i, j)), the Gram matrix with its
// first row/column replaced by the pattern it would have if column 1 of A
// were like the others. O(n^2) gcd evaluations; rows are independent, so
// the row loop parallelizes with bit-identical results for any thread
// count. Soft-warns on stderr above kDenseBDimGuard and proceeds.
template <class T>
std::vector<T> apply_b(std::span<const T> x, const DivisorTables& tables,
                       unsigned threads = 1);

// det(A_n), exactly. Equals the Mertens function M(n) -- the acceptance
// checks lean on that identity. Fraction-free Bareiss elimination with an
// int64 fast path (intermediates stay tiny for this matrix family; verified
// up to the guard) that escalates to GMP integers on any would-be overflow.
// Throws GuardViolation for n > kDeterminantDimGuard unless force = true.
std::int64_t exact_determinant(std::size_t n, bool force = false);

namespace detail {

// Both elimination routes, exposed for cross-checking in tests.
bool bareiss_determinant_i64(std::size_t n, std::int64_t& out);
std::int64_t bareiss_determinant_gmp(std::size_t n);

void parallel_rows(std::size_t first, std::size_t last, unsigned threads,
                   const std::function<void(std::size_t)>& row_fn);

}  // namespace detail

template <class T>
std::vector<T> apply_b(std::span<const T> x, const DivisorTables& tables,
                       unsigned threads) {
  if (x.size() < 2) throw std::invalid_argument("apply_b: empty vector");
  const std::size_t n = x.size() - 1;
  if (!tables.covers(n)) throw std::invalid_argument("apply_b: tables do not cover n");
  if (n > kDenseBDimGuard) {
    std::fprintf(stderr,
                 "apply_b: warning: n = %zu exceeds the dense guard (%zu); "
                 "this is O(n^2) and will be slow\n",
                 n, kDenseBDimGuard);
  }
  std::vector<T> y(n + 1, T{});
  detail::parallel_rows(1, n + 1, threads, [&](std::size_t i) {
    T acc{};
    for (std::size_t k = 1; k <= n; ++k) {
      const std::uint64_t g = std::gcd(i, k);
      acc += x[k] * T(static_cast<unsigned long>(tables.sigma0[g]));
    }
    y[i] = std::move(acc);
  });
  return y;
}

}  // namespace redheffer
