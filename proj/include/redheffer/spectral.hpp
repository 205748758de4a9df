#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "redheffer/number_theory.hpp"
#include "redheffer/operators.hpp"

namespace redheffer {

// The explicit candidate for the top singular direction: v_k = sigma1(k)/k
// = sum_{d|k} 1/d. Entries are computed from the exact integer tables and
// rounded once. 1-based, entries[0] unused.
struct CandidateVector {
  std::size_t n = 0;
  std::vector<double> entries;
};

CandidateVector candidate_vector(std::size_t n, const DivisorTables& tables);

struct PowerIterationResult {
  std::size_t n = 0;
  std::vector<double> eigenvector;  // 1-based, unit norm, nonnegative entries
  double rayleigh = 0.0;            // <u, Gu> for the returned u
  std::size_t iterations = 0;
  double residual = 0.0;            // ||Gu - rayleigh * u|| for the returned u
  bool converged = false;
};

// Power iteration on the Gram operator A^T A through the matrix-free passes.
// Starts from the normalized all-ones vector (the Gram matrix is entrywise
// positive, so the top eigenvector is too and the start is never
// orthogonal to it). Stops when the relative Rayleigh change drops below
// tol, or earlier if the relative residual ||Gu - ru|| <= tol * r already
// certifies convergence; hitting max_iter sets converged = false instead of
// throwing -- the residual field reports how far off the result is either
// way. Throws std::invalid_argument for tol <= 0 or max_iter = 0.
PowerIterationResult power_iteration(const RedhefferOperator& op, double tol = 1e-10,
                                     std::size_t max_iter = 10000);

struct SimilarityReport {
  std::size_t n = 0;
  double norm_v = 0.0;
  double norm_gram_v = 0.0;
  double inner = 0.0;
  double statistic = 0.0;  // cos angle(vec, G vec), in (0, 1]
  double elapsed_ms = 0.0;
};

// cos angle(vec, G vec) for an arbitrary 1-based vector: three compensated
// accumulations (inner product and both norms) over one Gram application.
SimilarityReport cosine_with_gram(const RedhefferOperator& op,
                                  std::span<const double> vec);

// The headline statistic: alignment of the candidate v_n with its own image
// under the Gram operator. Scale invariant, equals 1 iff v_n is an
// eigenvector (Cauchy-Schwarz), and converges to alpha ~ 0.997992 as n grows.
SimilarityReport similarity_statistic(std::size_t n, const DivisorTables& tables);
SimilarityReport similarity_statistic(std::size_t n);  // sieves its own tables

struct ProfileSummary {
  double prime_mean = 0.0;         // mean entry over prime indices
  double many_divisor_mean = 0.0;  // mean entry over indices with sigma0 >= 8
  double min = 0.0;
  double max = 0.0;
  std::vector<std::uint64_t> records;  // plain record_indices of the vector
};

// Structure probe for any 1-based vector (candidate or computed singular
// vector): primes sit near the bottom of the profile, divisor-rich indices
// near the top. Means are NaN if the index class is empty in range (no
// primes needs n < 2, no sigma0 >= 8 needs n < 24).
ProfileSummary prime_vs_composite_profile(std::span<const double> vec,
                                          const DivisorTables& tables);

// Record positions in the convention used for singular-vector reporting:
// index 1 (the global maximum -- the first Gram row is dense, so u_1
// dominates everything) followed by the strict records of entries[2..n]
// scanned from index 2. For divisor-driven sequences this coincides with
// the plain scan; for the singular vector itself the plain scan would stop
// at {1}.
std::vector<std::uint64_t> singular_vector_records(std::span<const double> entries);

}  // namespace redheffer
