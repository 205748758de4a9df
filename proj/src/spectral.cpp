#include "redheffer/spectral.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "redheffer/kahan.hpp"

namespace redheffer {

CandidateVector candidate_vector(std::size_t n, const DivisorTables& tables) {
  if (n == 0) throw std::invalid_argument("candidate_vector: n must be >= 1");
  if (!tables.covers(n)) {
    throw std::invalid_argument("candidate_vector: tables do not cover n");
  }
  CandidateVector v;
  v.n = n;
  v.entries.assign(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    v.entries[k] = static_cast<double>(tables.sigma1[k]) / static_cast<double>(k);
  }
  return v;
}

namespace {

double norm2(std::span<const double> x) {
  KahanAccumulator acc;
  for (std::size_t i = 1; i < x.size(); ++i) acc.add(x[i] * x[i]);
  return std::sqrt(acc.value());
}

}  // namespace

PowerIterationResult power_iteration(const RedhefferOperator& op, double tol,
                                     std::size_t max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("power_iteration: tol must be > 0");
  if (max_iter == 0) throw std::invalid_argument("power_iteration: max_iter must be >= 1");

  const std::size_t n = op.dim();
  PowerIterationResult res;
  res.n = n;

  std::vector<double> u(n + 1, 1.0 / std::sqrt(static_cast<double>(n)));
  u[0] = 0.0;

  double rayleigh_prev = 0.0;
  bool converged = false;
  std::size_t it = 0;
  while (it < max_iter) {
    ++it;
    std::vector<double> w = apply_gram<double>(op, u);
    const double rayleigh = kahan_dot(u, w);  // u is unit norm

    // Relative residual from the vectors already in hand: a direct
    // certificate that (u, rayleigh) is an eigenpair to within tol.
    KahanAccumulator racc;
    for (std::size_t i = 1; i <= n; ++i) {
      const double r = w[i] - rayleigh * u[i];
      racc.add(r * r);
    }
    const double rel_residual = std::sqrt(racc.value()) / rayleigh;

    const double wnorm = norm2(w);
    for (std::size_t i = 1; i <= n; ++i) u[i] = w[i] / wnorm;

    if (rel_residual <= tol ||
        (it > 1 && std::abs(rayleigh - rayleigh_prev) / rayleigh < tol)) {
      converged = true;
      break;
    }
    rayleigh_prev = rayleigh;
  }

  // The Gram matrix is entrywise positive and the start vector too, so u is
  // already nonnegative; the flip is belt and braces for the sign convention.
  KahanAccumulator sum;
  for (std::size_t i = 1; i <= n; ++i) sum.add(u[i]);
  if (sum.value() < 0.0) {
    for (std::size_t i = 1; i <= n; ++i) u[i] = -u[i];
  }

  // Report rayleigh/residual for the vector actually returned.
  std::vector<double> w = apply_gram<double>(op, u);
  res.rayleigh = kahan_dot(u, w);
  KahanAccumulator racc;
  for (std::size_t i = 1; i <= n; ++i) {
    const double r = w[i] - res.rayleigh * u[i];
    racc.add(r * r);
  }
  res.residual = std::sqrt(racc.value());
  res.eigenvector = std::move(u);
  res.iterations = it;
  res.converged = converged;
  return res;
}

SimilarityReport cosine_with_gram(const RedhefferOperator& op,
                                  std::span<const double> vec) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = op.dim();
  detail::check_vector_size(vec.size(), n, "cosine_with_gram");

  std::vector<double> g = apply_gram<double>(op, vec);

  KahanAccumulator inner, vv, gg;
  for (std::size_t k = 1; k <= n; ++k) {
    inner.add(vec[k] * g[k]);
    vv.add(vec[k] * vec[k]);
    gg.add(g[k] * g[k]);
  }

  SimilarityReport rep;
  rep.n = n;
  rep.norm_v = std::sqrt(vv.value());
  rep.norm_gram_v = std::sqrt(gg.value());
  rep.inner = inner.value();
  if (rep.norm_v == 0.0 || rep.norm_gram_v == 0.0) {
    throw std::invalid_argument("cosine_with_gram: zero vector");
  }
  rep.statistic = rep.inner / (rep.norm_v * rep.norm_gram_v);
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

SimilarityReport similarity_statistic(std::size_t n, const DivisorTables& tables) {
  const auto t0 = std::chrono::steady_clock::now();
  RedhefferOperator op(n, tables);
  CandidateVector v = candidate_vector(n, tables);
  SimilarityReport rep = cosine_with_gram(op, v.entries);
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

SimilarityReport similarity_statistic(std::size_t n) {
  const auto t0 = std::chrono::steady_clock::now();
  DivisorTables tables = sieve_tables(n);
  SimilarityReport rep = similarity_statistic(n, tables);
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

ProfileSummary prime_vs_composite_profile(std::span<const double> vec,
                                          const DivisorTables& tables) {
  if (vec.size() < 2) {
    throw std::invalid_argument("prime_vs_composite_profile: empty vector");
  }
  const std::size_t n = vec.size() - 1;
  if (!tables.covers(n)) {
    throw std::invalid_argument("prime_vs_composite_profile: tables do not cover n");
  }

  KahanAccumulator prime_sum, rich_sum;
  std::size_t prime_count = 0, rich_count = 0;
  double lo = vec[1], hi = vec[1];
  for (std::size_t k = 1; k <= n; ++k) {
    const double x = vec[k];
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    if (k >= 2 && tables.spf[k] == k) {
      prime_sum.add(x);
      ++prime_count;
    }
    if (tables.sigma0[k] >= 8) {
      rich_sum.add(x);
      ++rich_count;
    }
  }

  ProfileSummary s;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  s.prime_mean = prime_count ? prime_sum.value() / static_cast<double>(prime_count) : nan;
  s.many_divisor_mean =
      rich_count ? rich_sum.value() / static_cast<double>(rich_count) : nan;
  s.min = lo;
  s.max = hi;
  s.records = record_indices(vec);
  return s;
}

std::vector<std::uint64_t> singular_vector_records(std::span<const double> entries) {
  if (entries.size() < 2) {
    throw std::invalid_argument("singular_vector_records: empty vector");
  }
  std::vector<std::uint64_t> records{1};
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 2; i < entries.size(); ++i) {
    if (entries[i] > best) {
      best = entries[i];
      records.push_back(i);
    }
  }
  return records;
}

}  // namespace redheffer
