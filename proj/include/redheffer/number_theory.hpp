#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace redheffer {

// Shared sieve output. All arrays are 1-based: size n+1, slot 0 unused.
// Carrying the dummy slot means every divisor/multiple formula in the
// codebase reads exactly like the math, which kills the off-by-one bug class.
struct DivisorTables {
  std::uint64_t n = 0;
  std::vector<std::int8_t> mu;       // Moebius function
  std::vector<std::uint32_t> sigma0; // number of divisors
  std::vector<std::uint64_t> sigma1; // sum of divisors
  std::vector<std::uint64_t> phi;    // Euler totient
  std::vector<std::uint32_t> spf;    // smallest prime factor, spf[1] = 1

  bool covers(std::uint64_t k) const { return k >= 1 && k <= n; }
};

// Builds all five tables up to n. Linear sieve for mu/phi/spf, divisor
// enumeration pass (O(n log n)) for sigma0/sigma1. Throws std::invalid_argument
// for n = 0. n = 1e7 fits comfortably in memory (~250 MB).
DivisorTables sieve_tables(std::uint64_t n);

// Mertens function M(n) = sum_{k<=n} mu(k). Throws std::invalid_argument if
// the tables do not cover n.
std::int64_t mertens(std::uint64_t n, const DivisorTables& tables);

// Pillai's arithmetical function P(d) = sum_{k<=d} gcd(k, d), computed via
// the divisor-totient identity P(d) = sum_{e|d} e * phi(d/e). Throws
// std::invalid_argument if the tables do not cover d.
std::uint64_t pillai(std::uint64_t d, const DivisorTables& tables);

// Strict running-maximum record positions of a 1-based sequence
// (values[1..n], slot 0 ignored). Index 1 is always a record; a constant
// sequence yields {1}. Throws std::invalid_argument if values has no
// payload (size < 2).
std::vector<std::uint64_t> record_indices(std::span<const double> values);

// Binary cache for sieve tables: magic "RDHF", u32 format version, u64 n,
// then the five arrays back to back, little-endian. A version bump
// invalidates old caches; load_tables throws std::runtime_error on bad
// magic, version mismatch, or truncation, and callers are expected to
// rebuild rather than migrate.
inline constexpr std::uint32_t kTablesFormatVersion = 1;

void save_tables(const DivisorTables& tables, const std::filesystem::path& path);
DivisorTables load_tables(const std::filesystem::path& path);

}  // namespace redheffer
