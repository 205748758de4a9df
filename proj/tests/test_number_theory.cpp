#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "redheffer/number_theory.hpp"

using namespace redheffer;

namespace {

// Trial-division reference, deliberately naive.
struct BruteValues {
  std::uint32_t sigma0;
  std::uint64_t sigma1;
  std::uint64_t phi;
  int mu;
  std::uint32_t spf;
};

BruteValues brute(std::uint64_t k) {
  BruteValues b{0, 0, 0, 1, 0};
  for (std::uint64_t d = 1; d <= k; ++d) {
    if (k % d == 0) {
      b.sigma0 += 1;
      b.sigma1 += d;
    }
  }
  for (std::uint64_t m = 1; m <= k; ++m) {
    if (std::gcd(m, k) == 1) b.phi += 1;
  }
  std::uint64_t rest = k;
  b.spf = 1;
  for (std::uint64_t p = 2; p <= rest; ++p) {
    if (rest % p == 0) {
      if (b.spf == 1) b.spf = static_cast<std::uint32_t>(p);
      int count = 0;
      while (rest % p == 0) {
        rest /= p;
        ++count;
      }
      if (count > 1) {
        b.mu = 0;
        break;
      }
      b.mu = -b.mu;
    }
  }
  return b;
}

}  // namespace

TEST_CASE("sieve_tables small values") {
  DivisorTables t = sieve_tables(12);
  CHECK(t.n == 12);
  CHECK(t.sigma0[12] == 6);
  CHECK(t.sigma1[12] == 28);
  CHECK(t.phi[12] == 4);
  CHECK(t.mu[12] == 0);
  CHECK(t.mu[10] == 1);
  CHECK(t.mu[7] == -1);
  CHECK(t.spf[12] == 2);
  CHECK(t.spf[7] == 7);
  CHECK(t.spf[1] == 1);
  CHECK(t.sigma1[1] == 1);
  CHECK(t.phi[1] == 1);
  CHECK(t.mu[1] == 1);
}

TEST_CASE("sieve_tables n=1") {
  DivisorTables t = sieve_tables(1);
  CHECK(t.n == 1);
  CHECK(t.sigma0[1] == 1);
  CHECK(t.covers(1));
  CHECK_FALSE(t.covers(2));
  CHECK_FALSE(t.covers(0));
}

TEST_CASE("sieve_tables rejects n=0") {
  CHECK_THROWS_AS(sieve_tables(0), std::invalid_argument);
}

TEST_CASE("sieve matches trial division up to 2000") {
  DivisorTables t = sieve_tables(2000);
  for (std::uint64_t k = 1; k <= 2000; ++k) {
    BruteValues b = brute(k);
    REQUIRE(t.sigma0[k] == b.sigma0);
    REQUIRE(t.sigma1[k] == b.sigma1);
    REQUIRE(t.phi[k] == b.phi);
    REQUIRE(t.mu[k] == b.mu);
    REQUIRE(t.spf[k] == b.spf);
  }
}

TEST_CASE("sigma1 over k is at least 1, equality only at k=1") {
  DivisorTables t = sieve_tables(5000);
  CHECK(t.sigma1[1] == 1);
  for (std::uint64_t k = 2; k <= 5000; ++k) {
    REQUIRE(t.sigma1[k] > k);  // sigma1(k)/k > 1 for k >= 2
  }
}

TEST_CASE("mertens small values") {
  DivisorTables t = sieve_tables(200);
  CHECK(mertens(1, t) == 1);
  CHECK(mertens(2, t) == 0);
  CHECK(mertens(10, t) == -1);
  CHECK(mertens(200, t) == -8);
}

TEST_CASE("mertens beyond table throws") {
  DivisorTables t = sieve_tables(10);
  CHECK_THROWS_AS(mertens(11, t), std::invalid_argument);
  CHECK_THROWS_AS(mertens(0, t), std::invalid_argument);
}

TEST_CASE("pillai examples and identity") {
  DivisorTables t = sieve_tables(2000);
  CHECK(pillai(1, t) == 1);
  CHECK(pillai(4, t) == 8);
  CHECK(pillai(6, t) == 15);
  CHECK(pillai(12, t) == 40);

  // P(d) = sum_{k<=d} gcd(k, d), by direct summation.
  for (std::uint64_t d = 1; d <= 2000; ++d) {
    std::uint64_t direct = 0;
    for (std::uint64_t k = 1; k <= d; ++k) direct += std::gcd(k, d);
    REQUIRE(pillai(d, t) == direct);
  }
}

TEST_CASE("record_indices basics") {
  // 1-based storage: slot 0 is a dummy.
  std::vector<double> constant{0.0, 3.0, 3.0, 3.0, 3.0};
  CHECK(record_indices(constant) == std::vector<std::uint64_t>{1});

  std::vector<double> rising{0.0, 1.0, 2.0, 2.0, 5.0};
  CHECK(record_indices(rising) == std::vector<std::uint64_t>{1, 2, 4});

  std::vector<double> falling{0.0, 9.0, 1.0, 2.0};
  CHECK(record_indices(falling) == std::vector<std::uint64_t>{1});

  CHECK_THROWS_AS(record_indices(std::vector<double>{0.0}), std::invalid_argument);
}

TEST_CASE("divisor-record indices over 1..1000 match the known list") {
  DivisorTables t = sieve_tables(1000);
  const std::vector<std::uint64_t> expected{1,  2,   4,   6,   12,  24,  36, 48,
                                            60, 120, 180, 240, 360, 720, 840};

  std::vector<double> s0(1001, 0.0), ratio(1001, 0.0);
  for (std::size_t k = 1; k <= 1000; ++k) {
    s0[k] = static_cast<double>(t.sigma0[k]);
    ratio[k] = static_cast<double>(t.sigma1[k]) / static_cast<double>(k);
  }
  // Highly composite and superabundant indices coincide on this range.
  CHECK(record_indices(s0) == expected);
  CHECK(record_indices(ratio) == expected);
}

TEST_CASE("multiplicativity spot checks") {
  DivisorTables t = sieve_tables(10000);
  const std::pair<std::uint64_t, std::uint64_t> coprime_pairs[] = {
      {4, 9}, {8, 27}, {25, 49}, {16, 81}, {11, 13}, {97, 101}, {3, 32}};
  for (auto [a, b] : coprime_pairs) {
    REQUIRE(std::gcd(a, b) == 1);
    CHECK(t.sigma0[a * b] == t.sigma0[a] * t.sigma0[b]);
    CHECK(t.sigma1[a * b] == t.sigma1[a] * t.sigma1[b]);
    CHECK(t.phi[a * b] == t.phi[a] * t.phi[b]);
    CHECK(static_cast<int>(t.mu[a * b]) == static_cast<int>(t.mu[a]) * t.mu[b]);
  }
}
