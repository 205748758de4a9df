#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "redheffer/constants.hpp"
#include "redheffer/kahan.hpp"
#include "redheffer/zeta.hpp"

using namespace redheffer;

namespace {

GcdConstants table_to(std::size_t L) {
  DivisorTables t = sieve_tables(L);
  return build_gcd_constants(L, t);
}

}  // namespace

TEST_CASE("sum_cd_squared tiny cutoffs have closed forms") {
  GcdConstants c = table_to(16);
  // D=1: c_1^2 = zeta(2)^2. D=2 adds (c_2/2)^2 = ((5/4) zeta(2) / 2)^2.
  CHECK(sum_cd_squared(1, c) == doctest::Approx(kZeta2 * kZeta2).epsilon(1e-14));
  const double d2 = kZeta2 * kZeta2 + (1.25 * kZeta2) * (1.25 * kZeta2) / 4.0;
  CHECK(sum_cd_squared(2, c) == doctest::Approx(d2).epsilon(1e-14));
  CHECK(sum_cd_squared(2, c) == doctest::Approx(3.7627643672).epsilon(1e-9));
  CHECK(sum_cd_squared(16, c) > sum_cd_squared(2, c));  // positive terms
}

TEST_CASE("sum_cd_squared validates the table span") {
  GcdConstants c = table_to(10);
  CHECK_THROWS_AS(sum_cd_squared(11, c), std::invalid_argument);
  CHECK_THROWS_AS(sum_cd_squared(0, c), std::invalid_argument);
}

TEST_CASE("weighted double sum tiny cutoffs") {
  GcdConstants c = table_to(4);
  // D=1: c_1^2 * gcd(1,1) = zeta(2)^2.
  CHECK(double_gcd_sum_weighted(1, c) == doctest::Approx(kZeta2 * kZeta2).epsilon(1e-14));
  // D=2 by hand: zeta(2)^2 (1 + 2*(5/4)/4 + 2*(5/4)^2/16) = zeta(2)^2 * 233/128.
  CHECK(double_gcd_sum_weighted(2, c) ==
        doctest::Approx(kZeta2 * kZeta2 * 233.0 / 128.0).epsilon(1e-14));
  CHECK_THROWS_AS(double_gcd_sum_weighted(5, c), std::invalid_argument);
}

TEST_CASE("unweighted double sum tiny cutoffs") {
  // D=1: gcd(1,1)/1 = 1.
  CHECK(double_gcd_sum_unweighted(1) == doctest::Approx(1.0).epsilon(1e-15));
  // D=2: 1 + 2*(1/4) + 2/16 = 1.625.
  CHECK(double_gcd_sum_unweighted(2) == doctest::Approx(1.625).epsilon(1e-15));
}

TEST_CASE("triangle evaluation equals the full square") {
  // The kernel computes diagonal + 2x strict upper triangle; the full
  // D^2 loop must agree to near machine precision.
  const std::size_t D = 500;
  GcdConstants c = table_to(D);
  const double tri = double_gcd_sum_weighted(D, c);

  KahanAccumulator full;
  std::vector<double> w(D + 1, 0.0);
  for (std::size_t d = 1; d <= D; ++d) {
    w[d] = c.values[d] / (static_cast<double>(d) * static_cast<double>(d));
  }
  for (std::size_t d1 = 1; d1 <= D; ++d1) {
    for (std::size_t d2 = 1; d2 <= D; ++d2) {
      full.add(w[d1] * w[d2] * static_cast<double>(std::gcd(d1, d2)));
    }
  }
  CHECK(std::abs(tri - full.value()) <= 1e-12 * full.value());
}

TEST_CASE("weighted sum dominates unweighted termwise") {
  GcdConstants c = table_to(2000);
  for (std::size_t D : {1, 2, 10, 100, 500, 2000}) {
    REQUIRE(double_gcd_sum_weighted(D, c) >= double_gcd_sum_unweighted(D));
  }
}

TEST_CASE("double sums are thread-count independent") {
  GcdConstants c = table_to(2000);
  CHECK(double_gcd_sum_weighted(2000, c, 1) == double_gcd_sum_weighted(2000, c, 4));
  CHECK(double_gcd_sum_unweighted(2000, 1) == double_gcd_sum_unweighted(2000, 5));
}

TEST_CASE("extrapolate fits the assumed tail model exactly") {
  // S(N) = 7 - 3/N is recovered exactly from any two cutoffs.
  auto s = [](std::size_t n) { return 7.0 - 3.0 / static_cast<double>(n); };
  ExtrapolationEstimate e = extrapolate(s, 100, 900);
  CHECK(e.limit == doctest::Approx(7.0).epsilon(1e-13));
  CHECK(e.tail_coefficient == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(e.cutoff_lo == 100);
  CHECK(e.cutoff_hi == 900);
  CHECK(e.sum_lo == doctest::Approx(s(100)).epsilon(1e-15));
  CHECK(e.sum_hi == doctest::Approx(s(900)).epsilon(1e-15));

  // Constant sequence: zero tail.
  auto flat = [](std::size_t) { return 7.0; };
  ExtrapolationEstimate f = extrapolate(flat, 10, 20);
  CHECK(f.tail_coefficient == 0.0);
  CHECK(f.limit == 7.0);
}

TEST_CASE("extrapolate honors the tail exponent") {
  // S(N) = 2 - 5/N^2 needs exponent 2; exponent 1 misfits it.
  auto s = [](std::size_t n) {
    return 2.0 - 5.0 / (static_cast<double>(n) * static_cast<double>(n));
  };
  ExtrapolationEstimate good = extrapolate(s, 50, 100, 2.0);
  CHECK(good.limit == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(good.tail_coefficient == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(good.tail_exponent == 2.0);
  ExtrapolationEstimate bad = extrapolate(s, 50, 100, 1.0);
  CHECK(std::abs(bad.limit - 2.0) > 1e-6);
}

TEST_CASE("extrapolate rejects bad cutoff orders") {
  auto s = [](std::size_t n) { return static_cast<double>(n); };
  CHECK_THROWS_AS(extrapolate(s, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(extrapolate(s, 20, 10), std::invalid_argument);
  CHECK_THROWS_AS(extrapolate(s, 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(extrapolate(s, 10, 20, 0.0), std::invalid_argument);
}

TEST_CASE("unweighted extrapolation approaches 5 zeta(3)/2") {
  const double target = 2.5 * kZeta3;
  ExtrapolationEstimate at_2000 =
      extrapolate([](std::size_t d) { return double_gcd_sum_unweighted(d); }, 1000, 2000);
  CHECK(at_2000.sum_hi == doctest::Approx(3.002893539833469).epsilon(1e-12));
  CHECK(std::abs(at_2000.limit - target) < 1e-2);

  // Self-consistency: the (500,1000) and (1000,2000) fits agree within the
  // smaller fitted tail term.
  ExtrapolationEstimate at_1000 =
      extrapolate([](std::size_t d) { return double_gcd_sum_unweighted(d); }, 500, 1000);
  CHECK(std::abs(at_1000.limit - at_2000.limit) <=
        at_2000.tail_coefficient / 2000.0);
}

TEST_CASE("compute_alpha wiring and the exact-alignment case") {
  // If S1^2 = (5/2) zeta(3) S2 the cosine is exactly 1; build such a pair.
  ExtrapolationEstimate s1, s2;
  s1.limit = 2.0;
  s2.limit = 2.0 * 2.0 / (2.5 * kZeta3);
  AlphaReport rep = compute_alpha(s1, s2);
  CHECK(rep.alpha == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.prefactor == doctest::Approx(0.5768560904006155).epsilon(1e-14));
  CHECK(rep.s1 == 2.0);
  CHECK(rep.s2 == doctest::Approx(s2.limit).epsilon(1e-15));

  ExtrapolationEstimate bad;
  bad.limit = 0.0;
  CHECK_THROWS_AS(compute_alpha(s1, bad), std::invalid_argument);
}

TEST_CASE("alpha from modest cutoffs already matches three digits") {
  // Small-scale end-to-end: table to 2e4, S1 at (1e4, 2e4), S2 at (1e3, 2e3).
  GcdConstants c = table_to(20000);
  ExtrapolationEstimate s1 =
      extrapolate([&](std::size_t d) { return sum_cd_squared(d, c); }, 10000, 20000);
  ExtrapolationEstimate s2 = extrapolate(
      [&](std::size_t d) { return double_gcd_sum_weighted(d, c); }, 1000, 2000);
  AlphaReport rep = compute_alpha(s1, s2);
  CHECK(std::abs(rep.alpha - 0.997992) < 1e-2);
  CHECK(rep.alpha <= 1.0 + 1e-10);
  CHECK(rep.alpha > 0.99);
}
