#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/multiplicative.hpp"

using namespace zetalab;

TEST_CASE("prime power coefficients are binomials") {
  CHECK(prime_power_coefficient(2.0, 0) == 1.0);
  CHECK(prime_power_coefficient(2.0, 3) == doctest::Approx(4.0));
  CHECK(prime_power_coefficient(3.0, 2) == doctest::Approx(6.0));
  CHECK(prime_power_coefficient(0.5, 2) == doctest::Approx(0.375));
  const auto series = oracle::euler_factor_series(0.18, 20);
  for (unsigned a = 0; a <= 20; ++a) CHECK(prime_power_coefficient(0.18, a) == doctest::Approx(series[a]).epsilon(1e-13));
}

TEST_CASE("prime tables") {
  const auto spf = smallest_prime_factors(100);
  CHECK(spf[97] == 97);
  CHECK(spf[91] == 7);
  CHECK(spf[64] == 2);
  const auto primes = primes_up_to(100);
  CHECK(primes.size() == 25);
  CHECK(primes.back() == 97);
  CHECK(primes_up_to(1).empty());
}

TEST_CASE("sieve matches the Euler-factor oracle") {
  for (double r : {0.18, 0.5, 1.0, 2.0, 3.7}) {
    const auto table = sieve_divisor(r, 3000);
    const auto ref = oracle::divisor_by_euler_factors(r, 3000);
    for (std::size_t n = 1; n <= 3000; ++n) {
      CAPTURE(n);
      CHECK(std::abs(table[n] - ref[n]) <= 1e-12 * std::max(1.0, ref[n]));
    }
  }
}

TEST_CASE("sieve matches the von Mangoldt recursion") {
  const auto table = sieve_divisor(0.7, 500);
  const auto ref = oracle::divisor_by_von_mangoldt(0.7, 500);
  for (std::size_t n = 1; n <= 500; ++n) CHECK(table[n] == doctest::Approx(ref[n]).epsilon(1e-11));
}

TEST_CASE("d_2 is the divisor count and d_1 is one") {
  const auto d2 = sieve_divisor(2.0, 2000);
  const auto d1 = sieve_divisor(1.0, 2000);
  for (std::size_t n = 1; n <= 2000; ++n) {
    CHECK(d2[n] == static_cast<double>(oracle::divisor_count(n)));
    CHECK(d1[n] == 1.0);
  }
  CHECK(d2[12] == 6.0);
  CHECK(sieve_divisor(0.18, 4)[4] == doctest::Approx(0.1062).epsilon(1e-12));
}

TEST_CASE("multiplicativity on coprime pairs") {
  const std::size_t N = 1'000'000;
  const auto d = sieve_divisor(0.37, N);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> u(1, 1000);
  int checked = 0;
  while (checked < 10000) {
    const std::size_t m = u(rng), n = u(rng);
    if (std::gcd(m, n) != 1) continue;
    CHECK(d[m * n] == doctest::Approx(d[m] * d[n]).epsilon(1e-13));
    ++checked;
  }
}

TEST_CASE("sieve preconditions") {
  CHECK_THROWS_AS(sieve_divisor(0.0, 10), InvalidArgument);
  CHECK_THROWS_AS(sieve_divisor(1.0, 200'000'000), InvalidArgument);
}

TEST_CASE("smoothing window") {
  const SmoothingWindow w(100.0, 10.0);
  CHECK(w(1.0) == 1.0);
  CHECK(w(10.0) == 1.0);
  CHECK(w(100.0) == doctest::Approx(0.0));
  CHECK(w(101.0) == 0.0);
  CHECK(w(std::sqrt(1000.0)) == doctest::Approx(0.5));
  CHECK(window(w, 50.0) == doctest::Approx(std::log(2.0) / std::log(10.0)));
  for (double n = 1.0; n < 120.0; n += 0.5) CHECK(w(n + 0.5) <= w(n));
  CHECK_THROWS_AS(SmoothingWindow(10.0, 10.0), InvalidArgument);
  CHECK_THROWS_AS(SmoothingWindow(10.0, 0.5), InvalidArgument);
}

TEST_CASE("euler product bound and Mertens sum") {
  CHECK(euler_product_bound({0.0, 0.0, 1.0, 10}) == doctest::Approx(32.0).epsilon(1e-14));
  CHECK(euler_product_bound({0.3, 0.1, 0.0, 1000}) == doctest::Approx(1.0));
  const double x = 1e6;
  CHECK(std::abs(mertens_sum(0.0, 1'000'000) - std::log(std::log(x)) - 0.2614972128476428) < 1e-3);
  double direct = 0.0;
  for (auto p : primes_up_to(1000)) direct += std::pow(static_cast<double>(p), -1.25);
  CHECK(mertens_sum(0.25, 1000) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("series main term") {
  CHECK(series_main_term(0.0, 0.7) == 1.0);
  CHECK(series_main_term(1.0, 0.75) == doctest::Approx(2.61237534868548834).epsilon(1e-10));
  CHECK(series_main_term(2.0, 1.0) == doctest::Approx(5.0 * std::pow(std::numbers::pi, 4) / 72.0).epsilon(1e-10));
  // Direct Dirichlet sum; the tail beyond 1e6 is below 1e-11 at 2 sigma = 3.
  const std::size_t N = 1'000'000;
  const auto d = sieve_divisor(0.5, N);
  double direct = 0.0;
  for (std::size_t n = N; n >= 1; --n) direct += d[n] * d[n] / std::pow(static_cast<double>(n), 3.0);
  CHECK(series_main_term(0.5, 1.5) == doctest::Approx(direct).epsilon(1e-10));
  CHECK(series_main_term(2.18, 0.55) > series_main_term(2.18, 0.6));
}
