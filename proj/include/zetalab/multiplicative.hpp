#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace zetalab {

// d_r(n) for 1 <= n <= x_max at a fixed real r > 0, i.e. the Dirichlet
// coefficients of zeta(s)^r. values[0] is unused and zero.
struct DivisorTable {
  double r = 1.0;
  std::size_t x_max = 0;
  std::vector<double> values;

  double operator[](std::size_t n) const { return values[n]; }
};

// d_r(p^a) = binom(r + a - 1, a) for every prime p, via the recurrence
// d_r(p^a) = d_r(p^{a-1}) (r + a - 1) / a.
double prime_power_coefficient(double r, unsigned a);

// Smallest-prime-factor table for 0..x (entries 0 and 1 are 0).
std::vector<std::uint32_t> smallest_prime_factors(std::size_t x);

std::vector<std::uint32_t> primes_up_to(std::size_t x);

// Sieves d_r(n) multiplicatively from its prime-power values. x_max is capped
// by Defaults::x_max_cap.
DivisorTable sieve_divisor(double r, std::size_t x_max);

// The continuous log-ramp weight: 1 for n <= y, log(x/n)/log(x/y) on (y, x],
// and 0 beyond x. Requires 1 <= y < x; the y <= x/2 range of the residual
// estimate is checked where that estimate is used.
class SmoothingWindow {
 public:
  SmoothingWindow(double x, double y);

  double x() const { return x_; }
  double y() const { return y_; }
  double operator()(double n) const;

 private:
  double x_;
  double y_;
  double log_ratio_;
};

inline double window(const SmoothingWindow& w, double n) { return w(n); }

// Shifts and length for the truncated Euler product bounding the twisted
// fourth moment sum.
struct TwistedMomentParams {
  double alpha = 0.0;
  double beta = 0.0;
  double r = 0.0;
  std::size_t x_max = 2;
};

// prod_{p <= x_max} (1 + 2r p^{-1-alpha} + 2r p^{-1-beta} + r^2/p). The
// O(1/p^2) remainder of each local factor is not modelled.
double euler_product_bound(const TwistedMomentParams& p);

// sum_{p <= x_max} p^{-1-alpha}.
double mertens_sum(double alpha, std::size_t x_max);

// sum_{n >= 1} d_k(n)^2 / n^{2 sigma} as an Euler product. The slowly
// converging part is factored out as a product of zeta(j * 2 sigma) powers,
// j <= 6; the remaining product over primes has local factors
// 1 + O(p^{-14 sigma}) and is extended until the estimated tail of its log is
// below rel_err. Throws NonConvergence when that needs primes beyond
// prime_budget.
double series_main_term(double k, double sigma, double rel_err = 1e-10,
                        std::size_t prime_budget = 100'000'000);

}  // namespace zetalab
