#include "zetalab/multiplicative.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetalab/config.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/special_fns.hpp"

namespace zetalab {
namespace {

// Yields the primes in increasing order using a segmented sieve.
class PrimeStream {
 public:
  explicit PrimeStream(std::size_t limit) : limit_(limit) {}

  // Returns 0 once the limit is passed.
  std::uint64_t next() {
    while (pos_ >= segment_.size()) {
      if (low_ > limit_) return 0;
      fill_segment();
    }
    return segment_[pos_++];
  }

 private:
  void fill_segment() {
    const std::uint64_t high = std::min<std::uint64_t>(low_ + kSegment, limit_ + 1);
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(high))) + 1;
    if (base_.empty() || base_.back() < root) base_ = primes_up_to(root);
    std::vector<char> composite(high - low_, 0);
    for (std::uint64_t p : base_) {
      if (p * p >= high) break;
      std::uint64_t start = std::max(p * p, (low_ + p - 1) / p * p);
      for (std::uint64_t m = start; m < high; m += p) composite[m - low_] = 1;
    }
    segment_.clear();
    pos_ = 0;
    for (std::uint64_t n = std::max<std::uint64_t>(low_, 2); n < high; ++n) {
      if (!composite[n - low_]) segment_.push_back(n);
    }
    low_ = high;
  }

  static constexpr std::uint64_t kSegment = 1 << 18;
  std::uint64_t limit_;
  std::uint64_t low_ = 0;
  std::vector<std::uint32_t> base_;
  std::vector<std::uint64_t> segment_;
  std::size_t pos_ = 0;
};

}  // namespace

double prime_power_coefficient(double r, unsigned a) {
  double d = 1.0;
  for (unsigned j = 1; j <= a; ++j) d *= (r + j - 1.0) / j;
  return d;
}

std::vector<std::uint32_t> smallest_prime_factors(std::size_t x) {
  std::vector<std::uint32_t> spf(x + 1, 0);
  for (std::size_t i = 2; i <= x; ++i) {
    if (spf[i] != 0) continue;
    spf[i] = static_cast<std::uint32_t>(i);
    if (i * i > x) continue;
    for (std::size_t j = i * i; j <= x; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

std::vector<std::uint32_t> primes_up_to(std::size_t x) {
  std::vector<std::uint32_t> primes;
  if (x < 2) return primes;
  std::vector<bool> composite(x + 1, false);
  for (std::size_t i = 2; i <= x; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::size_t j = i * i; j <= x; j += i) composite[j] = true;
  }
  return primes;
}

DivisorTable sieve_divisor(double r, std::size_t x_max) {
  require(r > 0.0, "r > 0");
  require(x_max >= 1, "x_max >= 1");
  require(x_max <= kDefaults.x_max_cap, "x_max <= " + std::to_string(kDefaults.x_max_cap));

  // d_r(p^a) does not depend on p.
  std::vector<double> prime_power(64);
  prime_power[0] = 1.0;
  for (unsigned a = 1; a < prime_power.size(); ++a) prime_power[a] = prime_power[a - 1] * (r + a - 1.0) / a;

  const std::vector<std::uint32_t> spf = smallest_prime_factors(x_max);
  DivisorTable table{r, x_max, std::vector<double>(x_max + 1, 0.0)};
  table.values[1] = 1.0;
  for (std::size_t n = 2; n <= x_max; ++n) {
    const std::size_t p = spf[n];
    std::size_t rest = n;
    unsigned a = 0;
    while (rest % p == 0) {
      rest /= p;
      ++a;
    }
    table.values[n] = table.values[rest] * prime_power[a];
  }
  return table;
}

SmoothingWindow::SmoothingWindow(double x, double y) : x_(x), y_(y) {
  require(std::isfinite(x) && std::isfinite(y), "finite window parameters");
  require(y >= 1.0, "window y >= 1");
  require(x > y, "window x > y");
  log_ratio_ = std::log(x / y);
}

double SmoothingWindow::operator()(double n) const {
  if (n <= y_) return 1.0;
  if (n > x_) return 0.0;
  return std::log(x_ / n) / log_ratio_;
}

double euler_product_bound(const TwistedMomentParams& p) {
  require(p.x_max >= 2, "x_max >= 2");
  require(p.r >= 0.0, "r >= 0");
  double product = 1.0;
  for (std::uint32_t q : primes_up_to(p.x_max)) {
    const double pq = q;
    product *= 1.0 + 2.0 * p.r * std::pow(pq, -1.0 - p.alpha) + 2.0 * p.r * std::pow(pq, -1.0 - p.beta) +
               p.r * p.r / pq;
  }
  return product;
}

double mertens_sum(double alpha, std::size_t x_max) {
  require(x_max >= 2, "x_max >= 2");
  require(alpha >= 0.0, "alpha >= 0");
  double sum = 0.0;
  for (std::uint32_t q : primes_up_to(x_max)) {
    sum += alpha == 0.0 ? 1.0 / q : std::pow(static_cast<double>(q), -1.0 - alpha);
  }
  return sum;
}

double series_main_term(double k, double sigma, double rel_err, std::size_t prime_budget) {
  require(k >= 0.0, "k >= 0");
  require(sigma > 0.5, "sigma > 1/2");
  require(rel_err > 0.0, "rel_err > 0");
  if (k == 0.0) return 1.0;

  // Every local factor is the same power series L(z) = sum_a d_k(p^a)^2 z^a
  // in z = p^{-s}. Write log L(z) = sum_n b_n z^n and pick exponents e_j with
  // sum_j e_j (-log(1 - z^j)) matching it through z^J; then
  //   F(s) = prod_j zeta(j s)^{e_j} * prod_p R_p,  log R_p = O(p^{-(J+1) s}).
  constexpr int kOrder = 6;
  const double s = 2.0 * sigma;
  std::vector<double> l(kOrder + 1), b(kOrder + 1, 0.0), e(kOrder + 1, 0.0);
  for (int a = 0; a <= kOrder; ++a) {
    const double d = prime_power_coefficient(k, static_cast<unsigned>(a));
    l[a] = d * d;
  }
  for (int n = 1; n <= kOrder; ++n) {
    double acc = n * l[n];
    for (int m = 1; m < n; ++m) acc -= m * b[m] * l[n - m];
    b[n] = acc / n;
  }
  for (int n = 1; n <= kOrder; ++n) {
    double acc = b[n];
    for (int j = 1; j < n; ++j) {
      if (n % j == 0) acc -= e[j] * j / n;
    }
    e[n] = acc;
  }
  double log_zeta_part = 0.0;
  for (int j = 1; j <= kOrder; ++j) {
    if (e[j] == 0.0) continue;
    log_zeta_part += e[j] * std::log(zeta({j * s, 0.0}, std::max(1e-15, rel_err * 1e-3)).re);
  }

  PrimeStream primes(prime_budget);
  std::vector<double> logs;
  double recent_max = 0.0;
  const double tail_exponent = (kOrder + 1) * s - 1.0;
  for (std::uint64_t p = primes.next();; p = primes.next()) {
    if (p == 0) {
      throw NonConvergence("series_main_term: sigma = " + std::to_string(sigma) +
                           " too close to 1/2 for prime budget " + std::to_string(prime_budget));
    }
    const double pd = static_cast<double>(p);
    const double z = std::pow(pd, -s);
    // sum_{a >= 1} d_k(p^a)^2 z^a with a geometric tail bound.
    double coeff = 1.0;
    double z_pow = 1.0;
    double higher = 0.0;
    for (unsigned a = 1;; ++a) {
      coeff *= (k + a - 1.0) / a;
      z_pow *= z;
      const double term = coeff * coeff * z_pow;
      higher += term;
      const double next_ratio = std::pow((k + a) / (a + 1.0), 2.0) * z;
      const double ratio_bound = k >= 1.0 ? next_ratio : z;
      if (ratio_bound < 1.0 && term * ratio_bound / (1.0 - ratio_bound) <= rel_err * 1e-3 * (1.0 + higher)) break;
      if (a > 10000) throw NonConvergence("series_main_term: local factor did not converge");
    }
    double log_local = std::log1p(higher);
    double zj = 1.0;
    for (int j = 1; j <= kOrder; ++j) {
      zj *= z;
      log_local += e[j] * std::log1p(-zj);
    }
    logs.push_back(log_local);

    recent_max = std::max(recent_max, std::abs(log_local));
    if (logs.size() % 16 == 0) {
      if (p >= 50) {
        // sum_{q > p} C q^{-(J+1) s} with C taken from the recent factors.
        const double tail = recent_max * pd / (tail_exponent * std::log(pd));
        if (tail < rel_err) break;
      }
      recent_max = 0.0;
    }
  }
  return std::exp(log_zeta_part + pairwise_sum(logs));
}

}  // namespace zetalab
