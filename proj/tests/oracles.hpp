#pragma once

// Reference implementations used only by the tests. Each one takes a route
// that shares no code with the library.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

// Coefficients of (1 - z)^{-r} up to z^n from the exponential series:
// B = exp(r sum_k z^k / k) gives j b_j = r sum_{k=1}^{j} b_{j-k}.
inline std::vector<double> euler_factor_series(double r, std::size_t n) {
  std::vector<double> b(n + 1, 0.0);
  b[0] = 1.0;
  for (std::size_t j = 1; j <= n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= j; ++k) acc += b[j - k];
    b[j] = r * acc / static_cast<double>(j);
  }
  return b;
}

// d_r(n) for n <= x_max by trial-division factorisation and the power series
// of the Euler factor.
inline std::vector<double> divisor_by_euler_factors(double r, std::size_t x_max) {
  const auto series = euler_factor_series(r, 64);
  std::vector<double> d(x_max + 1, 0.0);
  for (std::size_t n = 1; n <= x_max; ++n) {
    std::size_t m = n;
    double v = 1.0;
    for (std::size_t p = 2; p * p <= m; ++p) {
      std::size_t a = 0;
      while (m % p == 0) {
        m /= p;
        ++a;
      }
      v *= series[a];
    }
    if (m > 1) v *= series[1];
    d[n] = v;
  }
  return d;
}

// d_r(n) from d_r(n) log n = r sum_{d | n, d > 1} Lambda(d) d_r(n / d).
inline std::vector<double> divisor_by_von_mangoldt(double r, std::size_t x_max) {
  std::vector<double> lambda(x_max + 1, 0.0);
  for (std::size_t p = 2; p <= x_max; ++p) {
    bool prime = true;
    for (std::size_t q = 2; q * q <= p; ++q) {
      if (p % q == 0) {
        prime = false;
        break;
      }
    }
    if (!prime) continue;
    for (std::size_t q = p; q <= x_max; q *= p) lambda[q] = std::log(static_cast<double>(p));
  }
  std::vector<double> d(x_max + 1, 0.0);
  d[1] = 1.0;
  for (std::size_t n = 2; n <= x_max; ++n) {
    double acc = 0.0;
    for (std::size_t k = 2; k <= n; ++k) {
      if (n % k == 0 && lambda[k] != 0.0) acc += lambda[k] * d[n / k];
    }
    d[n] = r * acc / std::log(static_cast<double>(n));
  }
  return d;
}

inline std::size_t divisor_count(std::size_t n) {
  std::size_t c = 0;
  for (std::size_t k = 1; k * k <= n; ++k) {
    if (n % k == 0) c += (k * k == n) ? 1 : 2;
  }
  return c;
}

// int_T^{2T} |sum_{n <= N} n^{-sigma - it}|^2 dt in closed form.
inline double dirichlet_mean_square(double sigma, double T, std::size_t N) {
  double total = 0.0;
  for (std::size_t m = 1; m <= N; ++m) {
    for (std::size_t n = 1; n <= N; ++n) {
      const double w = std::pow(static_cast<double>(m) * static_cast<double>(n), -sigma);
      if (m == n) {
        total += w * T;
      } else {
        const double L = std::log(static_cast<double>(m) / static_cast<double>(n));
        total += w * (std::sin(2.0 * T * L) - std::sin(T * L)) / L;
      }
    }
  }
  return total;
}

// Dirichlet eta by Borwein's acceleration, turned into zeta. Accurate for
// moderate |t| only.
inline std::complex<double> zeta_borwein(std::complex<double> s, int n = 60) {
  std::vector<double> d(n + 1);
  double sum = 0.0;
  double term = 1.0 / n;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) term *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i - 1.0) * (2.0 * i));
    sum += term;
    d[i] = n * sum;
  }
  std::complex<double> eta = 0.0;
  for (int k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    eta += sign * (d[k] - d[n]) * std::exp(-s * std::log(k + 1.0));
  }
  eta /= -d[n];
  return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

}  // namespace oracle
