#pragma once

#include <cstddef>
#include <vector>

#include "zetalab/config.hpp"
#include "zetalab/report.hpp"

namespace zetalab {

// Uniform grid T + T (j + 1/2) / n, j < n, inside [T, 2T].
std::vector<double> midpoint_grid(double T, std::size_t n);
// n sorted uniform draws from [T, 2T] (std::mt19937_64 seeded with seed).
std::vector<double> random_grid(double T, std::size_t n, unsigned long long seed);

// For each t and consecutive sigmas s < s' of sigma_grid:
//   log|xi(s + it)| <= log|xi(s' + it)|
//   log|zeta(s + it)| <= (s' - s)/2 log T + log|zeta(s' + it)|,  T = t/2,
// one row each, in log scale.
ScanReport lemma4_scan(const std::vector<double>& t_grid, const std::vector<double>& sigma_grid,
                       const Defaults& cfg = kDefaults);

struct Lemma5ScanParams {
  double r = 1.0;
  double sigma = 0.6;
  double T = 1000.0;
  double x = 0.0;  // 0: T^0.8
  double y = 0.0;  // 0: T^0.5
};

// Rows |zeta(s)^r - A(s)| against the smoothed envelope plus tol_OT at
// s = sigma + it.
ScanReport lemma5_scan(const Lemma5ScanParams& p, const std::vector<double>& t_grid,
                       const Defaults& cfg = kDefaults);

// |zeta(1/2+it)|^{2r} against
// T^{r(2 sigma - 1)} int |zeta(sigma+it+iv)|^{2r} w_{sigma-1/2}(v) dv + tol_OT.
ScanReport lemma9_scan(double r, double sigma, const std::vector<double>& t_grid, double T,
                       const Defaults& cfg = kDefaults);

struct Prop3Params {
  double r = 0.5;
  double delta = 0.1;
  double T = 1000.0;

  // Throws InvalidArgument naming the violated constraint.
  void validate() const;
  double x() const;       // T^{r/2 + 2 delta}
  double y() const;       // T^{r/2 + delta}
  double sigma0() const;  // 1/2 + (4/delta)/log T
};

// |zeta(1/2+it)|^{2r} against
// 3 e^{12r/delta} int |A(2 sigma0 - 1/2 + it + iv)|^2 w_{sigma0-1/2}(v) dv + tol_OT
// with A the smoothed d_r polynomial of length x.
ScanReport prop3_scan(const Prop3Params& p, const std::vector<double>& t_grid, const Defaults& cfg = kDefaults);

// One-row report: int_T^{2T} |zeta(1/2+it)|^4 (int |zeta(1/2+it+iv)|^r / (a^2+v^2) dv)^2 dt
// against (2 pi^2 / a^2) M_{2+r}(T) + c T^{1-eps}, a = sigma - 1/2.
ScanReport lemma6_check(double r, double sigma, double T, std::size_t samples = 0, const Defaults& cfg = kDefaults);

// M_k(T) / (T (log T)^{k^2}) for each T. Summary carries the spread
// max/min and whether it stays below cfg.trend_factor.
Table theorem1_trend(double k, const std::vector<double>& T_list, const Defaults& cfg = kDefaults);

// M_{2+r}(T) next to the twisted fourth moment with x = T^{r/2+2 delta},
// y = T^{r/2+delta}, one row per T.
Table cor2_comparison(double r, double delta, const std::vector<double>& T_list, std::size_t samples = 0);

// Moment right of the critical line against T sum d_k(n)^2 n^{-2 sigma}, one
// row per psi. Summary records whether |ratio - 1| decreases along psi_list.
Table thm2_offline(double k, double T, const std::vector<double>& psi_list, double delta,
                   std::size_t samples = 0);

}  // namespace zetalab
