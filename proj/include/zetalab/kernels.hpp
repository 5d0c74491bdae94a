#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "zetalab/report.hpp"

namespace zetalab {

// w_a(v) = (1/pi) a / (a^2 + v^2) truncated to |v| <= tail_cut.
struct CauchyKernel {
  double a = 1.0;
  double tail_cut = 0.0;
  std::size_t panels = 16;

  // Chooses tail_cut = a tan(pi/2 (1 - tau)) so the dropped mass is exactly tau.
  static CauchyKernel with_tail(double a, double tau, std::size_t panels = 16);

  // 1 - (2/pi) arctan(tail_cut / a).
  double tail_mass() const;
};

double kernel_weight(const CauchyKernel& k, double v);
double cauchy_weight(double a, double v);

// Result of a truncated kernel integral: the finite part over [-V, V] and the
// dropped kernel mass times the largest |f| seen.
struct SmoothedIntegral {
  double value = 0.0;
  double tail_mass = 0.0;
  double tail_allowance = 0.0;
  std::size_t evals = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_depth = 40;
  std::size_t max_evals = 20'000'000;
};

// Integral of f(center + v) w_a(v) over |v| <= tail_cut. The substitution
// v = a tan(theta) turns the kernel into the flat density 1/pi, so the peak at
// v = 0 needs no special panels; Gauss-Legendre panels in theta are bisected
// adaptively where f varies. Throws QuadratureBudgetExceeded when the depth or
// evaluation budget runs out.
SmoothedIntegral smoothed_integral(const CauchyKernel& k, const std::function<double(double)>& f,
                                   double center = 0.0, const QuadratureOptions& opts = {});

// Samples of a real function on the uniform grid u0 + i*step. Built once
// (typically in parallel), then read-only and safe to share across threads.
class SampledLine {
 public:
  SampledLine(double u0, double step, std::vector<double> values);

  // Fills values by calling sample(i) for every grid index in parallel.
  static SampledLine build(double u0, double u1, double step,
                           const std::function<double(double)>& sample);

  double u0() const { return u0_; }
  double step() const { return step_; }
  double u_end() const { return u0_ + step_ * static_cast<double>(values_.size() - 1); }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  double max_abs() const { return max_abs_; }
  // max |f[i+1] - 2 f[i] + f[i-1]| / 8: the usual h^2 |f''| / 8 estimate of
  // the linear-interpolation error.
  double interpolation_bound() const { return interp_bound_; }
  // Piecewise-linear interpolant.
  double interpolate(double u) const;
  // Same grid with g applied to every sample.
  SampledLine transformed(const std::function<double(double)>& g) const;

 private:
  double u0_;
  double step_;
  std::vector<double> values_;
  double max_abs_ = 0.0;
  double interp_bound_ = 0.0;
};

// Integral of F(center + v) w_a(v) over |v| <= tail_cut where F is the
// piecewise-linear interpolant of the samples; the kernel is integrated
// exactly on each cell. The line must cover [center - V, center + V].
SmoothedIntegral smoothed_integral(const CauchyKernel& k, const SampledLine& line, double center);

// |zeta(sigma + i u)| on the grid u0, u0 + step, ... covering [u0, u1].
// Evaluated in fixed-size lattice blocks so the samples do not depend on the
// worker count.
SampledLine zeta_abs_line(double sigma, double u0, double u1, double step, double target_err = 1e-10);

// Numerical convolution (w_a * w_a)(v) through smoothed_integral.
double kernel_self_convolution(double a, double v, double tau = 1e-9);

struct Lemma10Result {
  ScanReport premise;  // f(x) <= C g(x) + (1/4) int f(x+u) w_a(u) du per grid point
  double lhs = 0.0;    // int f(x0+v)^2 w_a(v) dv, plus its tail allowance
  double rhs = 0.0;    // 3 C^2 int g(x0+v)^2 w_a(v) dv
  double allowance = 0.0;
  bool holds = false;
};

// Checks the self-improvement inequality for non-negative f, g: the premise
// is verified at every grid point (HypothesisViolated if it fails beyond the
// quadrature allowance), then both sides of the conclusion are evaluated at
// x0. An empty grid uses 64 points spread uniformly in kernel mass around x0.
Lemma10Result lemma10_check(const std::function<double(double)>& f, const std::function<double(double)>& g,
                            double c, double a, std::vector<double> grid = {}, double x0 = 0.0,
                            double tau = 1e-6);

}  // namespace zetalab
