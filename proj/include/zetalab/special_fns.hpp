#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace zetalab {

// A complex value with an absolute-error estimate. abs_err is an estimate
// (truncation bound plus a rounding model), not a rigorous enclosure.
struct ComplexValue {
  double re = 0.0;
  double im = 0.0;
  double abs_err = 0.0;

  std::complex<double> value() const { return {re, im}; }
  double abs() const { return std::hypot(re, im); }
  ComplexValue conj() const { return {re, -im, abs_err}; }
};

struct EvalPoint {
  double sigma = 0.5;
  double t = 0.0;
};

// Lowest real part accepted by zeta and the branch-tracked power.
inline constexpr double kStripMin = 0.4;

// zeta(sigma + i t) by Euler-Maclaurin summation with eight Bernoulli
// corrections. The truncation point is the smallest N >= 20 for which the
// first omitted correction (times the usual |s+2m+1|/(sigma+2m+1) factor)
// is below target_err. Negative t is mapped through conjugate symmetry.
// Throws NonConvergence when N would exceed the summation budget.
ComplexValue zeta(EvalPoint p, double target_err = 1e-12);

// zeta at t0, t0 + step, ..., t0 + (count-1) step on a fixed vertical line.
// Each n^{-s} is advanced by multiplying with n^{-i step}, with a direct
// re-seed every few dozen steps, so a node costs a complex multiply per term
// instead of a sincos.
std::vector<ComplexValue> zeta_lattice(double sigma, double t0, double step,
                                       std::size_t count, double target_err = 1e-12);

// Euler-Maclaurin truncation point used for the given point and target.
std::size_t zeta_terms(EvalPoint p, double target_err);

// log Gamma(z) for Re z > 0 (some branch; the real part is exact).
std::complex<double> log_gamma(std::complex<double> z);

// log of xi(s) = s (s-1) pi^{-s/2} Gamma(s/2) zeta(s), with a relative error
// estimate. Real part is log|xi|; the imaginary part is the phase modulo 2 pi.
// Points left of the strip use xi(s) = xi(1-s); s = 0 and s = 1 give the
// limit value 1.
struct LogValue {
  std::complex<double> log;
  double rel_err = 0.0;
};
LogValue log_xi(EvalPoint p, double target_err = 1e-12);

// exp(log_xi). Underflows to zero once |xi| < 1e-308 (t beyond ~900); use
// log_xi for magnitude comparisons at larger heights.
ComplexValue xi(EvalPoint p, double target_err = 1e-12);

// log zeta(s) continued along the horizontal segment from 3 + it (principal
// branch) to sigma + it. Steps start at 0.05 and halve until consecutive
// arguments differ by less than pi/2; below a 1e-7 step the tracker gives
// up with BranchTrackingFailure.
struct ContinuedLog {
  std::complex<double> log;
  double abs_err = 0.0;  // absolute error of the log
  std::size_t steps = 0;
};
ContinuedLog log_zeta_continued(EvalPoint p, double target_err = 1e-12,
                                double initial_step = 0.05);

// zeta(s)^r on the branch implied by the Dirichlet series of zeta^r.
ComplexValue zeta_pow(EvalPoint p, double r, double target_err = 1e-12);

}  // namespace zetalab
