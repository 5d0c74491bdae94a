#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "zetalab/kernels.hpp"
#include "zetalab/multiplicative.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/special_fns.hpp"

namespace zetalab {

// A(s) = sum_{n <= x} d_r(n) W(n) n^{-s} restricted to the line Re s = sigma.
// The real coefficients c_n = scale * d_r(n) W(n) n^{-sigma} are fixed at
// construction; the spec is immutable afterwards.
class PolySpec {
 public:
  PolySpec(std::shared_ptr<const DivisorTable> table, SmoothingWindow win, double sigma, double scale = 1.0);

  const DivisorTable& table() const { return *table_; }
  const SmoothingWindow& window() const { return win_; }
  double sigma() const { return sigma_; }
  double r() const { return table_->r; }
  double scale() const { return scale_; }
  // Number of terms, floor(x).
  std::size_t length() const { return coeffs_.size(); }
  // c_n at index n - 1.
  const std::vector<double>& coefficients() const { return coeffs_; }

  // The same polynomial with every coefficient multiplied by lambda.
  PolySpec scaled(double lambda) const;
  // The same table and window on another vertical line.
  PolySpec shifted(double sigma) const;

  // A(sigma + i t).
  std::complex<double> at(double t) const;

 private:
  std::shared_ptr<const DivisorTable> table_;
  SmoothingWindow win_;
  double sigma_;
  double scale_;
  std::vector<double> coeffs_;
  std::vector<double> log_n_;
};

struct GridResult {
  std::vector<double> t_values;
  std::vector<ComplexValue> values;
};

// A at every grid point; chunks of the grid are evaluated in parallel and
// gathered in index order.
GridResult eval_poly(const PolySpec& spec, const std::vector<double>& t_grid);

// T * sum c_n^2: the diagonal part of the mean square over [T, 2T].
double mean_square_diagonal(const PolySpec& spec, double T);

// int_T^{2T} |A(sigma + it)|^2 dt by panel quadrature.
MomentEstimate mean_square_quadrature(const PolySpec& spec, double T, std::size_t samples,
                                      Scheme scheme = Scheme::gauss_panels);

// int |A(sigma + i(t + v))|^2 w_a(v) dv over the whole line, in closed form:
// sum_{m,n} c_m c_n cos(t log(n/m)) (min(m,n) / max(m,n))^a.
double smoothed_mean_square(const PolySpec& spec, double t, double a);

struct Lemma5Options {
  double T = 0.0;        // height of the window T <= t <= 2T
  double tol_ot = -1.0;  // O(1/T) allowance; negative means Defaults::tol_ot_factor / T
  double tau = -1.0;     // kernel tail mass; negative means Defaults::scan_tail_tol
  // Samples of |zeta(1/2 + iu)|^r covering [t - V, t + V]. Without one, the
  // envelope integral evaluates zeta directly through adaptive quadrature.
  const SampledLine* zeta_pow_line = nullptr;
};

struct Lemma5Result {
  double residual = 0.0;   // |zeta(s)^r - A(s)|
  double envelope = 0.0;   // y^{1/2-sigma}/log(x/y) (1/pi) int |zeta(1/2+it+iv)|^r / ((sigma-1/2)^2+v^2) dv
  double envelope_tail_mass = 0.0;
  double tol_ot = 0.0;
  double allowance = 0.0;  // numerical error of the residual
  bool holds = false;      // residual <= envelope + tol_ot + allowance
};

// Compares the smoothed polynomial with the branch-tracked power zeta(s)^r at
// s = sigma + it. The envelope integral is truncated to |v| <= V, which only
// shrinks the right-hand side.
Lemma5Result lemma5_residual(const PolySpec& spec, double t, double r, const Lemma5Options& opts);

}  // namespace zetalab
