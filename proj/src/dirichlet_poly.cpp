#include "zetalab/dirichlet_poly.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "zetalab/config.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/parallel.hpp"

namespace zetalab {

PolySpec::PolySpec(std::shared_ptr<const DivisorTable> table, SmoothingWindow win, double sigma, double scale)
    : table_(std::move(table)), win_(win), sigma_(sigma), scale_(scale) {
  require(table_ != nullptr, "divisor table present");
  require(win_.x() <= static_cast<double>(table_->x_max), "window x <= table x_max");
  require(sigma >= 0.5, "polynomial sigma >= 1/2");
  const auto len = static_cast<std::size_t>(std::floor(win_.x()));
  coeffs_.resize(len);
  log_n_.resize(len);
  for (std::size_t n = 1; n <= len; ++n) {
    const double nd = static_cast<double>(n);
    log_n_[n - 1] = std::log(nd);
    coeffs_[n - 1] = scale_ * table_->values[n] * win_(nd) * std::exp(-sigma_ * log_n_[n - 1]);
  }
}

PolySpec PolySpec::scaled(double lambda) const { return PolySpec(table_, win_, sigma_, scale_ * lambda); }

PolySpec PolySpec::shifted(double sigma) const { return PolySpec(table_, win_, sigma, scale_); }

std::complex<double> PolySpec::at(double t) const {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double phase = t * log_n_[i];
    re += coeffs_[i] * std::cos(phase);
    im -= coeffs_[i] * std::sin(phase);
  }
  return {re, im};
}

GridResult eval_poly(const PolySpec& spec, const std::vector<double>& t_grid) {
  require(!t_grid.empty(), "non-empty t grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i) require(t_grid[i] > t_grid[i - 1], "t grid strictly increasing");
  double l1 = 0.0;
  for (double c : spec.coefficients()) l1 += std::abs(c);
  const double log_len = std::log(std::max<double>(1.0, static_cast<double>(spec.length())));

  GridResult out{t_grid, std::vector<ComplexValue>(t_grid.size())};
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (t_grid.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(t_grid.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const auto v = spec.at(t_grid[i]);
      const double err = 4.0 * std::numeric_limits<double>::epsilon() * l1 * (1.0 + std::abs(t_grid[i]) * log_len);
      out.values[i] = {v.real(), v.imag(), err};
    }
  });
  return out;
}

double mean_square_diagonal(const PolySpec& spec, double T) {
  require(T > 0.0, "T > 0");
  std::vector<double> sq;
  sq.reserve(spec.length());
  for (double c : spec.coefficients()) sq.push_back(c * c);
  return T * pairwise_sum(sq);
}

MomentEstimate mean_square_quadrature(const PolySpec& spec, double T, std::size_t samples, Scheme scheme) {
  require(T > 0.0, "T > 0");
  require(samples >= 2, "samples >= 2");
  return richardson_integral(scheme, T, 2.0 * T, samples, [&](const NodeSet& nodes) {
    const GridResult g = eval_poly(spec, nodes.x);
    std::vector<double> f(g.values.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::norm(g.values[i].value());
    return f;
  });
}

double smoothed_mean_square(const PolySpec& spec, double t, double a) {
  require(a > 0.0, "kernel width a > 0");
  const auto& c = spec.coefficients();
  std::vector<double> rows(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double log_m = std::log(static_cast<double>(i + 1));
    double acc = 0.0;
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const double d = std::log(static_cast<double>(j + 1)) - log_m;
      acc += c[j] * std::cos(t * d) * std::exp(-a * d);
    }
    rows[i] = c[i] * (c[i] + 2.0 * acc);
  }
  return pairwise_sum(rows);
}

Lemma5Result lemma5_residual(const PolySpec& spec, double t, double r, const Lemma5Options& opts) {
  const double sigma = spec.sigma();
  require(sigma > 0.5 && sigma <= 1.0, "1/2 < sigma <= 1");
  require(r == spec.r(), "r matches the divisor table");
  require(opts.T > 0.0, "T > 0");
  require(spec.window().y() <= spec.window().x() / 2.0, "1 <= y <= x/2");
  require(spec.scale() == 1.0, "unscaled polynomial");

  Lemma5Result res;
  res.tol_ot = opts.tol_ot >= 0.0 ? opts.tol_ot : kDefaults.tol_ot_factor / opts.T;
  const double tau = opts.tau > 0.0 ? opts.tau : kDefaults.scan_tail_tol;

  const ComplexValue power = zeta_pow({sigma, t}, r, kDefaults.zeta_target_err);
  const std::complex<double> poly = spec.at(t);
  res.residual = std::abs(power.value() - poly);

  const double a = sigma - 0.5;
  const CauchyKernel kernel = CauchyKernel::with_tail(a, tau);
  SmoothedIntegral smoothed;
  if (opts.zeta_pow_line != nullptr) {
    smoothed = smoothed_integral(kernel, *opts.zeta_pow_line, t);
  } else {
    smoothed = smoothed_integral(
        kernel, [r](double u) { return std::pow(zeta({0.5, u}, kDefaults.zeta_target_err).abs(), r); }, t,
        QuadratureOptions{1e-8, 1e-7, 40, 20'000'000});
  }
  // (1/pi) / (a^2 + v^2) = w_a(v) / a.
  const double x = spec.window().x(), y = spec.window().y();
  // Sampled integrals are lowered by the interpolation error estimate.
  const double interp = opts.zeta_pow_line != nullptr ? opts.zeta_pow_line->interpolation_bound() : 0.0;
  res.envelope = std::pow(y, 0.5 - sigma) / std::log(x / y) * std::max(0.0, smoothed.value - interp) / a;
  res.envelope_tail_mass = smoothed.tail_mass;
  res.allowance = power.abs_err + 1e-12 * (1.0 + res.residual);
  res.holds = res.residual <= res.envelope + res.tol_ot + res.allowance;
  return res;
}

}  // namespace zetalab
