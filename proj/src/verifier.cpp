#include "zetalab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "zetalab/dirichlet_poly.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/kernels.hpp"
#include "zetalab/moments.hpp"
#include "zetalab/multiplicative.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/special_fns.hpp"

namespace zetalab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_in_window(const std::vector<double>& t_grid, double T) {
  require(!t_grid.empty(), "non-empty t grid");
  for (double t : t_grid) require(t >= T && t <= 2.0 * T, "T <= t <= 2T");
}

std::pair<double, double> grid_range(const std::vector<double>& t_grid) {
  const auto [lo, hi] = std::minmax_element(t_grid.begin(), t_grid.end());
  return {*lo, *hi};
}

// |zeta(sigma + iu)|^p sampled on a grid covering [lo - V, hi + V].
SampledLine zeta_power_line(double sigma, double p, double lo, double hi, double V, const Defaults& cfg) {
  const double h = cfg.sample_step;
  const SampledLine line = zeta_abs_line(sigma, lo - V - h, hi + V + h, h, cfg.zeta_target_err);
  return line.transformed([p](double v) { return std::pow(v, p); });
}

double abs_pow_err(const ComplexValue& z, double p) {
  const double m = z.abs();
  if (m == 0.0) return std::pow(z.abs_err, p);
  return std::abs(p) * std::pow(m, p - 1.0) * z.abs_err;
}

}  // namespace

std::vector<double> midpoint_grid(double T, std::size_t n) {
  require(n >= 1, "at least one sample");
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = T + T * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
  return g;
}

std::vector<double> random_grid(double T, std::size_t n, unsigned long long seed) {
  require(n >= 1, "at least one sample");
  std::mt19937_64 rng(seed);
  std::vector<double> g(n);
  // 53-bit uniform draws in [0, 1).
  for (auto& t : g) t = T + T * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  std::sort(g.begin(), g.end());
  return g;
}

ScanReport lemma4_scan(const std::vector<double>& t_grid, const std::vector<double>& sigma_grid, const Defaults& cfg) {
  require(!t_grid.empty(), "non-empty t grid");
  require(sigma_grid.size() >= 2, "at least two sigmas");
  require(sigma_grid.front() >= 0.5, "sigma >= 1/2");
  for (std::size_t j = 1; j < sigma_grid.size(); ++j) {
    require(sigma_grid[j] >= sigma_grid[j - 1], "sigma grid increasing");
  }
  for (double t : t_grid) require(t > 2.0, "t > 2");

  const std::size_t ns = sigma_grid.size();
  struct Point {
    LogValue xi;
    ComplexValue zeta;
  };
  std::vector<std::vector<Point>> pts(t_grid.size(), std::vector<Point>(ns));
  parallel_for(t_grid.size() * ns, [&](std::size_t idx) {
    const double t = t_grid[idx / ns], s = sigma_grid[idx % ns];
    auto& pt = pts[idx / ns][idx % ns];
    pt.xi = log_xi({s, t}, cfg.zeta_target_err);
    pt.zeta = zeta({s, t}, cfg.zeta_target_err);
  });

  ScanReport rep;
  rep.kind = "lemma4";
  rep.params = {{"n_t", static_cast<double>(t_grid.size())},
                {"sigma_min", sigma_grid.front()},
                {"sigma_max", sigma_grid.back()},
                {"n_sigma", static_cast<double>(ns)},
                {"log_scale", 1.0}};
  auto log_abs = [](const ComplexValue& z) {
    const double m = z.abs();
    return m == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(m);
  };
  auto rel = [](const ComplexValue& z) {
    const double m = z.abs();
    return m == 0.0 ? 0.0 : z.abs_err / m;
  };
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const double log_T = std::log(t / 2.0);
    for (std::size_t j = 0; j + 1 < ns; ++j) {
      const Point& p = pts[i][j];
      const Point& q = pts[i][j + 1];
      const double lx = p.xi.log.real(), rx = q.xi.log.real();
      rep.add(t, lx, rx, p.xi.rel_err + q.xi.rel_err + 1e-12 * (1.0 + std::abs(lx)));

      const double lz = log_abs(p.zeta);
      const double rz = 0.5 * (sigma_grid[j + 1] - sigma_grid[j]) * log_T + log_abs(q.zeta);
      rep.add(t, lz, rz, rel(p.zeta) + rel(q.zeta) + 1e-12);
    }
  }
  rep.finalize();
  return rep;
}

ScanReport lemma5_scan(const Lemma5ScanParams& p, const std::vector<double>& t_grid, const Defaults& cfg) {
  require(p.r > 0.0, "r > 0");
  require(p.sigma > 0.5 && p.sigma <= 1.0, "1/2 < sigma <= 1");
  require(p.T > 1.0, "T > 1");
  require_in_window(t_grid, p.T);
  const double x = p.x > 0.0 ? p.x : std::pow(p.T, 0.8);
  const double y = p.y > 0.0 ? p.y : std::pow(p.T, 0.5);
  require(y >= 1.0 && y <= x / 2.0, "1 <= y <= x/2");
  require(x < p.T, "x < T");

  auto table = std::make_shared<const DivisorTable>(sieve_divisor(p.r, static_cast<std::size_t>(std::floor(x)) + 1));
  const PolySpec poly(table, SmoothingWindow(x, y), p.sigma);
  const CauchyKernel kernel = CauchyKernel::with_tail(p.sigma - 0.5, cfg.scan_tail_tol);
  const auto [lo, hi] = grid_range(t_grid);
  const SampledLine line = zeta_power_line(0.5, p.r, lo, hi, kernel.tail_cut, cfg);

  Lemma5Options opts;
  opts.T = p.T;
  opts.tol_ot = cfg.tol_ot_factor / p.T;
  opts.tau = cfg.scan_tail_tol;
  opts.zeta_pow_line = &line;
  std::vector<Lemma5Result> res(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) { res[i] = lemma5_residual(poly, t_grid[i], p.r, opts); });

  ScanReport rep;
  rep.kind = "lemma5";
  rep.params = {{"r", p.r},
                {"sigma", p.sigma},
                {"T", p.T},
                {"x", x},
                {"y", y},
                {"tol_ot", opts.tol_ot},
                {"tail_mass", kernel.tail_mass()}};
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    rep.add(t_grid[i], res[i].residual, res[i].envelope + res[i].tol_ot, res[i].allowance);
  }
  rep.finalize();
  return rep;
}

ScanReport lemma9_scan(double r, double sigma, const std::vector<double>& t_grid, double T, const Defaults& cfg) {
  require(r > 0.0, "r > 0");
  require(T > 1.0, "T > 1");
  require(sigma >= 0.5 + 1.0 / std::log(T) - 1e-12, "sigma >= 1/2 + 1/log T");
  require_in_window(t_grid, T);

  const double a = sigma - 0.5;
  const CauchyKernel kernel = CauchyKernel::with_tail(a, cfg.scan_tail_tol);
  const auto [lo, hi] = grid_range(t_grid);
  const SampledLine line = zeta_power_line(sigma, 2.0 * r, lo, hi, kernel.tail_cut, cfg);
  const double factor = std::pow(T, r * (2.0 * sigma - 1.0));
  const double tol = cfg.tol_ot_factor / T;

  std::vector<double> lhs(t_grid.size()), rhs(t_grid.size()), allow(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const ComplexValue z = zeta({0.5, t_grid[i]}, cfg.zeta_target_err);
    lhs[i] = std::pow(z.abs(), 2.0 * r);
    allow[i] = abs_pow_err(z, 2.0 * r) + 1e-12 * (1.0 + lhs[i]);
    const SmoothedIntegral s = smoothed_integral(kernel, line, t_grid[i]);
    rhs[i] = factor * std::max(0.0, s.value - line.interpolation_bound()) + tol;
  });

  ScanReport rep;
  rep.kind = "lemma9";
  rep.params = {{"r", r}, {"sigma", sigma}, {"T", T}, {"tol_ot", tol}, {"tail_mass", kernel.tail_mass()}};
  for (std::size_t i = 0; i < t_grid.size(); ++i) rep.add(t_grid[i], lhs[i], rhs[i], allow[i]);
  rep.finalize();
  return rep;
}

void Prop3Params::validate() const {
  require(r > 0.0 && r <= 1.0, "0 < r <= 1");
  require(delta > 0.0 && delta < 1.0, "0 < delta < 1");
  require(r / 2.0 + 3.0 * delta < 1.0, "r/2 + 3 delta < 1");
  require(T > 1.0, "T > 1");
  require(y() >= 1.0 && x() > y(), "1 <= y < x");
}

double Prop3Params::x() const { return std::pow(T, r / 2.0 + 2.0 * delta); }
double Prop3Params::y() const { return std::pow(T, r / 2.0 + delta); }
double Prop3Params::sigma0() const { return 0.5 + (4.0 / delta) / std::log(T); }

ScanReport prop3_scan(const Prop3Params& p, const std::vector<double>& t_grid, const Defaults& cfg) {
  p.validate();
  require_in_window(t_grid, p.T);
  const double x = p.x(), y = p.y(), s0 = p.sigma0();
  const double a = s0 - 0.5;
  auto table = std::make_shared<const DivisorTable>(sieve_divisor(p.r, static_cast<std::size_t>(std::floor(x)) + 1));
  const PolySpec poly(table, SmoothingWindow(x, y), 2.0 * s0 - 0.5);
  const double factor = 3.0 * std::exp(12.0 * p.r / p.delta);
  const double tol = cfg.tol_ot_factor / p.T;

  std::vector<double> lhs(t_grid.size()), rhs(t_grid.size()), allow(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const ComplexValue z = zeta({0.5, t_grid[i]}, cfg.zeta_target_err);
    lhs[i] = std::pow(z.abs(), 2.0 * p.r);
    allow[i] = abs_pow_err(z, 2.0 * p.r) + 1e-12 * (1.0 + lhs[i]);
    rhs[i] = factor * smoothed_mean_square(poly, t_grid[i], a) + tol;
  });

  ScanReport rep;
  rep.kind = "prop3";
  rep.params = {{"r", p.r},           {"delta", p.delta}, {"T", p.T},     {"x", x},
                {"y", y},             {"sigma0", s0},     {"tol_ot", tol}, {"factor", factor},
                {"below_t0", p.T < cfg.t0 ? 1.0 : 0.0}};
  for (std::size_t i = 0; i < t_grid.size(); ++i) rep.add(t_grid[i], lhs[i], rhs[i], allow[i]);
  rep.finalize();
  return rep;
}

ScanReport lemma6_check(double r, double sigma, double T, std::size_t samples, const Defaults& cfg) {
  require(r >= 0.0, "r >= 0");
  require(sigma > 0.5 && sigma <= 1.0, "1/2 < sigma <= 1");
  require(T > 1.0 && T <= kMomentTCap, "1 < T <= 1e5");
  const double a = sigma - 0.5;
  if (samples == 0) samples = default_samples(T, cfg.nodes_per_wavelength);
  const CauchyKernel kernel = CauchyKernel::with_tail(a, cfg.scan_tail_tol);
  require(T - kernel.tail_cut - 2.0 * cfg.sample_step > 0.0, "kernel window stays above t = 0");
  const SampledLine line = zeta_power_line(0.5, r, T, 2.0 * T, kernel.tail_cut, cfg);

  // (1/(a^2+v^2)) = (pi/a) w_a(v); the inner integral is bounded above by
  // adding the dropped tail and the interpolation error.
  const MomentEstimate inner = richardson_integral(Scheme::gauss_panels, T, 2.0 * T, samples, [&](const NodeSet& nodes) {
    const auto z = zeta_on_nodes(0.5, nodes, cfg.zeta_target_err);
    std::vector<double> f(nodes.x.size());
    parallel_for(f.size(), [&](std::size_t i) {
      const SmoothedIntegral s = smoothed_integral(kernel, line, nodes.x[i]);
      const double smoothed = (kPi / a) * (s.value + s.tail_allowance + line.interpolation_bound());
      const double m = z[i].abs() + z[i].abs_err;
      f[i] = m * m * m * m * smoothed * smoothed;
    });
    return f;
  });
  const MomentEstimate m = moment({2.0 + r, T, 0.5, samples, Scheme::gauss_panels});
  const double slack = cfg.slack_c * std::pow(T, 1.0 - cfg.slack_epsilon);
  const double lhs = inner.value + inner.quad_err;
  const double rhs = 2.0 * kPi * kPi / (a * a) * std::max(0.0, m.value - m.quad_err) + slack;

  ScanReport rep;
  rep.kind = "lemma6";
  rep.params = {{"r", r},
                {"sigma", sigma},
                {"T", T},
                {"samples", static_cast<double>(samples)},
                {"moment", m.value},
                {"moment_quad_err", m.quad_err},
                {"lhs_quad_err", inner.quad_err},
                {"slack", slack},
                {"tail_mass", kernel.tail_mass()}};
  rep.add(T, lhs, rhs);
  rep.finalize();
  return rep;
}

Table theorem1_trend(double k, const std::vector<double>& T_list, const Defaults& cfg) {
  require(k > 0.0 && k < 2.0 + 2.0 / 11.0, "0 < k < 2 + 2/11");
  require(!T_list.empty(), "non-empty T list");
  for (std::size_t i = 0; i < T_list.size(); ++i) {
    require(T_list[i] > 1.0 && T_list[i] <= kMomentTCap, "1 < T <= 1e5");
    if (i > 0) require(T_list[i] > T_list[i - 1], "T list increasing");
  }
  Table tab;
  tab.kind = "thm1-trend";
  tab.params = {{"k", k}, {"trend_factor", cfg.trend_factor}};
  tab.columns = {"T", "value", "quad_err", "ratio"};
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double T : T_list) {
    const MomentEstimate m = moment({k, T, 0.5, default_samples(T, cfg.nodes_per_wavelength), Scheme::gauss_panels});
    const double ratio = m.value / (T * std::pow(std::log(T), k * k));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    tab.rows.push_back({T, m.value, m.quad_err, ratio});
  }
  const double spread = hi / lo;
  tab.summary = {{"min_ratio", lo}, {"max_ratio", hi}, {"spread", spread}, {"holds", spread < cfg.trend_factor ? 1.0 : 0.0}};
  return tab;
}

Table cor2_comparison(double r, double delta, const std::vector<double>& T_list, std::size_t samples) {
  require(r > 0.0 && r < 1.0, "0 < r < 1");
  require(delta > 0.0, "delta > 0");
  require(!T_list.empty(), "non-empty T list");
  Table tab;
  tab.kind = "cor2";
  tab.params = {{"r", r}, {"delta", delta}};
  tab.columns = {"T", "x", "moment", "moment_quad_err", "twisted", "twisted_quad_err", "ratio"};
  for (double T : T_list) {
    require(T > 1.0 && T <= kMomentTCap, "1 < T <= 1e5");
    const double x = std::pow(T, r / 2.0 + 2.0 * delta), y = std::pow(T, r / 2.0 + delta);
    require(x < T, "x = T^{r/2 + 2 delta} < T");
    auto table = std::make_shared<const DivisorTable>(sieve_divisor(r, static_cast<std::size_t>(std::floor(x)) + 1));
    const PolySpec poly(table, SmoothingWindow(x, y), 0.5);
    const std::size_t n = samples == 0 ? default_samples(T) : samples;
    const MomentEstimate m = moment({2.0 + r, T, 0.5, n, Scheme::gauss_panels});
    const MomentEstimate tw = twisted_fourth_moment(poly, T, n);
    tab.rows.push_back({T, x, m.value, m.quad_err, tw.value, tw.quad_err, m.value / tw.value});
  }
  return tab;
}

Table thm2_offline(double k, double T, const std::vector<double>& psi_list, double delta, std::size_t samples) {
  require(!psi_list.empty(), "non-empty psi list");
  Table tab;
  tab.kind = "thm2-offline";
  tab.params = {{"k", k}, {"T", T}, {"delta", delta}};
  tab.columns = {"psi", "sigma", "lhs", "quad_err", "rhs", "ratio", "ratio_minus_1", "envelope", "poly_diagonal",
                 "psi_in_range"};
  bool decreasing = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double psi : psi_list) {
    const OfflineComparison c = offline_moment_comparison(k, T, psi, delta, samples);
    const double dev = std::abs(c.ratio - 1.0);
    decreasing = decreasing && dev < prev;
    prev = dev;
    tab.rows.push_back({psi, c.sigma, c.lhs.value, c.lhs.quad_err, c.rhs, c.ratio, c.ratio - 1.0, c.envelope,
                        c.poly_diagonal, c.psi_in_range ? 1.0 : 0.0});
  }
  tab.summary = {{"deviation_decreasing", decreasing ? 1.0 : 0.0}};
  return tab;
}

}  // namespace zetalab
