#include "zetalab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "zetalab/errors.hpp"

namespace zetalab {
namespace {

GaussRule compute_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = std::numbers::pi;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Final derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = pk;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t order) {
  require(order >= 2 && order <= 64, "2 <= Gauss-Legendre order <= 64");
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussRule>(compute_rule(order));
  return *slot;
}

NodeSet gauss_panels(double a, double b, std::size_t panels, std::size_t order) {
  require(panels >= 1, "panels >= 1");
  const GaussRule& rule = gauss_legendre(order);
  NodeSet out;
  out.x.reserve(panels * order);
  out.w.reserve(panels * order);
  const double h = (b - a) / static_cast<double>(panels);
  out.stride = h;
  for (std::size_t j = 0; j < order; ++j) out.offsets.push_back(a + 0.5 * h + 0.5 * h * rule.nodes[j]);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    for (std::size_t j = 0; j < order; ++j) {
      out.x.push_back(mid + 0.5 * h * rule.nodes[j]);
      out.w.push_back(0.5 * h * rule.weights[j]);
    }
  }
  return out;
}

NodeSet trapezoid_nodes(double a, double b, std::size_t points) {
  require(points >= 2, "trapezoid needs >= 2 points");
  NodeSet out;
  out.x.resize(points);
  out.w.resize(points);
  const double h = (b - a) / static_cast<double>(points - 1);
  out.stride = h;
  out.offsets = {a};
  for (std::size_t i = 0; i < points; ++i) {
    out.x[i] = a + static_cast<double>(i) * h;
    out.w[i] = (i == 0 || i + 1 == points) ? 0.5 * h : h;
  }
  return out;
}

NodeSet scheme_nodes(Scheme scheme, double a, double b, std::size_t samples) {
  require(b > a, "integration interval b > a");
  if (scheme == Scheme::trapezoid) return trapezoid_nodes(a, b, std::max<std::size_t>(samples, 2));
  const std::size_t panels = std::max<std::size_t>(1, (samples + kPanelOrder - 1) / kPanelOrder);
  return gauss_panels(a, b, panels, kPanelOrder);
}

MomentEstimate richardson_integral(Scheme scheme, double a, double b, std::size_t samples,
                                   const std::function<std::vector<double>(const NodeSet&)>& eval) {
  const NodeSet coarse = scheme_nodes(scheme, a, b, samples);
  const NodeSet fine = scheme == Scheme::trapezoid ? scheme_nodes(scheme, a, b, 2 * samples - 1)
                                                   : scheme_nodes(scheme, a, b, 2 * samples);
  const double i_coarse = weighted_sum(coarse.w, eval(coarse));
  const double i_fine = weighted_sum(fine.w, eval(fine));
  const double gap = std::abs(i_fine - i_coarse);
  return {i_fine, scheme == Scheme::trapezoid ? gap / 3.0 : gap, coarse.x.size() + fine.x.size()};
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double weighted_sum(std::span<const double> w, std::span<const double> f) {
  require(w.size() == f.size(), "weights and samples have equal length");
  std::vector<double> prod(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) prod[i] = w[i] * f[i];
  return pairwise_sum(prod);
}

}  // namespace zetalab
