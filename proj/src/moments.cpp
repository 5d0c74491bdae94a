#include "zetalab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "zetalab/config.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/multiplicative.hpp"
#include "zetalab/parallel.hpp"

namespace zetalab {
namespace {

void validate(const MomentSpec& spec) {
  require(spec.k >= 0.0, "k >= 0");
  require(spec.k <= kMomentKCap, "k <= 4");
  require(spec.T > 0.0, "T > 0");
  require(spec.T <= kMomentTCap, "T <= 1e5");
  require(spec.sigma >= 0.5, "sigma >= 1/2");
  require(spec.samples == 0 || spec.samples >= kMinMomentSamples, "samples >= 64");
}

}  // namespace

std::size_t default_samples(double T, double nodes_per_wavelength) {
  require(T > 0.0, "T > 0");
  const double density = nodes_per_wavelength > 0.0 ? nodes_per_wavelength : kDefaults.nodes_per_wavelength;
  const double top = 2.0 * T;
  const double log_term = std::max(1.0, std::log(top / (2.0 * std::numbers::pi)));
  const double wavelength = 2.0 * std::numbers::pi / log_term;
  const auto n = static_cast<std::size_t>(std::ceil(density * T / wavelength));
  return std::max(n, kMinMomentSamples);
}

std::vector<ComplexValue> zeta_on_nodes(double sigma, const NodeSet& nodes, double target_err) {
  const std::size_t order = nodes.offsets.size();
  const std::size_t count = nodes.count();
  std::vector<ComplexValue> out(nodes.x.size());
  constexpr std::size_t kBlock = 2048;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  parallel_for(order * blocks, [&](std::size_t task) {
    const std::size_t j = task / blocks, b = task % blocks;
    const std::size_t begin = b * kBlock;
    const std::size_t n = std::min(kBlock, count - begin);
    const auto z = zeta_lattice(sigma, nodes.offsets[j] + nodes.stride * static_cast<double>(begin), nodes.stride, n,
                                target_err);
    for (std::size_t i = 0; i < n; ++i) out[(begin + i) * order + j] = z[i];
  });
  return out;
}

MomentEstimate moment(const MomentSpec& spec) {
  validate(spec);
  if (spec.k == 0.0) return {spec.T, 0.0, 0};
  const std::size_t samples = spec.samples ? spec.samples : default_samples(spec.T);
  return richardson_integral(spec.scheme, spec.T, 2.0 * spec.T, samples, [&](const NodeSet& nodes) {
    const auto z = zeta_on_nodes(spec.sigma, nodes, kDefaults.zeta_target_err);
    std::vector<double> f(z.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(std::norm(z[i].value()), spec.k);
    return f;
  });
}

MomentEstimate twisted_fourth_moment(const PolySpec& poly, double T, std::size_t samples) {
  require(poly.sigma() == 0.5, "twisting polynomial on sigma = 1/2");
  require(T > 0.0 && T <= kMomentTCap, "0 < T <= 1e5");
  require(poly.window().x() < T, "x < T");
  require(samples == 0 || samples >= kMinMomentSamples, "samples >= 64");
  const std::size_t n = samples ? samples : default_samples(T);
  return richardson_integral(Scheme::gauss_panels, T, 2.0 * T, n, [&](const NodeSet& nodes) {
    const auto z = zeta_on_nodes(0.5, nodes, kDefaults.zeta_target_err);
    const GridResult a = eval_poly(poly, nodes.x);
    std::vector<double> f(z.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double z2 = std::norm(z[i].value());
      f[i] = z2 * z2 * std::norm(a.values[i].value());
    }
    return f;
  });
}

OfflineComparison offline_moment_comparison(double k, double T, double psi, double delta, std::size_t samples) {
  require(k >= 0.0 && k < 2.0 + 2.0 / 11.0, "0 <= k < 2 + 2/11");
  require(T > 1.0, "T > 1");
  require(psi > 0.0, "psi > 0");
  require(delta > 0.0 && delta < 0.5, "0 < delta < 1/2");
  OfflineComparison out;
  out.k = k;
  out.T = T;
  out.psi = psi;
  out.delta = delta;
  const double log_t = std::log(T);
  out.sigma = 0.5 + psi / log_t;
  out.psi_in_range = psi <= log_t / 10.0;
  out.envelope = std::exp(-psi / 100.0);

  out.lhs = moment({k, T, out.sigma, samples, Scheme::gauss_panels});
  out.rhs = T * series_main_term(k, out.sigma);

  const double x = std::pow(T, 2.0 * delta), y = std::pow(T, delta);
  if (k > 0.0 && y >= 1.0 && x > y) {
    auto table = std::make_shared<const DivisorTable>(sieve_divisor(k, static_cast<std::size_t>(std::floor(x)) + 1));
    const PolySpec poly(table, SmoothingWindow(x, y), out.sigma);
    out.poly_diagonal = mean_square_diagonal(poly, T);
  } else {
    out.poly_diagonal = T;
  }
  out.ratio = out.lhs.value / out.rhs;
  return out;
}

}  // namespace zetalab
