#include "zetalab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "zetalab/errors.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/special_fns.hpp"

namespace zetalab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kKernelOrder = 10;

}  // namespace

CauchyKernel CauchyKernel::with_tail(double a, double tau, std::size_t panels) {
  require(a > 0.0, "kernel width a > 0");
  require(tau > 0.0 && tau < 1.0, "0 < tail tolerance < 1");
  require(panels >= 1, "panels >= 1");
  return {a, a * std::tan(0.5 * kPi * (1.0 - tau)), panels};
}

double CauchyKernel::tail_mass() const { return 1.0 - (2.0 / kPi) * std::atan(tail_cut / a); }

double cauchy_weight(double a, double v) { return (a / kPi) / (a * a + v * v); }

double kernel_weight(const CauchyKernel& k, double v) { return std::abs(v) <= k.tail_cut ? cauchy_weight(k.a, v) : 0.0; }

SmoothedIntegral smoothed_integral(const CauchyKernel& k, const std::function<double(double)>& f, double center,
                                   const QuadratureOptions& opts) {
  require(k.a > 0.0, "kernel width a > 0");
  require(k.tail_cut >= 0.0, "tail_cut >= 0");
  SmoothedIntegral out;
  out.tail_mass = k.tail_mass();
  const double theta_max = std::atan(k.tail_cut / k.a);
  if (theta_max == 0.0) return out;

  const GaussRule& rule = gauss_legendre(kKernelOrder);
  double sup = 0.0;
  struct Estimate {
    double value, abs_value;
  };
  auto panel = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    double acc = 0.0, acc_abs = 0.0;
    for (std::size_t j = 0; j < kKernelOrder; ++j) {
      const double fv = f(center + k.a * std::tan(mid + half * rule.nodes[j]));
      sup = std::max(sup, std::abs(fv));
      acc += rule.weights[j] * fv;
      acc_abs += rule.weights[j] * std::abs(fv);
    }
    out.evals += kKernelOrder;
    if (out.evals > opts.max_evals) {
      throw QuadratureBudgetExceeded("smoothed_integral: more than " + std::to_string(opts.max_evals) +
                                     " integrand evaluations");
    }
    return Estimate{acc * half, acc_abs * half};
  };

  // Global adaptive bisection in theta: the piece with the largest error
  // estimate is split until the summed estimate meets the tolerance.
  struct Piece {
    double lo, hi;
    Estimate left, right;
    double err;
    int depth;
  };
  auto make_piece = [&](double lo, double hi, Estimate whole, int depth) {
    const double mid = 0.5 * (lo + hi);
    Piece p{lo, hi, panel(lo, mid), panel(mid, hi), 0.0, depth};
    p.err = std::abs(p.left.value + p.right.value - whole.value);
    return p;
  };
  auto by_err = [](const Piece& a, const Piece& b) { return a.err < b.err; };

  std::vector<Piece> heap;
  const double width = 2.0 * theta_max;
  const std::size_t initial = std::max<std::size_t>(k.panels, 2);
  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = -theta_max + width * static_cast<double>(i) / static_cast<double>(initial);
    const double hi = -theta_max + width * static_cast<double>(i + 1) / static_cast<double>(initial);
    heap.push_back(make_piece(lo, hi, panel(lo, hi), 0));
  }
  std::make_heap(heap.begin(), heap.end(), by_err);

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double total = 0.0, total_abs = 0.0, err = 0.0;
  auto account = [&](const Piece& p, double sign) {
    total += sign * (p.left.value + p.right.value);
    total_abs += sign * (p.left.abs_value + p.right.abs_value);
    err += sign * p.err;
  };
  for (const auto& p : heap) account(p, 1.0);
  while (err > std::max({opts.abs_tol * kPi, opts.rel_tol * std::abs(total), 64.0 * kEps * total_abs})) {
    std::pop_heap(heap.begin(), heap.end(), by_err);
    const Piece worst = heap.back();
    heap.pop_back();
    if (worst.depth + 1 > opts.max_depth) {
      throw QuadratureBudgetExceeded("smoothed_integral: refinement depth exceeds " + std::to_string(opts.max_depth));
    }
    account(worst, -1.0);
    const double mid = 0.5 * (worst.lo + worst.hi);
    for (const Piece& child : {make_piece(worst.lo, mid, worst.left, worst.depth + 1),
                               make_piece(mid, worst.hi, worst.right, worst.depth + 1)}) {
      account(child, 1.0);
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), by_err);
    }
  }

  std::sort(heap.begin(), heap.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  std::vector<double> accepted;
  accepted.reserve(heap.size());
  for (const auto& p : heap) accepted.push_back(p.left.value + p.right.value);
  out.value = pairwise_sum(accepted) / kPi;
  out.tail_allowance = out.tail_mass * sup;
  return out;
}

SampledLine::SampledLine(double u0, double step, std::vector<double> values)
    : u0_(u0), step_(step), values_(std::move(values)) {
  require(step > 0.0, "sample step > 0");
  require(values_.size() >= 2, "a sampled line needs >= 2 samples");
  for (double v : values_) max_abs_ = std::max(max_abs_, std::abs(v));
  for (std::size_t i = 1; i + 1 < values_.size(); ++i) {
    interp_bound_ = std::max(interp_bound_, std::abs(values_[i + 1] - 2.0 * values_[i] + values_[i - 1]) / 8.0);
  }
}

SampledLine SampledLine::build(double u0, double u1, double step, const std::function<double(double)>& sample) {
  require(u1 > u0, "u1 > u0");
  require(step > 0.0, "sample step > 0");
  const auto count = static_cast<std::size_t>(std::ceil((u1 - u0) / step - 1e-9)) + 1;
  std::vector<double> values(std::max<std::size_t>(count, 2));
  parallel_for(values.size(), [&](std::size_t i) { values[i] = sample(u0 + step * static_cast<double>(i)); });
  return SampledLine(u0, step, std::move(values));
}

double SampledLine::interpolate(double u) const {
  const double pos = (u - u0_) / step_;
  require(pos >= -1e-9 && pos <= static_cast<double>(values_.size() - 1) + 1e-9, "interpolation point inside line");
  const double clamped = std::clamp(pos, 0.0, static_cast<double>(values_.size() - 1));
  const auto i = std::min(static_cast<std::size_t>(clamped), values_.size() - 2);
  const double frac = clamped - static_cast<double>(i);
  return values_[i] + frac * (values_[i + 1] - values_[i]);
}

SampledLine SampledLine::transformed(const std::function<double(double)>& g) const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), g);
  return SampledLine(u0_, step_, std::move(out));
}

SampledLine zeta_abs_line(double sigma, double u0, double u1, double step, double target_err) {
  require(u1 > u0, "u1 > u0");
  require(step > 0.0, "sample step > 0");
  const auto count = std::max<std::size_t>(static_cast<std::size_t>(std::ceil((u1 - u0) / step - 1e-9)) + 1, 2);
  constexpr std::size_t kBlock = 2048;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<double> values(count);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t begin = b * kBlock;
    const std::size_t n = std::min(kBlock, count - begin);
    const auto z = zeta_lattice(sigma, u0 + step * static_cast<double>(begin), step, n, target_err);
    for (std::size_t i = 0; i < n; ++i) values[begin + i] = z[i].abs();
  });
  return SampledLine(u0, step, std::move(values));
}

SmoothedIntegral smoothed_integral(const CauchyKernel& k, const SampledLine& line, double center) {
  require(k.a > 0.0, "kernel width a > 0");
  const double lo = center - k.tail_cut, hi = center + k.tail_cut;
  require(lo >= line.u0() - 1e-9 && hi <= line.u_end() + 1e-9,
          "sampled line covers [center - V, center + V]");
  SmoothedIntegral out;
  out.tail_mass = k.tail_mass();
  out.tail_allowance = out.tail_mass * line.max_abs();
  const double a = k.a, h = line.step();

  const auto first = static_cast<std::size_t>(std::max(0.0, std::floor((lo - line.u0()) / h)));
  const std::size_t last = std::min(line.size() - 1, static_cast<std::size_t>(std::ceil((hi - line.u0()) / h)));
  std::vector<double> cells;
  cells.reserve(last - first);
  for (std::size_t i = first; i < last; ++i) {
    const double u_left = line.u0() + h * static_cast<double>(i);
    const double u_right = u_left + h;
    const double cl = std::max(u_left, lo), cr = std::min(u_right, hi);
    if (cr <= cl) continue;
    const double slope = (line[i + 1] - line[i]) / h;
    const double f_left = line[i] + slope * (cl - u_left);
    // Offsets from the kernel centre.
    const double v0 = cl - center, v1 = cr - center;
    const double x0 = v0 / a, x1 = v1 / a;
    // int w_a over the cell, as an arctan difference without cancellation.
    double mass = (x0 * x1 > -1.0) ? std::atan((x1 - x0) / (1.0 + x0 * x1)) : std::atan(x1) - std::atan(x0);
    mass /= kPi;
    // int (v - v0) w_a dv = (a/2pi) log((a^2+v1^2)/(a^2+v0^2)) - v0 * mass.
    const double first_moment =
        (a / (2.0 * kPi)) * std::log1p((v1 - v0) * (v1 + v0) / (a * a + v0 * v0)) - v0 * mass;
    cells.push_back(f_left * mass + slope * first_moment);
  }
  out.value = pairwise_sum(cells);
  out.evals = cells.size();
  return out;
}

double kernel_self_convolution(double a, double v, double tau) {
  const CauchyKernel k = CauchyKernel::with_tail(a, tau, 32);
  return smoothed_integral(k, [a, v](double u) { return cauchy_weight(a, u - v); }, 0.0).value;
}

Lemma10Result lemma10_check(const std::function<double(double)>& f, const std::function<double(double)>& g,
                            double c, double a, std::vector<double> grid, double x0, double tau) {
  require(c > 0.0, "C > 0");
  require(a > 0.0, "a > 0");
  const CauchyKernel k = CauchyKernel::with_tail(a, tau);
  if (grid.empty()) {
    constexpr int kPoints = 64;
    for (int j = 0; j < kPoints; ++j) grid.push_back(x0 + a * std::tan(kPi * ((j + 0.5) / kPoints - 0.5)));
  }
  Lemma10Result res;
  res.premise.kind = "lemma10-premise";
  res.premise.params = {{"C", c}, {"a", a}, {"x0", x0}, {"tau", tau}};
  for (double x : grid) {
    const double fx = f(x), gx = g(x);
    require(fx >= 0.0 && gx >= 0.0, "f, g >= 0");
    const SmoothedIntegral avg = smoothed_integral(k, f, x);
    const double rhs = c * gx + 0.25 * avg.value;
    const double allowance = 0.25 * avg.tail_allowance + 1e-12 * (1.0 + std::abs(rhs));
    res.premise.add(x, fx, rhs, allowance);
    if (!res.premise.rows.back().holds) {
      throw HypothesisViolated("premise f(x) <= C g(x) + (1/4) int f(x+u) w_a(u) du fails at x = " +
                               std::to_string(x) + " (margin " + std::to_string(res.premise.rows.back().margin) +
                               ")");
    }
  }
  res.premise.finalize();

  const SmoothedIntegral f2 = smoothed_integral(k, [&](double u) { return f(u) * f(u); }, x0);
  const SmoothedIntegral g2 = smoothed_integral(k, [&](double u) { return g(u) * g(u); }, x0);
  // The truncated part of the left side is added back as its tail bound.
  res.lhs = f2.value + f2.tail_allowance;
  res.rhs = 3.0 * c * c * g2.value;
  res.allowance = 1e-12 * (1.0 + std::abs(res.rhs));
  res.holds = res.lhs <= res.rhs + res.allowance;
  return res;
}

}  // namespace zetalab
