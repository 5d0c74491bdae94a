#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace zetalab {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes by Newton iteration on P_n; cached per order, thread-safe.
const GaussRule& gauss_legendre(std::size_t order);

// Quadrature nodes that form a union of arithmetic progressions:
// x[p * offsets.size() + j] = offsets[j] + p * stride. Evaluators can use the
// structure to step along each progression.
struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> offsets;
  double stride = 0.0;

  std::size_t count() const { return offsets.empty() ? 0 : x.size() / offsets.size(); }
};

// Composite Gauss-Legendre rule: `panels` equal panels on [a, b].
NodeSet gauss_panels(double a, double b, std::size_t panels, std::size_t order);
NodeSet trapezoid_nodes(double a, double b, std::size_t points);

enum class Scheme { gauss_panels, trapezoid };

inline constexpr std::size_t kPanelOrder = 8;

// Nodes for roughly `samples` points on [a, b]: Gauss panels of order 8, or
// a uniform trapezoid grid.
NodeSet scheme_nodes(Scheme scheme, double a, double b, std::size_t samples);

struct MomentEstimate {
  double value = 0.0;
  double quad_err = 0.0;
  std::size_t n_evals = 0;
};

// Integrates at `samples` and `2 * samples` nodes and reports the finer value.
// quad_err is the gap between the two levels (divided by 3 for the
// trapezoid, the Richardson factor for an O(h^2) rule).
MomentEstimate richardson_integral(Scheme scheme, double a, double b, std::size_t samples,
                                   const std::function<std::vector<double>(const NodeSet&)>& eval);

// Pairwise (cascade) summation with a fixed tree shape, so the result only
// depends on the order of the input.
double pairwise_sum(std::span<const double> v);

// Sum of w[i] * f[i] reduced pairwise.
double weighted_sum(std::span<const double> w, std::span<const double> f);

}  // namespace zetalab
