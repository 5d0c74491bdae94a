#pragma once

#include <cstddef>
#include <vector>

#include "zetalab/dirichlet_poly.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/special_fns.hpp"

namespace zetalab {

inline constexpr double kMomentKCap = 4.0;
inline constexpr double kMomentTCap = 1e5;
inline constexpr std::size_t kMinMomentSamples = 64;

// int_T^{2T} |zeta(sigma + it)|^{2k} dt.
struct MomentSpec {
  double k = 1.0;
  double T = 1000.0;
  double sigma = 0.5;
  std::size_t samples = 0;  // 0: default_samples(T)
  Scheme scheme = Scheme::gauss_panels;
};

// Node count giving nodes_per_wavelength nodes per oscillation length
// 2 pi / log(t / 2 pi) at t = 2T, and at least 64.
std::size_t default_samples(double T, double nodes_per_wavelength = 0.0);

// zeta(sigma + i x) at every node, stepping along the node set's arithmetic
// progressions in fixed-size blocks (independent of the worker count).
std::vector<ComplexValue> zeta_on_nodes(double sigma, const NodeSet& nodes, double target_err);

MomentEstimate moment(const MomentSpec& spec);

// int_T^{2T} |zeta(1/2 + it)|^4 |A(1/2 + it)|^2 dt. Requires the polynomial on
// the critical line and shorter than T.
MomentEstimate twisted_fourth_moment(const PolySpec& poly, double T, std::size_t samples = 0);

struct OfflineComparison {
  double k = 0.0;
  double T = 0.0;
  double psi = 0.0;
  double delta = 0.0;
  double sigma = 0.0;
  MomentEstimate lhs;          // int_T^{2T} |zeta(sigma+it)|^{2k} dt
  double rhs = 0.0;            // T sum d_k(n)^2 / n^{2 sigma}
  double poly_diagonal = 0.0;  // T sum_{n <= x} d_k(n)^2 W(n)^2 / n^{2 sigma}, x = T^{2 delta}, y = T^delta
  double ratio = 0.0;          // lhs / rhs
  double envelope = 0.0;       // e^{-psi/100}
  bool psi_in_range = false;   // psi <= log T / 10
};

// Moment slightly right of the critical line, sigma = 1/2 + psi / log T,
// against the Dirichlet-series main term.
OfflineComparison offline_moment_comparison(double k, double T, double psi, double delta, std::size_t samples = 0);

}  // namespace zetalab
