#pragma once

#include <cstddef>

namespace zetalab {

// Every tunable default in one place. The CLI exposes each field as a flag.
struct Defaults {
  // Additive O(1/T) allowance is tol_ot_factor / T.
  double tol_ot_factor = 10.0;
  // O(T^{1-eps}) slack in the smoothed-moment inequality: slack_c * T^{1-eps}.
  double slack_epsilon = 0.1;
  double slack_c = 1.0;
  // Cauchy-kernel tail mass for closed-form integrands.
  double tail_tol = 1e-6;
  // Tail mass for integrals of sampled zeta values; a wider window costs one
  // zeta evaluation per grid step.
  double scan_tail_tol = 1e-3;
  // Grid step for sampled zeta lines.
  double sample_step = 0.02;
  // Smallest height treated as "large T"; below it scans warn.
  double t0 = 1000.0;
  // Target absolute error for zeta evaluations inside scans.
  double zeta_target_err = 1e-10;
  // Quadrature nodes per oscillation wavelength 2 pi / log(t / 2 pi).
  double nodes_per_wavelength = 20.0;
  // Largest sieve length.
  std::size_t x_max_cap = 100'000'000;
  // Max/min spread allowed across a moment trend table.
  double trend_factor = 10.0;
};

inline const Defaults kDefaults{};

}  // namespace zetalab
