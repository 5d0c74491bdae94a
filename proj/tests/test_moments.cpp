#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "oracles.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/moments.hpp"
#include "zetalab/parallel.hpp"

using namespace zetalab;

TEST_CASE("default sample count") {
  CHECK(default_samples(10.0) >= kMinMomentSamples);
  CHECK(default_samples(2000.0) > default_samples(1000.0));
}

TEST_CASE("trivial moment") {
  const auto m = moment({0.0, 100.0, 0.5, 0, Scheme::gauss_panels});
  CHECK(m.value == 100.0);
  CHECK(m.quad_err == 0.0);
}

TEST_CASE("moment far right of the strip") {
  const auto m = moment({1.0, 10.0, 2.5, 0, Scheme::gauss_panels});
  // Mean value is zeta(5) plus oscillating cross terms on this short range.
  CHECK(m.value / 10.0 > 1.0);
  CHECK(m.value / 10.0 < 1.1);
  // Closed-form mean square of the truncated Dirichlet series; the tail past
  // 4000 terms is about 1e-5.
  CHECK(m.value == doctest::Approx(oracle::dirichlet_mean_square(2.5, 10.0, 4000)).epsilon(1e-4));
  const auto tr = moment({1.0, 10.0, 2.5, 400, Scheme::trapezoid});
  CHECK(tr.value == doctest::Approx(m.value).epsilon(1e-6));
}

TEST_CASE("second moment on the critical line") {
  const double T = 1000.0;
  const auto m = moment({1.0, T, 0.5, 0, Scheme::gauss_panels});
  const double ratio = m.value / (T * std::log(T));
  CHECK(ratio > 0.7);
  CHECK(ratio < 1.5);
  // Mean-value formula int_0^X |zeta|^2 = X log(X/2pi) + (2 gamma - 1) X + O(sqrt X).
  const double gamma = std::numbers::egamma;
  auto F = [&](double X) { return X * std::log(X / (2.0 * std::numbers::pi)) + (2.0 * gamma - 1.0) * X; };
  CHECK(std::abs(m.value / (F(2.0 * T) - F(T)) - 1.0) < 0.01);
}

TEST_CASE("refinement stability") {
  const std::size_t n = default_samples(1000.0);
  for (double k : {1.0, 2.0}) {
    const auto a = moment({k, 1000.0, 0.5, n, Scheme::gauss_panels});
    const auto b = moment({k, 1000.0, 0.5, 2 * n, Scheme::gauss_panels});
    CHECK(std::abs(a.value - b.value) <= 3.0 * a.quad_err + 1e-9 * a.value);
  }
}

TEST_CASE("k-additivity at shared nodes") {
  const NodeSet nodes = scheme_nodes(Scheme::gauss_panels, 500.0, 1000.0, 2000);
  const auto z = zeta_on_nodes(0.5, nodes, 1e-10);
  std::vector<double> f2(z.size()), f1sq(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double a = z[i].abs();
    f2[i] = std::pow(a, 4.0);
    f1sq[i] = std::pow(a * a, 2.0);
  }
  CHECK(weighted_sum(nodes.w, f2) == doctest::Approx(weighted_sum(nodes.w, f1sq)).epsilon(1e-13));
}

TEST_CASE("pointwise nesting on the quadrature grid") {
  const double T = 1000.0, k = 1.5, sigma = 0.6;
  const NodeSet nodes = scheme_nodes(Scheme::gauss_panels, T, 2.0 * T, 1500);
  const auto half = zeta_on_nodes(0.5, nodes, 1e-10);
  const auto right = zeta_on_nodes(sigma, nodes, 1e-10);
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    CHECK(std::pow(half[i].abs(), 2.0 * k) <= std::pow(T, k * (2.0 * sigma - 1.0)) * std::pow(right[i].abs(), 2.0 * k) + 1e-9);
  }
}

TEST_CASE("thread count does not change results") {
  const MomentSpec spec{2.18, 700.0, 0.5, 0, Scheme::gauss_panels};
  set_thread_count(1);
  const auto a = moment(spec);
  set_thread_count(3);
  const auto b = moment(spec);
  set_thread_count(0);
  CHECK(a.value == b.value);
  CHECK(a.quad_err == b.quad_err);
}

TEST_CASE("twisted fourth moment") {
  const double T = 1000.0;
  // x < 2 leaves A = 1.
  auto table = std::make_shared<const DivisorTable>(sieve_divisor(0.5, 3));
  const PolySpec one(table, SmoothingWindow(1.5, 1.0), 0.5);
  const auto tw = twisted_fourth_moment(one, T);
  const auto m2 = moment({2.0, T, 0.5, 0, Scheme::gauss_panels});
  CHECK(tw.value == doctest::Approx(m2.value).epsilon(1e-12));

  auto t2 = std::make_shared<const DivisorTable>(sieve_divisor(0.18, 10));
  const PolySpec p(t2, SmoothingWindow(6.0, 3.0), 0.5);
  const auto a = twisted_fourth_moment(p, T, 3000);
  const auto b = twisted_fourth_moment(p.scaled(3.0), T, 3000);
  CHECK(b.value == doctest::Approx(9.0 * a.value).epsilon(1e-13));
  CHECK_THROWS_AS(twisted_fourth_moment(p.shifted(0.6), T), InvalidArgument);
}

TEST_CASE("offline comparison") {
  const auto c = offline_moment_comparison(1.0, 1000.0, std::log(1000.0) / 10.0, 0.015);
  CHECK(c.ratio > 0.5);
  CHECK(c.ratio < 2.0);
  CHECK(c.psi_in_range);
  const auto z = offline_moment_comparison(0.0, 1000.0, 2.0, 0.015);
  CHECK(z.lhs.value == 1000.0);
  CHECK(z.rhs == 1000.0);
  double prev = 1e300;
  for (double psi : {2.0, 4.0, 6.0}) {
    const double dev = std::abs(offline_moment_comparison(1.0, 1000.0, psi, 0.015).ratio - 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK_THROWS_AS(offline_moment_comparison(2.5, 1000.0, 2.0, 0.015), InvalidArgument);
}
