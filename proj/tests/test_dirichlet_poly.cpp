#include <doctest.h>

#include <cmath>
#include <memory>

#include "zetalab/dirichlet_poly.hpp"
#include "zetalab/errors.hpp"

using namespace zetalab;

namespace {

PolySpec make_poly(double r, double x, double y, double sigma) {
  auto table = std::make_shared<const DivisorTable>(sieve_divisor(r, static_cast<std::size_t>(x) + 1));
  return PolySpec(table, SmoothingWindow(x, y), sigma);
}

}  // namespace

TEST_CASE("coefficients") {
  const PolySpec p = make_poly(2.0, 20.0, 5.0, 0.5);
  CHECK(p.length() == 20);
  CHECK(p.coefficients()[0] == 1.0);
  CHECK(p.coefficients()[5] == doctest::Approx(4.0 * (std::log(20.0 / 6.0) / std::log(4.0)) / std::sqrt(6.0)));
  CHECK(p.at(0.0).real() == doctest::Approx([&] {
          double s = 0.0;
          for (double c : p.coefficients()) s += c;
          return s;
        }()));
}

TEST_CASE("long polynomial at sigma = 2 approaches zeta(2)") {
  const PolySpec p = make_poly(1.0, 1e5, 5e4, 2.0);
  CHECK(std::abs(p.at(0.0).real() - zeta({2.0, 0.0}).re) < 3e-5);
  CHECK(std::abs(p.at(7.0) - zeta({2.0, 7.0}).value()) < 3e-5);
}

TEST_CASE("linearity in the coefficients") {
  const PolySpec p = make_poly(0.5, 300.0, 30.0, 0.5);
  const PolySpec q = p.scaled(2.0);
  const std::vector<double> grid{1000.0, 1000.5, 1700.25};
  const auto a = eval_poly(p, grid), b = eval_poly(q, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(b.values[i].re == 2.0 * a.values[i].re);
    CHECK(b.values[i].im == 2.0 * a.values[i].im);
  }
  CHECK(mean_square_diagonal(q, 1000.0) == doctest::Approx(4.0 * mean_square_diagonal(p, 1000.0)));
  CHECK_THROWS_AS(eval_poly(p, {2.0, 1.0}), InvalidArgument);
}

TEST_CASE("mean square against the diagonal") {
  const struct {
    double r, x, y, sigma, T;
  } cases[] = {{1.0, 10.0, 3.0, 0.5, 1000.0}, {0.5, 14.0, 4.0, 0.5, 2000.0}, {2.0, 22.0, 5.0, 0.6, 5000.0}};
  for (const auto& c : cases) {
    const PolySpec p = make_poly(c.r, c.x, c.y, c.sigma);
    const auto q = mean_square_quadrature(p, c.T, static_cast<std::size_t>(4 * c.T));
    CHECK(std::abs(q.value / mean_square_diagonal(p, c.T) - 1.0) < 0.05);
    CHECK(q.quad_err < 1e-6 * q.value);
  }
}

TEST_CASE("closed-form smoothing matches kernel quadrature") {
  const PolySpec p = make_poly(0.5, 12.0, 4.0, 1.3);
  for (double a : {0.2, 1.5}) {
    for (double t : {1000.0, 1234.5}) {
      const auto k = CauchyKernel::with_tail(a, 1e-4);
      const auto q = smoothed_integral(k, [&](double v) { return std::norm(p.at(v)); }, t,
                                       QuadratureOptions{1e-11, 1e-10, 40, 20'000'000});
      const double exact = smoothed_mean_square(p, t, a);
      CHECK(std::abs(q.value - exact) <= q.tail_allowance + 1e-8 * exact);
    }
  }
}

TEST_CASE("residual of the smoothed polynomial") {
  const PolySpec p = make_poly(1.0, 1e4, 100.0, 0.9);
  Lemma5Options opts;
  opts.T = 100.0;
  const auto res = lemma5_residual(p, 150.0, 1.0, opts);
  CHECK(res.holds);
  CHECK(res.residual < 0.2);
  CHECK(res.residual <= res.envelope + res.tol_ot + res.allowance);

  const PolySpec q = make_poly(0.5, 1e4, 100.0, 0.6);
  opts.T = 200.0;
  CHECK(lemma5_residual(q, 200.0, 0.5, opts).holds);

  CHECK_THROWS_AS(lemma5_residual(make_poly(1.0, 10.0, 6.0, 0.9), 150.0, 1.0, opts), InvalidArgument);
  CHECK_THROWS_AS(lemma5_residual(p, 150.0, 0.5, opts), InvalidArgument);
}
