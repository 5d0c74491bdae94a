#include "zetalab/special_fns.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zetalab/errors.hpp"

namespace zetalab {
namespace {

using cplx = std::complex<double>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMinTerms = 20;
constexpr std::size_t kMaxTerms = 50'000'000;
constexpr int kCorrections = 8;

// B_{2k} / (2k)! for k = 1..9; the ninth is the first omitted term.
constexpr std::array<double, 9> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
};

// log of the Euler-Maclaurin remainder bound after kCorrections terms.
double log_remainder_bound(cplx s, double n) {
  double log_poch = 0.0;
  for (int j = 0; j <= 2 * kCorrections; ++j) log_poch += std::log(std::abs(s + double(j)));
  const double m_tail = 2.0 * kCorrections + 1.0;
  return std::log(std::abs(kBernoulliOverFactorial[kCorrections])) + log_poch +
         std::log(std::abs(s + m_tail) / (s.real() + m_tail)) - (s.real() + m_tail) * std::log(n);
}

struct TailPart {
  cplx value;
  double bound;
};

// N^{1-s}/(s-1) + N^{-s}/2 + Bernoulli corrections, plus the remainder bound.
TailPart em_tail(cplx s, std::size_t terms) {
  const double n = static_cast<double>(terms);
  const double log_n = std::log(n);
  const cplx n_pow = std::exp(-s * log_n);  // N^{-s}
  cplx value = n * n_pow / (s - 1.0) + 0.5 * n_pow;
  cplx poch = s;
  cplx power = n_pow / n;  // N^{-s-1}
  for (int k = 1; k <= kCorrections; ++k) {
    value += kBernoulliOverFactorial[k - 1] * poch * power;
    poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
    power /= n * n;
  }
  return {value, std::exp(log_remainder_bound(s, n))};
}

double rounding_estimate(double sigma, double t, std::size_t terms) {
  // Phase error of t log n dominates; errors add like a random walk.
  double sq = 0.0;
  for (std::size_t n = 1; n < std::min<std::size_t>(terms, 64); ++n) sq += std::pow(double(n), -2.0 * sigma);
  if (terms > 64) {
    const double a = 64.0, b = static_cast<double>(terms);
    const double e = 1.0 - 2.0 * sigma;
    sq += std::abs(e) < 1e-12 ? std::log(b / a) : (std::pow(b, e) - std::pow(a, e)) / e;
  }
  return 2.0 * kEps * (1.0 + std::abs(t) * std::log(double(terms))) * std::sqrt(sq);
}

void check_point(EvalPoint p, double target_err) {
  require(std::isfinite(p.sigma) && std::isfinite(p.t), "finite evaluation point");
  require(target_err > 0.0, "target_err > 0");
  require(p.sigma >= kStripMin, "sigma >= " + std::to_string(kStripMin));
  if (p.t == 0.0 && p.sigma == 1.0) throw InvalidArgument("zeta has a pole at s = 1");
}

}  // namespace

std::size_t zeta_terms(EvalPoint p, double target_err) {
  const cplx s(p.sigma, std::abs(p.t));
  const double log_target = std::log(target_err);
  double n = static_cast<double>(kMinTerms);
  while (log_remainder_bound(s, n) > log_target) {
    n = std::ceil(n * 1.1);
    if (n > static_cast<double>(kMaxTerms)) {
      throw NonConvergence("zeta: Euler-Maclaurin needs more than " + std::to_string(kMaxTerms) +
                           " terms for target_err " + std::to_string(target_err));
    }
  }
  return static_cast<std::size_t>(n);
}

ComplexValue zeta(EvalPoint p, double target_err) {
  check_point(p, target_err);
  if (p.t < 0.0) return zeta({p.sigma, -p.t}, target_err).conj();

  const std::size_t terms = zeta_terms(p, target_err);
  const cplx s(p.sigma, p.t);
  // Neumaier-compensated sum of n^{-s}, n < N.
  double sum_re = 0.0, sum_im = 0.0, c_re = 0.0, c_im = 0.0;
  auto add = [](double& sum, double& comp, double x) {
    const double tmp = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - tmp) + x;
    else
      comp += (x - tmp) + sum;
    sum = tmp;
  };
  for (std::size_t n = 1; n < terms; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const double amp = std::exp(-p.sigma * ln);
    const double phase = p.t * ln;
    add(sum_re, c_re, amp * std::cos(phase));
    add(sum_im, c_im, -amp * std::sin(phase));
  }
  const TailPart tail = em_tail(s, terms);
  const cplx total = cplx(sum_re + c_re, sum_im + c_im) + tail.value;
  return {total.real(), total.imag(), tail.bound + rounding_estimate(p.sigma, p.t, terms)};
}

std::vector<ComplexValue> zeta_lattice(double sigma, double t0, double step, std::size_t count,
                                       double target_err) {
  std::vector<ComplexValue> out(count);
  if (count == 0) return out;
  const double t_end = t0 + step * static_cast<double>(count - 1);
  check_point({sigma, t0}, target_err);
  check_point({sigma, t_end}, target_err);
  for (std::size_t j = 0; j < count; ++j) {
    if (sigma == 1.0 && t0 + step * static_cast<double>(j) == 0.0)
      throw InvalidArgument("zeta has a pole at s = 1");
  }
  const double t_max = std::max(std::abs(t0), std::abs(t_end));
  const std::size_t terms = zeta_terms({sigma, t_max}, target_err);
  const std::size_t m = terms - 1;  // n = 1..N-1 stored at index n-1

  std::vector<double> log_n(m), amp(m), rot_re(m), rot_im(m), cur_re(m), cur_im(m);
  for (std::size_t i = 0; i < m; ++i) {
    log_n[i] = std::log(static_cast<double>(i + 1));
    amp[i] = std::exp(-sigma * log_n[i]);
    rot_re[i] = std::cos(step * log_n[i]);
    rot_im[i] = -std::sin(step * log_n[i]);
  }
  constexpr std::size_t kReseed = 64;
  constexpr std::size_t kBlock = 256;
  const double round_err = rounding_estimate(sigma, t_max, terms) * 2.0;

  for (std::size_t j = 0; j < count; ++j) {
    const double t = t0 + step * static_cast<double>(j);
    if (j % kReseed == 0) {
      for (std::size_t i = 0; i < m; ++i) {
        cur_re[i] = amp[i] * std::cos(t * log_n[i]);
        cur_im[i] = -amp[i] * std::sin(t * log_n[i]);
      }
    }
    double sum_re = 0.0, sum_im = 0.0;
    for (std::size_t b = 0; b < m; b += kBlock) {
      const std::size_t e = std::min(m, b + kBlock);
      double block_re = 0.0, block_im = 0.0;
      for (std::size_t i = b; i < e; ++i) {
        block_re += cur_re[i];
        block_im += cur_im[i];
      }
      sum_re += block_re;
      sum_im += block_im;
    }
    const TailPart tail = em_tail(cplx(sigma, t), terms);
    const cplx total = cplx(sum_re, sum_im) + tail.value;
    out[j] = {total.real(), total.imag(), tail.bound + round_err};
    for (std::size_t i = 0; i < m; ++i) {
      const double re = cur_re[i] * rot_re[i] - cur_im[i] * rot_im[i];
      const double im = cur_re[i] * rot_im[i] + cur_im[i] * rot_re[i];
      cur_re[i] = re;
      cur_im[i] = im;
    }
  }
  return out;
}

std::complex<double> log_gamma(std::complex<double> z) {
  require(z.real() > 0.0, "log_gamma needs Re z > 0");
  // Recurrence up to |z| >= 15, then Stirling with eight terms.
  cplx shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  constexpr std::array<double, 8> kStirling = {
      1.0 / 12.0,   -1.0 / 360.0,          1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0, -691.0 / 360360.0,     1.0 / 156.0,  -3617.0 / 122400.0,
  };
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (z - 0.5) * std::log(z) - z + half_log_2pi + series - shift;
}

LogValue log_xi(EvalPoint p, double target_err) {
  require(std::isfinite(p.sigma) && std::isfinite(p.t), "finite evaluation point");
  if (p.t == 0.0 && (p.sigma == 0.0 || p.sigma == 1.0)) return {cplx(0.0, 0.0), 0.0};
  if (p.t < 0.0) {
    LogValue v = log_xi({p.sigma, -p.t}, target_err);
    v.log = std::conj(v.log);
    return v;
  }
  if (p.sigma < kStripMin) {
    // xi(s) = xi(1 - s) and xi(conj s) = conj xi(s).
    LogValue v = log_xi({1.0 - p.sigma, p.t}, target_err);
    v.log = std::conj(v.log);
    return v;
  }
  const cplx s(p.sigma, p.t);
  const ComplexValue z = zeta(p, target_err);
  const double z_abs = z.abs();
  const cplx log_zeta = z_abs > 0.0 ? std::log(z.value()) : cplx(-std::numeric_limits<double>::infinity(), 0.0);
  const cplx lg = log_gamma(0.5 * s);
  const cplx log_val = std::log(s) + std::log(s - 1.0) - 0.5 * s * std::log(std::numbers::pi) + lg + log_zeta;
  // Cancellation inside log Gamma at height t costs about eps * |s| log |s|.
  const double gamma_err = 8.0 * kEps * (1.0 + std::abs(s) * std::log(2.0 + std::abs(s)));
  const double rel = (z_abs > 0.0 ? z.abs_err / z_abs : std::numeric_limits<double>::infinity()) + gamma_err;
  return {log_val, rel};
}

ComplexValue xi(EvalPoint p, double target_err) {
  const LogValue lv = log_xi(p, target_err);
  const cplx v = std::exp(lv.log);
  const double mag = std::abs(v);
  return {v.real(), v.imag(), std::isfinite(lv.rel_err) ? mag * lv.rel_err : 0.0};
}

ContinuedLog log_zeta_continued(EvalPoint p, double target_err, double initial_step) {
  require(p.sigma > 0.5, "sigma > 1/2 for the branch-tracked power");
  require(initial_step > 0.0, "initial_step > 0");
  if (p.t < 0.0) {
    ContinuedLog v = log_zeta_continued({p.sigma, -p.t}, target_err, initial_step);
    v.log = std::conj(v.log);
    return v;
  }
  constexpr double kStart = 3.0;
  constexpr double kMinStep = 1e-7;
  if (p.sigma >= kStart) {
    const ComplexValue z = zeta(p, target_err);
    return {std::log(z.value()), z.abs_err / z.abs(), 0};
  }
  if (p.t == 0.0 && p.sigma <= 1.0) {
    throw BranchTrackingFailure("tracking path at t = 0 passes through the pole at s = 1");
  }
  ComplexValue z = zeta({kStart, p.t}, target_err);
  cplx log_val = std::log(z.value());
  double sigma = kStart;
  double step = initial_step;
  std::size_t steps = 0;
  while (sigma > p.sigma) {
    const double h = std::min(step, sigma - p.sigma);
    const double next_sigma = (h == sigma - p.sigma) ? p.sigma : sigma - h;
    const ComplexValue next = zeta({next_sigma, p.t}, target_err);
    const double mag = next.abs();
    const double jump = mag > 0.0 ? std::remainder(std::arg(next.value()) - log_val.imag(), 2.0 * std::numbers::pi)
                                  : std::numbers::pi;
    if (std::abs(jump) >= 0.5 * std::numbers::pi) {
      step = 0.5 * h;
      if (step < kMinStep) {
        throw BranchTrackingFailure("argument of zeta jumps by >= pi/2 below step " + std::to_string(kMinStep) +
                                    " near sigma = " + std::to_string(sigma) + ", t = " + std::to_string(p.t));
      }
      continue;
    }
    log_val = cplx(std::log(mag), log_val.imag() + jump);
    sigma = next_sigma;
    z = next;
    step = std::min(initial_step, 2.0 * h);
    ++steps;
  }
  return {log_val, z.abs_err / z.abs(), steps};
}

ComplexValue zeta_pow(EvalPoint p, double r, double target_err) {
  require(r > 0.0, "r > 0");
  const ContinuedLog lz = log_zeta_continued(p, target_err);
  const cplx v = std::exp(r * lz.log);
  return {v.real(), v.imag(), std::abs(v) * r * lz.abs_err};
}

}  // namespace zetalab
