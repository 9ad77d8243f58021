#include "magvac/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "magvac/errors.hpp"

namespace magvac::specfun {

namespace {

// B_{2k}, k = 1..8
constexpr std::array<double, 8> kBernoulliEven = {
    1.0 / 6.0,   -1.0 / 30.0,  1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,   -3617.0 / 510.0};

struct ZetaEstimate {
  double value;
  double last_correction;
  double noise;  // rounding floor from the head/integral cancellation
};

ZetaEstimate euler_maclaurin(double z, double q, std::size_t n_terms,
                             int order) {
  // sum_{n<N} (n+q)^-z, accumulated from the small end upward
  double head = 0.0;
  for (std::size_t n = n_terms; n-- > 0;) {
    head += std::pow(static_cast<double>(n) + q, -z);
  }
  const double a = static_cast<double>(n_terms) + q;
  const double a_pow = std::pow(a, -z);
  double value = head + a * a_pow / (z - 1.0) + 0.5 * a_pow;

  // B_{2k}/(2k)! * z(z+1)...(z+2k-2) * a^{-z-2k+1}
  double rising = z;         // z(z+1)...(z+2k-2)
  double factorial = 2.0;    // (2k)!
  double a_term = a_pow / a;  // a^{-z-1}
  double last = 0.0;
  for (int k = 1; k <= order; ++k) {
    last = kBernoulliEven[k - 1] / factorial * rising * a_term;
    value += last;
    rising *= (z + 2.0 * k - 1.0) * (z + 2.0 * k);
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    a_term /= a * a;
  }
  const double noise = 4.0 * std::numeric_limits<double>::epsilon() *
                      (std::abs(head) + std::abs(a * a_pow / (z - 1.0)));
  return {value, last, noise};
}

}  // namespace

double hurwitz_zeta(double z, double q, const HurwitzOptions& opt) {
  if (!(q > 0.0)) throw DomainError("hurwitz_zeta requires q > 0");
  if (z == 1.0) throw PoleError("hurwitz_zeta has a pole at z = 1");
  if (!std::isfinite(z)) throw DomainError("hurwitz_zeta requires finite z");
  if (opt.bernoulli_order < 1 ||
      opt.bernoulli_order > static_cast<int>(kBernoulliEven.size())) {
    throw ConfigError("hurwitz_zeta: bernoulli_order must be in 1..8");
  }

  // Below z = 1 the corrections fall off too slowly at low order and a long
  // head only cancels against the integral term, so use every correction.
  const int order = z < 1.0 ? static_cast<int>(kBernoulliEven.size())
                            : opt.bernoulli_order;
  std::size_t n_terms = opt.min_terms;
  ZetaEstimate est = euler_maclaurin(z, q, n_terms, order);
  while (std::abs(est.last_correction) >
         std::max(opt.rel_tol * std::abs(est.value), est.noise)) {
    if (n_terms >= opt.max_terms) {
      throw AccuracyError("hurwitz_zeta did not converge for z = " +
                          std::to_string(z));
    }
    n_terms *= 2;
    est = euler_maclaurin(z, q, n_terms, order);
  }
  return est.value;
}

double hermite(int n, double x, int n_max) {
  if (n < 0) throw DomainError("hermite requires n >= 0");
  if (n > n_max) {
    throw LimitError("hermite order " + std::to_string(n) +
                     " exceeds n_max = " + std::to_string(n_max));
  }
  double h_prev = 1.0;
  if (n == 0) return h_prev;
  double h = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * h - 2.0 * k * h_prev;
    h_prev = h;
    h = next;
  }
  return h;
}

SignedLog hermite_log(int n, double x, int n_max) {
  if (n < 0) throw DomainError("hermite requires n >= 0");
  if (n > n_max) {
    throw LimitError("hermite order " + std::to_string(n) +
                     " exceeds n_max = " + std::to_string(n_max));
  }
  // Same recurrence, with both carried values rescaled whenever they grow
  // large; the dropped scale is kept in log_scale.
  constexpr double kRescaleAbove = 1e150;
  double log_scale = 0.0;
  double h_prev = 1.0;
  double h = n == 0 ? 1.0 : 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * h - 2.0 * k * h_prev;
    h_prev = h;
    h = next;
    const double mag = std::max(std::abs(h), std::abs(h_prev));
    if (mag > kRescaleAbove) {
      h /= mag;
      h_prev /= mag;
      log_scale += std::log(mag);
    }
  }
  if (h == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {std::log(std::abs(h)) + log_scale, h > 0.0 ? 1 : -1};
}

double log_factorial(long long n) {
  if (n < 0) throw DomainError("log_factorial requires n >= 0");
  if (n < 256) {
    double s = 0.0;
    for (long long k = 2; k <= n; ++k) s += std::log(static_cast<double>(k));
    return s;
  }
  // Stirling series; truncation error < 1e-17 relative for n >= 256
  const double x = static_cast<double>(n) + 1.0;
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12.0 -
             inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * M_PI) + series;
}

double log_weight(int n) {
  if (n < 0) throw DomainError("log_weight requires n >= 0");
  return n * std::log(2.0) + log_factorial(n);
}

}  // namespace magvac::specfun
