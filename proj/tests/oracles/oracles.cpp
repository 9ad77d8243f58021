#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

double hurwitz_partial_sum(double z, double q, std::int64_t N) {
  double s = 0.0;
  for (std::int64_t n = N - 1; n >= 0; --n) s += std::pow(static_cast<double>(n) + q, -z);
  const double a = static_cast<double>(N) + q;
  return s + std::pow(a, 1.0 - z) / (z - 1.0) + 0.5 * std::pow(a, -z);
}

double hermite_explicit(int n, double x) {
  const double x2 = x * x;
  switch (n) {
    case 0: return 1.0;
    case 1: return 2.0 * x;
    case 2: return 4.0 * x2 - 2.0;
    case 3: return 8.0 * x2 * x - 12.0 * x;
    case 4: return 16.0 * x2 * x2 - 48.0 * x2 + 12.0;
    case 5: return 32.0 * x2 * x2 * x - 160.0 * x2 * x + 120.0 * x;
    case 6: return 64.0 * x2 * x2 * x2 - 480.0 * x2 * x2 + 720.0 * x2 - 120.0;
    default: throw std::out_of_range("hermite_explicit: n <= 6");
  }
}

double poisson_product(double n_bar, int n) {
  double p = std::exp(-n_bar);
  for (int k = 1; k <= n; ++k) p *= n_bar / k;
  return p;
}

double trapezoid(const std::function<double(double)>& f, double a, double b, int N) {
  const double h = (b - a) / N;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < N; ++i) s += f(a + h * i);
  return s * h;
}

std::complex<double> fourier_hermite_trapezoid(int n, double k_x, double eB,
                                               double p_y, int N) {
  const double s = std::sqrt(eB);
  const double x0 = p_y / eB;
  const double half = 20.0 / s;
  auto re = [&](double x) {
    const double xi = s * (x - x0);
    return std::cos(k_x * x) * std::exp(-0.5 * xi * xi) * hermite_explicit(n, xi);
  };
  auto im = [&](double x) {
    const double xi = s * (x - x0);
    return -std::sin(k_x * x) * std::exp(-0.5 * xi * xi) * hermite_explicit(n, xi);
  };
  return {trapezoid(re, x0 - half, x0 + half, N), trapezoid(im, x0 - half, x0 + half, N)};
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

namespace {
// P(a, x) by series, Q(a, x) by Lentz continued fraction (Numerical Recipes 6.2)
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a, term = sum;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}
}  // namespace

double chi2_sf(double x, int dof) {
  const double a = 0.5 * dof, y = 0.5 * x;
  if (y <= 0.0) return 1.0;
  return y < a + 1.0 ? 1.0 - gamma_p_series(a, y) : gamma_q_cf(a, y);
}

}  // namespace oracle
