// Independent reference computations used only by the tests. Kept naive on
// purpose: plain sums, explicit polynomials, fixed-grid trapezoids.
#ifndef MAGVAC_TEST_ORACLES_HPP
#define MAGVAC_TEST_ORACLES_HPP

#include <complex>
#include <cstdint>
#include <functional>

namespace oracle {

// sum_{n<N} (n+q)^-z plus the integral tail (N+q)^(1-z)/(z-1), z > 1
double hurwitz_partial_sum(double z, double q, std::int64_t N);

// H_n(x) from the explicit polynomials, n <= 6
double hermite_explicit(int n, double x);

// n_bar^n e^-n_bar / n! as a running product
double poisson_product(double n_bar, int n);

// composite trapezoid with N panels
double trapezoid(const std::function<double(double)>& f, double a, double b, int N);

// int dx e^{-i k x} e^{-xi^2/2} H_n(xi), xi = sqrt(eB)(x - p_y/eB), on a
// fixed wide grid
std::complex<double> fourier_hermite_trapezoid(int n, double k_x, double eB,
                                               double p_y, int N = 20000);

// golden-section search for the maximum of a unimodal f on [a, b]
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol);

// upper regularized incomplete gamma via series / continued fraction,
// for chi-square p-values: Q(k/2, x/2)
double chi2_sf(double x, int dof);

}  // namespace oracle

#endif
