#include <cmath>

#include "doctest.h"
#include "magvac/detail/quadrature.hpp"
#include "oracles.hpp"

using magvac::detail::integrate;
using magvac::detail::QuadOptions;

TEST_SUITE("quadrature") {

TEST_CASE("polynomials are exact") {
  const auto r = integrate([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 3.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(20.0 - 8.0 + 4.0).epsilon(1e-14));
}

TEST_CASE("gaussian and oscillatory integrands") {
  const auto g = integrate([](double x) { return std::exp(-x * x); }, -12.0, 12.0);
  CHECK(g.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  const auto osc = integrate([](double x) { return std::cos(40.0 * x) * std::exp(-x * x); }, -12.0, 12.0,
                             QuadOptions{1e-12, 1e-300, 4000});
  CHECK(std::abs(osc.value) < 1e-12);
}

TEST_CASE("tiny intervals keep a scaled error estimate") {
  // eV-scale support, values ~1e20: error must shrink with the interval
  const double a = 1e-6, b = 2e-6;
  const auto r = integrate([](double x) { return 1e20 * std::sin(1e6 * x); }, a, b);
  const double exact = 1e20 * (std::cos(1e6 * a) - std::cos(1e6 * b)) / 1e6;
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-10));
  CHECK(r.error < 1e-9 * std::abs(exact));
}

TEST_CASE("agrees with trapezoid refinement") {
  auto f = [](double x) { return x * x * std::exp(-x * x) / (1.0 + 0.3 * x); };
  const double t1 = oracle::trapezoid(f, 0.0, 9.0, 20000);
  const double t2 = oracle::trapezoid(f, 0.0, 9.0, 40000);
  const auto r = integrate(f, 0.0, 9.0);
  CHECK(t2 == doctest::Approx(t1).epsilon(1e-8));
  CHECK(r.value == doctest::Approx(t2).epsilon(1e-9));
}

TEST_CASE("empty interval and budget exhaustion") {
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); }, 0.0, 1.0,
                           QuadOptions{1e-15, 0.0, 8});
  CHECK_FALSE(r.converged);
  CHECK(r.intervals <= 8);
}

}
