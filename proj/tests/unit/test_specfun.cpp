#include <cmath>

#include "doctest.h"
#include "frozen.hpp"
#include "magvac/errors.hpp"
#include "magvac/specfun.hpp"
#include "oracles.hpp"

using namespace magvac;
using namespace magvac::specfun;

TEST_SUITE("specfun") {

TEST_CASE("gamma pole bookkeeping") {
  constexpr auto g = gamma_at_minus_half_eps();
  CHECK(g.pole_coeff == -2.0);
  CHECK(g.sign_after_absorption() == -1.0);
}

TEST_CASE("hurwitz zeta at z = -1 is -B2(q)/2") {
  CHECK(hurwitz_zeta(-1.0, 1.0) == doctest::Approx(-1.0 / 12.0).epsilon(1e-15));
  CHECK(hurwitz_zeta(-1.0, 2.5) == doctest::Approx(frozen::kZetaMinus1At2p5).epsilon(1e-15));
  for (double q : {0.1, 0.5, 1.0, 2.5, 10.0, 100.0, 1e-3}) {
    CHECK(std::abs(hurwitz_zeta(-1.0, q) + 0.5 * bernoulli2(q)) < 1e-12);
  }
}

TEST_CASE("hurwitz zeta against frozen values and direct sums") {
  for (const auto& row : frozen::kHurwitz) {
    CAPTURE(row.z);
    CAPTURE(row.q);
    CHECK(hurwitz_zeta(row.z, row.q) == doctest::Approx(row.value).epsilon(1e-13));
    CHECK(hurwitz_zeta(row.z, row.q) ==
          doctest::Approx(oracle::hurwitz_partial_sum(row.z, row.q, 1000000)).epsilon(1e-9));
  }
  CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-14));
}

TEST_CASE("hurwitz zeta continued to negative non-integer z") {
  for (const auto& row : frozen::kHurwitzNegative) {
    CAPTURE(row.z);
    CAPTURE(row.q);
    CHECK(hurwitz_zeta(row.z, row.q) == doctest::Approx(row.value).epsilon(1e-9));
  }
}

TEST_CASE("hurwitz zeta at other non-positive integers") {
  // zeta(0, q) = 1/2 - q, zeta(-2, q) = -B3(q)/3
  for (double q : {0.2, 1.0, 7.5}) {
    CHECK(hurwitz_zeta(0.0, q) == doctest::Approx(0.5 - q).epsilon(1e-13));
    const double b3 = q * q * q - 1.5 * q * q + 0.5 * q;
    CHECK(std::abs(hurwitz_zeta(-2.0, q) + b3 / 3.0) < 1e-11);
  }
}

TEST_CASE("hurwitz zeta errors") {
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 0.0), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, -1.0), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(1.0, 1.0), PoleError);
}

TEST_CASE("bernoulli2") {
  CHECK(bernoulli2(0.0) == doctest::Approx(1.0 / 6.0));
  CHECK(bernoulli2(0.5) == doctest::Approx(-1.0 / 12.0));
  CHECK(bernoulli2(1.0) == doctest::Approx(1.0 / 6.0));
  for (double q : {0.1, 0.3, 0.77}) CHECK(bernoulli2(q) == doctest::Approx(bernoulli2(1.0 - q)));
  constexpr auto b = bernoulli2_coefficients();
  CHECK(b[0] + b[1] * 2.5 + b[2] * 6.25 == doctest::Approx(bernoulli2(2.5)));
}

TEST_CASE("hermite") {
  CHECK(hermite(0, 3.3) == 1.0);
  CHECK(hermite(1, 0.7) == doctest::Approx(1.4));
  CHECK(hermite(3, 0.5) == doctest::Approx(-5.0));
  for (int n = 0; n <= 6; ++n) {
    for (double x : {-2.1, -0.3, 0.0, 0.9, 3.7}) {
      CHECK(hermite(n, x) == doctest::Approx(oracle::hermite_explicit(n, x)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(hermite(201, 1.0), LimitError);
  CHECK_THROWS_AS(hermite(-1, 1.0), DomainError);
}

TEST_CASE("hermite_log matches and stays finite") {
  for (int n : {1, 4, 9, 30}) {
    for (double x : {-1.3, 0.4, 2.2}) {
      const auto h = hermite_log(n, x);
      const double direct = hermite(n, x);
      CHECK(h.sign == (direct > 0 ? 1 : -1));
      CHECK(h.log_abs == doctest::Approx(std::log(std::abs(direct))).epsilon(1e-12));
    }
  }
  CHECK(hermite_log(3, 0.0).sign == 0);
  // far beyond double range
  const auto big = hermite_log(200, 40.0);
  CHECK(std::isfinite(big.log_abs));
  CHECK(big.log_abs > 700.0);
}

TEST_CASE("log_weight") {
  CHECK(log_weight(0) == 0.0);
  CHECK(log_weight(1) == doctest::Approx(std::log(2.0)));
  CHECK(log_weight(10) == doctest::Approx(frozen::kLogWeight10).epsilon(1e-14));
  double direct = 0.0;
  for (int k = 1; k <= 300; ++k) direct += std::log(2.0 * k);
  CHECK(log_weight(300) == doctest::Approx(direct).epsilon(1e-13));
  CHECK(log_factorial(1000) == doctest::Approx(std::lgamma(1001.0)).epsilon(1e-14));
}

}
