#ifndef MAGVAC_SPECFUN_HPP
#define MAGVAC_SPECFUN_HPP

#include <array>
#include <cstddef>

namespace magvac::specfun {

/// Laurent bookkeeping for Gamma(-eps/2) near eps = 0, written as
/// -(2/eps + const). The constant is carried symbolically and never given
/// a number; only the pole coefficient (-2) and the overall sign are used.
struct PoleExpansion {
  double pole_coeff = -2.0;  // coefficient of 1/eps

  /// Gamma(-eps/2) = sign * Z3 with Z3 = 2/eps + const absorbed into the
  /// charge; the sign is what survives renormalization.
  constexpr double sign_after_absorption() const {
    return pole_coeff < 0.0 ? -1.0 : 1.0;
  }
};

/// Gamma(-eps/2) as used in dimensional regularization.
constexpr PoleExpansion gamma_at_minus_half_eps() { return PoleExpansion{}; }

struct HurwitzOptions {
  /// Number of Bernoulli corrections B_2 .. B_{2*order} (1..8). For z < 1
  /// all 8 are used regardless.
  int bernoulli_order = 2;
  /// Leading-sum length is doubled until the last correction falls below
  /// rel_tol of the result, or below the rounding floor of the head sum.
  double rel_tol = 1e-14;
  std::size_t min_terms = 8;
  std::size_t max_terms = std::size_t{1} << 22;
};

/// Hurwitz zeta sum_{n>=0} (n+q)^-z for real z != 1 and q > 0, continued
/// to z < 1 through Euler-Maclaurin. Exact (up to rounding) at z = 0, -1, -2
/// with the default order.
double hurwitz_zeta(double z, double q, const HurwitzOptions& opt = {});

/// B_2(q) = q^2 - q + 1/6.
constexpr double bernoulli2(double q) { return q * q - q + 1.0 / 6.0; }

/// Coefficients {c0, c1, c2} of B_2(q) = c0 + c1 q + c2 q^2.
constexpr std::array<double, 3> bernoulli2_coefficients() {
  return {1.0 / 6.0, -1.0, 1.0};
}

inline constexpr int kDefaultHermiteMax = 200;

/// Physicists' Hermite polynomial by the three-term recurrence.
/// Throws LimitError for n > n_max; the value may overflow to inf for huge
/// |x|, use hermite_log there.
double hermite(int n, double x, int n_max = kDefaultHermiteMax);

/// log|H_n(x)| with its sign; sign 0 means H_n(x) == 0 (log_abs = -inf).
struct SignedLog {
  double log_abs;
  int sign;
};

SignedLog hermite_log(int n, double x, int n_max = kDefaultHermiteMax);

/// log n!, summed directly for small n and by the Stirling series beyond.
double log_factorial(long long n);

/// log(2^n n!).
double log_weight(int n);

}  // namespace magvac::specfun

#endif  // MAGVAC_SPECFUN_HPP
