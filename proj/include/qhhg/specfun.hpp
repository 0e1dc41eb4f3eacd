#pragma once

namespace qhhg {

/// Largest order and argument accepted by bessel_j.
inline constexpr int kBesselMaxOrder = 2000;
inline constexpr double kBesselMaxArgument = 5000.0;

/// Bessel function of the first kind J_n(x), 0 <= n <= 2000, |x| <= 5000.
/// Ascending series for small x, Hankel asymptotics for x >= max(50, n^2),
/// Miller downward recurrence in between. Throws std::domain_error outside
/// the supported range.
double bessel_j(int n, double x);

/// (1/sqrt 2) x^(n+1) / (n+1)!, an upper bound on |J_n(x) - x^n/(n! 2^n)|.
double bessel_remainder_bound(int n, double x);

/// exp(-|z|) I_0(z).
double bessel_i0_scaled(double z);

}  // namespace qhhg
