#include "qhhg/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qhhg {

namespace {

double series(int n, double x) {
  const double h = 0.5 * x;
  const double q = h * h;
  const double log_first = n * std::log(h) - std::lgamma(n + 1.0);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= -q / (k * static_cast<double>(n + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return std::exp(log_first) * sum;
}

double hankel(int n, double x) {
  const double mu = 4.0 * n * static_cast<double>(n);
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > prev) break;  // asymptotic series started to diverge
    // terms alternate between Q (odd k) and P (even k) with sign pattern
    // +, -, -, +, + ... on (Q1, P2, Q3, P4, ...)
    const int m = k % 4;
    if (k % 2 == 1) {
      q += (m == 1 ? term : -term);
    } else {
      p += (m == 2 ? -term : term);
    }
    prev = mag;
    if (mag < 1e-17) break;
  }
  const double chi = x - (0.5 * n + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double miller(int n, double x) {
  constexpr double kBig = 1e250;
  constexpr double kScale = 1e-250;
  const double top = std::max(static_cast<double>(n), x);
  int m = static_cast<int>(top + 20.0 + std::sqrt(60.0 * top) + 15.0 * std::cbrt(top));
  if (m % 2 == 1) ++m;
  double above = 0.0;
  double cur = 1e-30;
  double norm = 0.0;
  double result = (m == n) ? cur : 0.0;
  int result_rescales = 0;
  const double two_over_x = 2.0 / x;
  for (int k = m; k > 0; --k) {
    const double below = k * two_over_x * cur - above;
    above = cur;
    cur = below;
    if (std::abs(cur) > kBig) {
      cur *= kScale;
      above *= kScale;
      norm *= kScale;
      if (k - 1 < n) ++result_rescales;
    }
    if (k - 1 == n) result = cur;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0 ? 1.0 : 2.0) * cur;
  }
  if (result == 0.0) return 0.0;
  const double log_mag = std::log(std::abs(result)) +
                         result_rescales * std::log(kScale) - std::log(std::abs(norm));
  const double sign = (result < 0.0) != (norm < 0.0) ? -1.0 : 1.0;
  return sign * std::exp(log_mag);
}

}  // namespace

double bessel_j(int n, double x) {
  if (n < 0 || n > kBesselMaxOrder || !std::isfinite(x) || std::abs(x) > kBesselMaxArgument) {
    throw std::domain_error("bessel_j: (n, x) = (" + std::to_string(n) + ", " +
                            std::to_string(x) + ") outside the supported range");
  }
  if (x < 0.0) return (n % 2 == 0 ? 1.0 : -1.0) * bessel_j(n, -x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x <= 2.0 * std::sqrt(n + 1.0)) return series(n, x);
  if (x >= std::max(50.0, static_cast<double>(n) * n)) return hankel(n, x);
  return miller(n, x);
}

double bessel_remainder_bound(int n, double x) {
  if (n < 1 || !(x >= 0.0)) throw std::invalid_argument("bessel_remainder_bound: need n >= 1, x >= 0");
  if (x == 0.0) return 0.0;
  return std::exp(-0.5 * std::numbers::ln2 + (n + 1.0) * std::log(x) - std::lgamma(n + 2.0));
}

double bessel_i0_scaled(double z) {
  z = std::abs(z);
  if (z < 30.0) {
    const double q = 0.25 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term <= 1e-17 * sum) break;
    }
    return std::exp(-z) * sum;
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd / (k * 8.0 * z);
    if (next > term) break;
    term = next;
    sum += term;
    if (term <= 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

}  // namespace qhhg
