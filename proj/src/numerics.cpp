#include "qhhg/numerics.hpp"

#include <numbers>
#include <string>

namespace qhhg {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) {
        // one more evaluation at the converged node for the weight
        p1 = 1.0;
        p2 = 0.0;
        for (int k = 1; k <= n; ++k) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussLegendreRule gauss_legendre(int n, double lo, double hi) {
  GaussLegendreRule rule = gauss_legendre(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

double log_gamma_ratio(double z, double h) {
  if (!(z > 0.0) || !(z + h > 0.0)) {
    throw std::invalid_argument("log_gamma_ratio: arguments must be positive");
  }
  if (z < 10.0 || z + h < 10.0) return std::lgamma(z + h) - std::lgamma(z);
  // Stirling difference; Bernoulli terms B_{2k} / (2k (2k-1)).
  static constexpr double kCoeff[] = {1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0,
                                      -1.0 / 1680.0, 1.0 / 1188.0};
  const double zh = z + h;
  double result = (z - 0.5) * std::log1p(h / z) + h * std::log(zh) - h;
  double pz = 1.0 / z;
  double pzh = 1.0 / zh;
  const double z2 = pz * pz;
  const double zh2 = pzh * pzh;
  for (double c : kCoeff) {
    result += c * (pzh - pz);
    pz *= z2;
    pzh *= zh2;
  }
  return result;
}

double log_cosh(double r) {
  const double x = std::abs(r);
  return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}

}  // namespace qhhg
