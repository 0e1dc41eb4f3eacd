#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qhhg {

/// Raised when a quadrature or special-function evaluation cannot deliver a
/// finite, trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Neumaier (improved Kahan) summation. Order of add() calls fixes the result
/// bit-for-bit, which the deterministic reductions rely on.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Streaming log-sum-exp of positive terms given by their logarithms.
class LogSumExp {
 public:
  void add(double log_term) noexcept {
    if (log_term == -std::numeric_limits<double>::infinity()) return;
    if (log_term <= max_) {
      acc_.add(std::exp(log_term - max_));
    } else {
      const double rescale = std::exp(max_ - log_term);
      NeumaierSum fresh;
      fresh.add(acc_.value() * rescale);
      fresh.add(1.0);
      acc_ = fresh;
      max_ = log_term;
    }
  }
  [[nodiscard]] double value() const noexcept {
    if (max_ == -std::numeric_limits<double>::infinity()) return max_;
    return max_ + std::log(acc_.value());
  }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  NeumaierSum acc_;
};

/// Gauss-Legendre rule on [-1, 1]; nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

/// Maps a [-1, 1] rule onto [lo, hi].
GaussLegendreRule gauss_legendre(int n, double lo, double hi);

/// log Gamma(z + h) - log Gamma(z) for z > 0, accurate for very large z where
/// the two log-gammas individually lose all relative precision.
double log_gamma_ratio(double z, double h);

/// log(cosh r) without overflow.
double log_cosh(double r);

}  // namespace qhhg
