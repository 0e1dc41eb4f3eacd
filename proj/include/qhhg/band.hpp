#pragma once

#include <string>
#include <vector>

namespace qhhg {

/// One-dimensional single-band crystal with dispersion
/// eps(q) = sum_l b_l cos(a l q).
class BandModel {
 public:
  /// b[l-1] holds b_l. Throws std::invalid_argument on a <= 0, empty or
  /// non-finite b, an asymmetric occupied set, |q| > pi/a, or spin < 1.
  BandModel(double a, std::vector<double> b, std::vector<double> occupied_q,
            int spin_degeneracy = 2);

  /// ZnO parameters with the five-state occupied set and spin 2.
  static BandModel zno();

  /// {0, +-dq, ..., +-states_per_side*dq} with dq = 2 pi / (cells * a).
  static std::vector<double> symmetric_occupation(double a, int states_per_side,
                                                  int cells);

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] const std::vector<double>& b() const noexcept { return b_; }
  [[nodiscard]] const std::vector<double>& occupied_q() const noexcept {
    return occupied_q_;
  }
  [[nodiscard]] int spin_degeneracy() const noexcept { return spin_; }
  [[nodiscard]] int l_max() const noexcept { return static_cast<int>(b_.size()); }
  [[nodiscard]] double b(int l) const { return b_.at(static_cast<std::size_t>(l - 1)); }

  /// Stable hex digest of the parameters, for output metadata.
  [[nodiscard]] std::string hash() const;

 private:
  double a_;
  std::vector<double> b_;
  std::vector<double> occupied_q_;
  int spin_;
};

double dispersion(const BandModel& band, double q);

/// spin * sum_{q occupied} cos(a l q).
double occupied_cos_sum(const BandModel& band, int l);

/// C_l = l b_l occupied_cos_sum(l); 1 <= l <= l_max.
double c_coefficient(const BandModel& band, int l);

/// log K_n with K_n = (sum_l l^n C_l)^2; -inf when the sum vanishes.
double log_k_constant(const BandModel& band, int n);

/// K_n; throws NumericalError if it does not fit in a double.
double k_constant(const BandModel& band, int n);

/// 2 a g0 / sqrt(omega0).
double lattice_coupling(const BandModel& band, double g0, double omega0);

}  // namespace qhhg
