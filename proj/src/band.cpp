#include "qhhg/band.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qhhg/numerics.hpp"

namespace qhhg {

BandModel::BandModel(double a, std::vector<double> b, std::vector<double> occupied_q,
                     int spin_degeneracy)
    : a_(a), b_(std::move(b)), occupied_q_(std::move(occupied_q)), spin_(spin_degeneracy) {
  if (!(a_ > 0.0) || !std::isfinite(a_)) {
    throw std::invalid_argument("band: lattice constant must be positive and finite");
  }
  if (b_.empty()) throw std::invalid_argument("band: need at least one coefficient b_l");
  for (double v : b_) {
    if (!std::isfinite(v)) throw std::invalid_argument("band: b_l must be finite");
  }
  if (spin_ < 1) throw std::invalid_argument("band: spin degeneracy must be >= 1");
  if (occupied_q_.empty()) throw std::invalid_argument("band: occupied set is empty");
  const double zone = std::numbers::pi / a_;
  const double tol = 1e-12 * zone;
  for (double q : occupied_q_) {
    if (!std::isfinite(q) || std::abs(q) > zone + tol) {
      throw std::invalid_argument("band: occupied q outside the first Brillouin zone");
    }
    const bool mirrored = std::any_of(occupied_q_.begin(), occupied_q_.end(),
                                      [&](double p) { return std::abs(p + q) <= tol; });
    if (!mirrored) throw std::invalid_argument("band: occupied set is not symmetric about 0");
  }
}

std::vector<double> BandModel::symmetric_occupation(double a, int states_per_side, int cells) {
  if (!(a > 0.0) || states_per_side < 0 || cells < 1) {
    throw std::invalid_argument("symmetric_occupation: bad arguments");
  }
  const double dq = 2.0 * std::numbers::pi / (cells * a);
  std::vector<double> q{0.0};
  for (int k = 1; k <= states_per_side; ++k) {
    q.push_back(k * dq);
    q.push_back(-k * dq);
  }
  return q;
}

BandModel BandModel::zno() {
  const double a = 5.32;
  return BandModel(a, {-0.0814, -0.0024, -0.0048, -0.0003, -0.0009},
                   symmetric_occupation(a, 2, 10), 2);
}

std::string BandModel::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  mix(a_);
  for (double v : b_) mix(v);
  for (double q : occupied_q_) mix(q);
  mix(static_cast<double>(spin_));
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

double dispersion(const BandModel& band, double q) {
  NeumaierSum s;
  for (int l = 1; l <= band.l_max(); ++l) s.add(band.b(l) * std::cos(band.a() * l * q));
  return s.value();
}

double occupied_cos_sum(const BandModel& band, int l) {
  if (l < 0) throw std::invalid_argument("occupied_cos_sum: l must be >= 0");
  NeumaierSum s;
  for (double q : band.occupied_q()) s.add(std::cos(band.a() * l * q));
  return band.spin_degeneracy() * s.value();
}

double c_coefficient(const BandModel& band, int l) {
  if (l < 1 || l > band.l_max()) throw std::out_of_range("c_coefficient: l out of range");
  return l * band.b(l) * occupied_cos_sum(band, l);
}

double log_k_constant(const BandModel& band, int n) {
  if (n < 1) throw std::invalid_argument("k_constant: n must be >= 1");
  // Factor l_max^n out so the partial sum stays O(1) for any n.
  const int lmax = band.l_max();
  NeumaierSum s;
  for (int l = 1; l <= lmax; ++l) {
    const double scaled = std::exp(n * std::log(static_cast<double>(l) / lmax));
    s.add(scaled * c_coefficient(band, l));
  }
  const double v = s.value();
  if (v == 0.0) return -std::numeric_limits<double>::infinity();
  return 2.0 * (n * std::log(static_cast<double>(lmax)) + std::log(std::abs(v)));
}

double k_constant(const BandModel& band, int n) {
  const double lk = log_k_constant(band, n);
  const double k = std::exp(lk);
  if (!std::isfinite(k)) throw NumericalError("k_constant: K_n overflows a double");
  return k;
}

double lattice_coupling(const BandModel& band, double g0, double omega0) {
  if (!(omega0 > 0.0)) throw std::invalid_argument("lattice_coupling: omega0 must be > 0");
  if (g0 < 0.0) throw std::invalid_argument("lattice_coupling: g0 must be >= 0");
  return 2.0 * band.a() * g0 / std::sqrt(omega0);
}

}  // namespace qhhg
