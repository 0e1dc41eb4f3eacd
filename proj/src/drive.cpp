#include "qhhg/drive.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qhhg {

namespace {
constexpr double kPi = std::numbers::pi;
}

double PulseSpec::period() const { return 2.0 * kPi / omega0; }

void PulseSpec::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw std::invalid_argument("pulse: omega0 must be > 0");
  if (!(g0 >= 0.0) || !std::isfinite(g0)) throw std::invalid_argument("pulse: g0 must be >= 0");
  if (flat_cycles < 0 || ramp_cycles < 0) throw std::invalid_argument("pulse: cycle counts must be >= 0");
  if (total_cycles() < 1) throw std::invalid_argument("pulse: zero-length pulse");
}

TimeGrid TimeGrid::covering(const PulseSpec& pulse, int samples_per_cycle) {
  pulse.validate();
  if (samples_per_cycle < 64) throw std::invalid_argument("time grid: samples_per_cycle must be >= 64");
  TimeGrid g;
  g.samples_per_cycle = samples_per_cycle;
  const int intervals = pulse.total_cycles() * samples_per_cycle;
  g.dt = pulse.period() / samples_per_cycle;
  g.times.resize(static_cast<std::size_t>(intervals) + 1);
  for (int k = 0; k <= intervals; ++k) g.times[k] = k * g.dt;
  return g;
}

EnvelopeValue envelope_with_derivatives(const PulseSpec& pulse, double t) {
  if (pulse.envelope == EnvelopeKind::None) return {1.0, 0.0, 0.0};
  const double total = pulse.duration();
  if (t < 0.0 || t > total) return {};
  const double ramp = pulse.ramp_cycles * pulse.period();
  if (ramp == 0.0) return {1.0, 0.0, 0.0};
  const double rate = kPi / (2.0 * ramp);
  if (t < ramp) {
    const double th = rate * t;
    return {std::sin(th) * std::sin(th), std::sin(2.0 * th) * rate,
            2.0 * std::cos(2.0 * th) * rate * rate};
  }
  if (t > total - ramp) {
    const double th = rate * (total - t);
    return {std::sin(th) * std::sin(th), -std::sin(2.0 * th) * rate,
            2.0 * std::cos(2.0 * th) * rate * rate};
  }
  return {1.0, 0.0, 0.0};
}

double envelope(const PulseSpec& pulse, double t) {
  return envelope_with_derivatives(pulse, t).value;
}

VectorPotential vector_potential(const PulseSpec& pulse, double amp, double phase, double t) {
  const EnvelopeValue e = envelope_with_derivatives(pulse, t);
  const double c = 2.0 * pulse.g0 / std::sqrt(pulse.omega0) * amp;
  const double w = pulse.omega0;
  const double s = std::sin(w * t - phase);
  const double co = std::cos(w * t - phase);
  return {e.value * c * s, c * (e.d1 * s + e.value * w * co),
          c * (e.d2 * s + 2.0 * e.d1 * w * co - e.value * w * w * s)};
}

DriveKernel::DriveKernel(const BandModel& band, const PulseSpec& pulse, const TimeGrid& grid)
    : a_(band.a()), scale_(2.0 * pulse.g0 / std::sqrt(pulse.omega0)) {
  pulse.validate();
  coef_.resize(band.l_max());
  for (int l = 1; l <= band.l_max(); ++l) coef_[l - 1] = -band.a() * c_coefficient(band, l);
  const std::size_t n = grid.size();
  for (auto* v : {&s0_, &c0_, &s1_, &c1_, &s2_, &c2_}) v->resize(n);
  const double w = pulse.omega0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = grid.times[k];
    const EnvelopeValue e = envelope_with_derivatives(pulse, t);
    const double s = std::sin(w * t);
    const double c = std::cos(w * t);
    s0_[k] = e.value * s;
    c0_[k] = e.value * c;
    s1_[k] = e.d1 * s + e.value * w * c;
    c1_[k] = e.d1 * c - e.value * w * s;
    s2_[k] = e.d2 * s + 2.0 * e.d1 * w * c - e.value * w * w * s;
    c2_[k] = e.d2 * c - 2.0 * e.d1 * w * s - e.value * w * w * c;
  }
}

void DriveKernel::current(std::complex<double> alpha, double* out) const {
  const double re = scale_ * alpha.real();
  const double im = scale_ * alpha.imag();
  const std::size_t lmax = coef_.size();
  for (std::size_t k = 0; k < s0_.size(); ++k) {
    const double u = a_ * (re * s0_[k] - im * c0_[k]);
    const double s1 = std::sin(u);
    const double c1 = std::cos(u);
    double sl = s1;
    double cl = c1;
    double acc = coef_[0] * sl;
    for (std::size_t l = 1; l < lmax; ++l) {
      const double sn = sl * c1 + cl * s1;
      cl = cl * c1 - sl * s1;
      sl = sn;
      acc += coef_[l] * sl;
    }
    out[k] = acc;
  }
}

void DriveKernel::current_accel(std::complex<double> alpha, double* out) const {
  const double re = scale_ * alpha.real();
  const double im = scale_ * alpha.imag();
  const std::size_t lmax = coef_.size();
  for (std::size_t k = 0; k < s0_.size(); ++k) {
    const double u = a_ * (re * s0_[k] - im * c0_[k]);
    const double du = a_ * (re * s1_[k] - im * c1_[k]);
    const double d2u = a_ * (re * s2_[k] - im * c2_[k]);
    const double s1 = std::sin(u);
    const double c1 = std::cos(u);
    double sl = s1;
    double cl = c1;
    double acc = 0.0;
    for (std::size_t l = 0; l < lmax; ++l) {
      if (l > 0) {
        const double sn = sl * c1 + cl * s1;
        cl = cl * c1 - sl * s1;
        sl = sn;
      }
      const double ll = static_cast<double>(l + 1);
      acc += coef_[l] * (-(ll * du) * (ll * du) * sl + ll * d2u * cl);
    }
    out[k] = acc;
  }
}

CurrentTrace current(const BandModel& band, const PulseSpec& pulse, double amp, double phase,
                     const TimeGrid& grid) {
  if (amp < 0.0) throw std::invalid_argument("current: amplitude must be >= 0");
  const DriveKernel kernel(band, pulse, grid);
  CurrentTrace trace;
  trace.grid = grid;
  trace.j.resize(grid.size());
  kernel.current(std::polar(amp, phase), trace.j.data());
  return trace;
}

CurrentTrace current_accel(const BandModel& band, const PulseSpec& pulse, double amp,
                           double phase, const TimeGrid& grid) {
  if (amp < 0.0) throw std::invalid_argument("current_accel: amplitude must be >= 0");
  const DriveKernel kernel(band, pulse, grid);
  CurrentTrace trace;
  trace.grid = grid;
  trace.j.resize(grid.size());
  trace.d2j.resize(grid.size());
  const auto alpha = std::polar(amp, phase);
  kernel.current(alpha, trace.j.data());
  kernel.current_accel(alpha, trace.d2j.data());
  return trace;
}

}  // namespace qhhg
