#pragma once

#include <complex>
#include <vector>

#include "qhhg/band.hpp"

namespace qhhg {

enum class EnvelopeKind { FlatTopSin2, None };

struct PulseSpec {
  double omega0 = 0.005;
  double g0 = 4e-8;
  int flat_cycles = 10;
  int ramp_cycles = 3;
  EnvelopeKind envelope = EnvelopeKind::FlatTopSin2;

  [[nodiscard]] double period() const;
  [[nodiscard]] int total_cycles() const { return 2 * ramp_cycles + flat_cycles; }
  [[nodiscard]] double duration() const { return total_cycles() * period(); }
  /// Throws std::invalid_argument on omega0 <= 0, negative cycle counts or
  /// a zero-length pulse.
  void validate() const;
};

/// Uniform samples t_k = t_start + k dt, k = 0..count-1.
struct TimeGrid {
  double t_start = 0.0;
  double dt = 0.0;
  int samples_per_cycle = 0;
  std::vector<double> times;

  [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
  [[nodiscard]] double t_end() const { return times.empty() ? t_start : times.back(); }

  /// [0, duration] with samples_per_cycle * cycles + 1 points.
  static TimeGrid covering(const PulseSpec& pulse, int samples_per_cycle = 512);
};

struct CurrentTrace {
  TimeGrid grid;
  std::vector<double> j;
  std::vector<double> d2j;  // empty unless requested
};

struct EnvelopeValue {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Flat top with sin^2 ramps, zero outside [0, duration]. Continuous with
/// continuous first derivative; the second derivative jumps at the seams.
EnvelopeValue envelope_with_derivatives(const PulseSpec& pulse, double t);
double envelope(const PulseSpec& pulse, double t);

struct VectorPotential {
  double a = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// A(t) = envelope(t) 2 g0 omega0^(-1/2) amp sin(omega0 t - phase).
VectorPotential vector_potential(const PulseSpec& pulse, double amp, double phase, double t);

/// Precomputed time-dependent factors for evaluating j and d^2 j/dt^2 at many
/// phase-space points on one grid. Immutable and shareable across threads.
class DriveKernel {
 public:
  DriveKernel(const BandModel& band, const PulseSpec& pulse, const TimeGrid& grid);

  /// j(t_k) for drive amplitude alpha = amp e^{i phase}; out has grid size.
  void current(std::complex<double> alpha, double* out) const;
  /// d^2 j / dt^2 (t_k) by the chain rule on analytic A, A', A''.
  void current_accel(std::complex<double> alpha, double* out) const;

  [[nodiscard]] std::size_t size() const noexcept { return s0_.size(); }
  [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return coef_; }

 private:
  double a_;
  double scale_;               // 2 g0 / sqrt(omega0)
  std::vector<double> coef_;   // -a l b_l S_l
  // env * sin(w t), env * cos(w t) and their first two time derivatives
  std::vector<double> s0_, c0_, s1_, c1_, s2_, c2_;
};

CurrentTrace current(const BandModel& band, const PulseSpec& pulse, double amp, double phase,
                     const TimeGrid& grid);
CurrentTrace current_accel(const BandModel& band, const PulseSpec& pulse, double amp,
                           double phase, const TimeGrid& grid);

}  // namespace qhhg
