#pragma once

#include <array>
#include <vector>

#include "qhhg/band.hpp"
#include "qhhg/drive.hpp"
#include "qhhg/phasespace.hpp"

namespace qhhg {

inline constexpr double kSpeedOfLight = 137.035999084;
inline constexpr double kAtomicTimeFs = 0.024188843265857;

/// Mean and standard deviation of a field on a time grid (atomic units).
/// Zero-point fluctuations and driving/generated cross terms are excluded.
struct FieldTrace {
  TimeGrid grid;
  std::vector<double> mean;
  std::vector<double> std;
  std::size_t quadrature_nodes = 0;
  double captured_mass = 1.0;
  double tail_mass = 0.0;
};

/// Generated field -(4 / 3c^3) d^2 j/dt^2 averaged over the 2-D phase-space
/// grid; variance from the two-moment form with compensated sums.
FieldTrace generated_field_stats(const BandModel& band, const PulseSpec& pulse,
                                 const DrivingField& field, const TimeGrid& grid,
                                 const QuadratureSpec& quad = {});

/// Driving field e(alpha, t) = -2 g0 sqrt(omega0) Im(alpha e^{-i omega0 t}).
FieldTrace driving_field_stats(const DrivingField& field, double omega0, double g0,
                               const TimeGrid& grid, const QuadratureSpec& quad = {});

struct PeakWidth {
  double t_au = 0.0;
  double t_fs = 0.0;
  double height = 0.0;
  double fwhm_fs = 0.0;
  bool bounded_by_neighbor = false;  // a side stopped at a local minimum above half height
};

/// Peaks of |mean| (when std vanishes) or of std reaching at least half the
/// maximum inside [t_lo, t_hi], with their full widths at half maximum. A side
/// that meets a local minimum above half height ends there and is flagged;
/// peaks that reach half height on neither side are plateau ripple and are
/// skipped. Throws std::invalid_argument if the signal is zero in the window.
std::vector<PeakWidth> peak_width_report(const FieldTrace& trace, double t_lo, double t_hi);
std::vector<PeakWidth> peak_width_report(const FieldTrace& trace);

/// Solid-angle integral of sum_sigma e_sigma (j . e_sigma) over transverse
/// polarizations, by Gauss-Legendre in cos(theta) and a uniform phi rule.
std::array<double, 3> polarization_solid_angle_sum(const std::array<double, 3>& j,
                                                   int theta_nodes = 64, int phi_nodes = 64);

}  // namespace qhhg
