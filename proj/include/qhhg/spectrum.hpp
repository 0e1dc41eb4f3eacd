#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhhg/band.hpp"
#include "qhhg/drive.hpp"
#include "qhhg/phasespace.hpp"

namespace qhhg {

/// omega^2 |FT j|^2 on a uniform grid from 0 to Nyquist, arbitrary units.
struct Spectrum {
  std::vector<double> omega;
  std::vector<double> density;
  // metadata
  std::string field_kind;
  std::string band_hash;
  double dt = 0.0;
  int samples_per_cycle = 0;
  int zero_pad = 1;
  std::size_t quadrature_nodes = 1;
  std::string convention = "density = omega^2 |sum_k w_k j_k e^{i omega t_k} dt|^2, trapezoid w_k";

  [[nodiscard]] double resolution() const {
    return omega.size() > 1 ? omega[1] - omega[0] : 0.0;
  }
};

/// Odd-harmonic Floquet weights (n omega0)^2 <[sum_l C_l J_n(l g~0 |alpha|)]^2>.
struct FloquetPeaks {
  std::vector<int> orders;
  std::vector<double> weights;

  /// Weight of harmonic n, or nothing for even or absent orders.
  [[nodiscard]] std::optional<double> weight(int n) const;
};

/// DFT of one trace with trapezoid end weights, zero padded to
/// zero_pad * (N - 1) points. zero_pad = 1 treats the trace as one period of a
/// periodic signal. Throws std::invalid_argument on a non-uniform grid.
Spectrum sc_spectrum(const CurrentTrace& trace, int zero_pad = 2);

/// Radial-quadrature average of single-amplitude spectra at phase 0.
Spectrum quantum_spectrum(const BandModel& band, const PulseSpec& pulse,
                          const DrivingField& field, const TimeGrid& grid,
                          const QuadratureSpec& quad = {}, int zero_pad = 2);

FloquetPeaks floquet_peaks(const BandModel& band, const DrivingField& field, double g0,
                           double omega0, int n_max, const QuadratureSpec& quad = {});

/// sum_l C_l J_n(l g~0 amp).
double floquet_amplitude(const BandModel& band, int n, double coupling, double amp);

/// Trapezoid integral of the density over [(n - 1/2) omega0, (n + 1/2) omega0]
/// for n = 1..n_max. Throws std::invalid_argument if the grid is coarser than
/// omega0 / 8 or does not reach the last window.
std::vector<std::pair<int, double>> harmonic_peak_heights(const Spectrum& spec, double omega0,
                                                          int n_max);

}  // namespace qhhg
