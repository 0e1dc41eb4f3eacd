#pragma once

#include <vector>

#include "qhhg/band.hpp"
#include "qhhg/phasespace.hpp"

namespace qhhg {

/// l_max g~0 (mu_P + 3 sigma_P).
double cutoff_order(const BandModel& band, const DrivingField& field, double g0, double omega0);

/// <[sum_l C_l J_n(l g~0 |alpha|)]^2> over the radial grid, no omega^2 factor.
double harmonic_signal_exact(const BandModel& band, const DrivingField& field, int n, double g0,
                             double omega0, const QuadratureSpec& quad = {});

/// log of K_n g~0^(2n) / ((n!)^2 2^(2n)) g^(n)(0) <N>^n with <N> the second
/// radial moment of the phase-space density.
double log_harmonic_signal_perturbative(const BandModel& band, const DrivingField& field, int n,
                                        double g0, double omega0);
double harmonic_signal_perturbative(const BandModel& band, const DrivingField& field, int n,
                                    double g0, double omega0);

/// Safety factor r in x <= n / r for the lowest-order Bessel law.
inline constexpr double kPerturbativeSafety = 9.0;

struct PerturbativeLimit {
  double mean_photons = 0.0;   // largest <N> inside the range
  double amplitude_bound = 0.0;  // n / (r l_max g~0)
  double safety = kPerturbativeSafety;
};

/// mu_P + 3 sigma_P <= n / (9 l_max g~0), boundary included.
bool inside_perturbative_range(const BandModel& band, const DrivingField& field, int n, double g0,
                               double omega0);

/// Largest mean photon number of the given kind inside the range, by
/// bisection in log <N> (integer photon numbers for Fock).
PerturbativeLimit perturbative_limit(const BandModel& band, FieldKind kind, int n, double g0,
                                     double omega0);

struct ScalingCurve {
  std::vector<double> mean_photons;
  std::vector<double> exact_signal;
  std::vector<double> perturbative_signal;
  std::vector<bool> inside_range;
  double validity_threshold = 0.0;
};

/// Log-spaced sweep of <N> in [min_photons, max_photons].
ScalingCurve scaling_curve(const BandModel& band, FieldKind kind, int n, double g0, double omega0,
                           double min_photons, double max_photons, int points,
                           const QuadratureSpec& quad = {});

}  // namespace qhhg
