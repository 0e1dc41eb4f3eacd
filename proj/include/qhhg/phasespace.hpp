#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qhhg {

enum class FieldKind { Coherent, Thermal, Fock, BSV };

std::string to_string(FieldKind kind);
FieldKind field_kind_from_string(const std::string& name);

/// Single-mode driving field, described by its P function (coherent,
/// thermal) or by its Q function used as an approximate positive P (Fock,
/// bright squeezed vacuum).
struct DrivingField {
  FieldKind kind = FieldKind::Coherent;
  std::complex<double> alpha{0.0, 0.0};
  double mean_n = 0.0;
  std::int64_t n = 0;
  double r = 0.0;

  static DrivingField coherent(std::complex<double> alpha);
  static DrivingField thermal(double mean_photons);
  static DrivingField fock(std::int64_t photons);
  static DrivingField bsv(double r);
  /// Field of the given kind whose mean photon number is mean_photons
  /// (rounded for Fock, r = asinh(sqrt N) for BSV).
  static DrivingField from_mean_photons(FieldKind kind, double mean_photons);

  /// <a^dagger a> of the physical state: |alpha|^2, N, n, sinh^2 r.
  [[nodiscard]] double mean_photon_number() const;
  [[nodiscard]] bool is_point_mass() const noexcept { return kind == FieldKind::Coherent; }
};

/// Phase-space density at alpha; throws std::invalid_argument for the
/// coherent point mass.
double log_density(const DrivingField& field, std::complex<double> alpha);
double density(const DrivingField& field, std::complex<double> alpha);

/// |alpha| times the angular integral of the density.
double log_radial_density(const DrivingField& field, double amp);
double radial_density(const DrivingField& field, double amp);

/// Squeezed-vacuum radial density by periodic trapezoid in the phase.
double bsv_radial_density_angular(const DrivingField& field, double amp, int angular_nodes);

struct Moments {
  double mu = 0.0;     // mean of |alpha|
  double sigma = 0.0;  // standard deviation of |alpha|
};

Moments moments(const DrivingField& field);

/// log of the integral of the density times |alpha|^p.
double log_radial_moment(const DrivingField& field, double p);

/// Normalized n-th order correlation from |alpha|^(2n) moments.
double correlation_g(const DrivingField& field, int n);

struct QuadratureSpec {
  int radial_nodes = 400;
  int angular_nodes = 256;
  int phase_nodes = 64;
  double rel_tail = 1e-12;
};

struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  bool is_point_mass = false;
  double span_k = 0.0;         // half-width in units of sigma
  double captured_mass = 1.0;  // sum of weights
  double tail_mass = 0.0;      // mass outside the span, by direct integration
};

RadialGrid radial_grid(const DrivingField& field, double rel_tail = 1e-12, int nodes = 400);

/// Two-dimensional rule over the complex plane.
struct PhaseGrid {
  std::vector<std::complex<double>> alpha;
  std::vector<double> weights;
  bool is_point_mass = false;
  double captured_mass = 1.0;
  double tail_mass = 0.0;
};

PhaseGrid phase_grid(const DrivingField& field, const QuadratureSpec& spec = {});

}  // namespace qhhg
