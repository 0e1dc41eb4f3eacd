#include "qhhg/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qhhg/numerics.hpp"
#include "qhhg/parallel.hpp"
#include "qhhg/spectrum.hpp"

namespace qhhg {

namespace {

double spread(const DrivingField& field) {
  const Moments m = moments(field);
  return m.mu + 3.0 * m.sigma;
}

void require_odd(int n) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("harmonic order must be odd and >= 1");
}

}  // namespace

double cutoff_order(const BandModel& band, const DrivingField& field, double g0, double omega0) {
  return band.l_max() * lattice_coupling(band, g0, omega0) * spread(field);
}

double harmonic_signal_exact(const BandModel& band, const DrivingField& field, int n, double g0,
                             double omega0, const QuadratureSpec& quad) {
  require_odd(n);
  const double coupling = lattice_coupling(band, g0, omega0);
  if (field.is_point_mass() && field.alpha == 0.0) return 0.0;
  const RadialGrid radial = radial_grid(field, quad.rel_tail, quad.radial_nodes);
  std::vector<double> values(radial.nodes.size());
  parallel_for(values.size(), [&](std::size_t i) {
    const double f = floquet_amplitude(band, n, coupling, radial.nodes[i]);
    values[i] = f * f;
  });
  NeumaierSum acc;
  for (std::size_t i = 0; i < values.size(); ++i) acc.add(radial.weights[i] * values[i]);
  return acc.value();
}

double log_harmonic_signal_perturbative(const BandModel& band, const DrivingField& field, int n,
                                        double g0, double omega0) {
  require_odd(n);
  const double coupling = lattice_coupling(band, g0, omega0);
  // g^(n) <N>^n is exactly the |alpha|^(2n) moment.
  return log_k_constant(band, n) + 2.0 * n * std::log(coupling) - 2.0 * std::lgamma(n + 1.0) -
         2.0 * n * std::numbers::ln2 + log_radial_moment(field, 2.0 * n);
}

double harmonic_signal_perturbative(const BandModel& band, const DrivingField& field, int n,
                                    double g0, double omega0) {
  const double v = std::exp(log_harmonic_signal_perturbative(band, field, n, g0, omega0));
  if (std::isnan(v)) throw NumericalError("harmonic_signal_perturbative: NaN");
  return v;
}

bool inside_perturbative_range(const BandModel& band, const DrivingField& field, int n, double g0,
                               double omega0) {
  if (n < 1) throw std::invalid_argument("harmonic order must be >= 1");
  const double bound = n / (kPerturbativeSafety * band.l_max() * lattice_coupling(band, g0, omega0));
  return spread(field) <= bound;
}

PerturbativeLimit perturbative_limit(const BandModel& band, FieldKind kind, int n, double g0,
                                     double omega0) {
  if (n < 1) throw std::invalid_argument("perturbative_limit: n must be >= 1");
  const double coupling = lattice_coupling(band, g0, omega0);
  if (!(coupling > 0.0)) throw std::invalid_argument("perturbative_limit: zero coupling has no limit");
  PerturbativeLimit out;
  out.amplitude_bound = n / (kPerturbativeSafety * band.l_max() * coupling);
  auto inside = [&](double photons) {
    return spread(DrivingField::from_mean_photons(kind, photons)) <= out.amplitude_bound;
  };
  double lo = kind == FieldKind::Fock ? 0.0 : 1e-6;
  if (!inside(lo)) throw NumericalError("perturbative_limit: range empty at the smallest photon number");
  double hi = std::max(1.0, lo);
  while (inside(hi)) {
    lo = hi;
    hi *= 10.0;
    if (hi > 1e300) throw NumericalError("perturbative_limit: failed to bracket the threshold");
  }
  if (kind == FieldKind::Fock) {
    auto ilo = static_cast<long long>(lo);
    auto ihi = static_cast<long long>(hi);
    while (ihi - ilo > 1) {
      const long long mid = ilo + (ihi - ilo) / 2;
      if (inside(static_cast<double>(mid))) ilo = mid; else ihi = mid;
    }
    out.mean_photons = static_cast<double>(ilo);
    return out;
  }
  double llo = std::log(lo);
  double lhi = std::log(hi);
  for (int it = 0; it < 200 && lhi - llo > 1e-14 * std::max(1.0, std::abs(lhi)); ++it) {
    const double mid = 0.5 * (llo + lhi);
    if (inside(std::exp(mid))) llo = mid; else lhi = mid;
  }
  out.mean_photons = std::exp(llo);
  return out;
}

ScalingCurve scaling_curve(const BandModel& band, FieldKind kind, int n, double g0, double omega0,
                           double min_photons, double max_photons, int points,
                           const QuadratureSpec& quad) {
  if (!(min_photons > 0.0) || !(max_photons >= min_photons) || points < 1) {
    throw std::invalid_argument("scaling_curve: need 0 < min <= max and points >= 1");
  }
  ScalingCurve c;
  c.validity_threshold = perturbative_limit(band, kind, n, g0, omega0).mean_photons;
  const double l0 = std::log(min_photons);
  const double l1 = std::log(max_photons);
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    const double photons = std::exp(l0 + t * (l1 - l0));
    const DrivingField field = DrivingField::from_mean_photons(kind, photons);
    c.mean_photons.push_back(photons);
    c.exact_signal.push_back(harmonic_signal_exact(band, field, n, g0, omega0, quad));
    c.perturbative_signal.push_back(harmonic_signal_perturbative(band, field, n, g0, omega0));
    c.inside_range.push_back(inside_perturbative_range(band, field, n, g0, omega0));
  }
  return c;
}

}  // namespace qhhg
