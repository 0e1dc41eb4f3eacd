#include "qhhg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qhhg/fft.hpp"
#include "qhhg/numerics.hpp"
#include "qhhg/parallel.hpp"
#include "qhhg/specfun.hpp"

namespace qhhg {

namespace {

void check_uniform(const TimeGrid& grid) {
  if (grid.size() < 2) throw std::invalid_argument("spectrum: need at least two samples");
  const double dt = grid.times[1] - grid.times[0];
  if (!(dt > 0.0)) throw std::invalid_argument("spectrum: time grid must increase");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double expected = grid.times[0] + k * dt;
    if (std::abs(grid.times[k] - expected) > 1e-9 * dt * std::max<double>(1.0, k)) {
      throw std::invalid_argument("spectrum: time grid is not uniform");
    }
  }
}

Spectrum density_from_samples(const std::vector<double>& j, double dt, int zero_pad) {
  const std::size_t n = j.size();
  const std::size_t len = static_cast<std::size_t>(zero_pad) * (n - 1);
  std::vector<double> buffer(len, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    buffer[k % len] += w * j[k];
  }
  const auto x = real_dft(buffer);
  Spectrum s;
  s.omega.resize(x.size());
  s.density.resize(x.size());
  const double step = 2.0 * std::numbers::pi / (static_cast<double>(len) * dt);
  for (std::size_t m = 0; m < x.size(); ++m) {
    const double w = step * static_cast<double>(m);
    s.omega[m] = w;
    s.density[m] = w * w * std::norm(x[m]) * dt * dt;
  }
  s.dt = dt;
  s.zero_pad = zero_pad;
  return s;
}

}  // namespace

std::optional<double> FloquetPeaks::weight(int n) const {
  if (n % 2 == 0) return std::nullopt;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == n) return weights[i];
  }
  return std::nullopt;
}

Spectrum sc_spectrum(const CurrentTrace& trace, int zero_pad) {
  if (zero_pad < 1) throw std::invalid_argument("sc_spectrum: zero_pad must be >= 1");
  check_uniform(trace.grid);
  if (trace.j.size() != trace.grid.size()) throw std::invalid_argument("sc_spectrum: trace/grid size mismatch");
  for (double v : trace.j) {
    if (!std::isfinite(v)) throw NumericalError("sc_spectrum: non-finite current sample");
  }
  Spectrum s = density_from_samples(trace.j, trace.grid.times[1] - trace.grid.times[0], zero_pad);
  s.samples_per_cycle = trace.grid.samples_per_cycle;
  return s;
}

Spectrum quantum_spectrum(const BandModel& band, const PulseSpec& pulse,
                          const DrivingField& field, const TimeGrid& grid,
                          const QuadratureSpec& quad, int zero_pad) {
  if (zero_pad < 1) throw std::invalid_argument("quantum_spectrum: zero_pad must be >= 1");
  check_uniform(grid);
  const RadialGrid radial = radial_grid(field, quad.rel_tail, quad.radial_nodes);
  const DriveKernel kernel(band, pulse, grid);
  const double dt = grid.times[1] - grid.times[0];
  const std::size_t nodes = radial.nodes.size();
  std::vector<std::vector<double>> per_node(nodes);
  parallel_for(nodes, [&](std::size_t i) {
    std::vector<double> j(grid.size());
    kernel.current({radial.nodes[i], 0.0}, j.data());
    per_node[i] = density_from_samples(j, dt, zero_pad).density;
  });
  Spectrum s = density_from_samples(std::vector<double>(grid.size(), 0.0), dt, zero_pad);
  for (std::size_t m = 0; m < s.density.size(); ++m) {
    NeumaierSum acc;
    for (std::size_t i = 0; i < nodes; ++i) acc.add(radial.weights[i] * per_node[i][m]);
    s.density[m] = acc.value();
  }
  s.field_kind = to_string(field.kind);
  s.band_hash = band.hash();
  s.samples_per_cycle = grid.samples_per_cycle;
  s.quadrature_nodes = nodes;
  return s;
}

double floquet_amplitude(const BandModel& band, int n, double coupling, double amp) {
  NeumaierSum s;
  for (int l = 1; l <= band.l_max(); ++l) {
    s.add(c_coefficient(band, l) * bessel_j(n, l * coupling * amp));
  }
  return s.value();
}

FloquetPeaks floquet_peaks(const BandModel& band, const DrivingField& field, double g0,
                           double omega0, int n_max, const QuadratureSpec& quad) {
  if (n_max < 1 || n_max % 2 == 0) throw std::invalid_argument("floquet_peaks: n_max must be odd and >= 1");
  const double coupling = lattice_coupling(band, g0, omega0);
  const RadialGrid radial = radial_grid(field, quad.rel_tail, quad.radial_nodes);
  const std::size_t count = static_cast<std::size_t>((n_max + 1) / 2);
  const std::size_t nodes = radial.nodes.size();
  std::vector<std::vector<double>> per_node(nodes, std::vector<double>(count));
  parallel_for(nodes, [&](std::size_t i) {
    for (std::size_t h = 0; h < count; ++h) {
      const double f = floquet_amplitude(band, static_cast<int>(2 * h + 1), coupling, radial.nodes[i]);
      per_node[i][h] = f * f;
    }
  });
  FloquetPeaks peaks;
  for (std::size_t h = 0; h < count; ++h) {
    const int n = static_cast<int>(2 * h + 1);
    NeumaierSum acc;
    for (std::size_t i = 0; i < nodes; ++i) acc.add(radial.weights[i] * per_node[i][h]);
    const double w = n * omega0;
    peaks.orders.push_back(n);
    peaks.weights.push_back(w * w * acc.value());
  }
  return peaks;
}

std::vector<std::pair<int, double>> harmonic_peak_heights(const Spectrum& spec, double omega0,
                                                          int n_max) {
  if (spec.omega.size() < 2) throw std::invalid_argument("harmonic_peak_heights: empty spectrum");
  const double dw = spec.resolution();
  if (dw > omega0 / 8.0) {
    throw std::invalid_argument("harmonic_peak_heights: resolution coarser than omega0/8");
  }
  if ((n_max + 0.5) * omega0 > spec.omega.back() + 1e-12 * dw) {
    throw std::invalid_argument("harmonic_peak_heights: spectrum does not reach the last window");
  }
  auto value_at = [&](double w) {
    const double pos = w / dw;
    const std::size_t i = std::min(static_cast<std::size_t>(pos), spec.omega.size() - 2);
    const double f = pos - static_cast<double>(i);
    return (1.0 - f) * spec.density[i] + f * spec.density[i + 1];
  };
  std::vector<std::pair<int, double>> out;
  for (int n = 1; n <= n_max; ++n) {
    const double lo = (n - 0.5) * omega0;
    const double hi = (n + 0.5) * omega0;
    // interior samples strictly inside (lo, hi), plus interpolated edges
    NeumaierSum acc;
    double prev_w = lo;
    double prev_v = value_at(lo);
    std::size_t i = static_cast<std::size_t>(std::floor(lo / dw)) + 1;
    for (; i < spec.omega.size() && spec.omega[i] < hi; ++i) {
      if (spec.omega[i] <= lo) continue;
      acc.add(0.5 * (spec.omega[i] - prev_w) * (prev_v + spec.density[i]));
      prev_w = spec.omega[i];
      prev_v = spec.density[i];
    }
    const double hv = value_at(hi);
    acc.add(0.5 * (hi - prev_w) * (prev_v + hv));
    out.emplace_back(n, acc.value());
  }
  return out;
}

}  // namespace qhhg
