#include "qhhg/efield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qhhg/numerics.hpp"
#include "qhhg/parallel.hpp"

namespace qhhg {

namespace {

constexpr std::size_t kChunk = 64;

// Per-time weighted first and second moments, reduced in fixed chunk order.
struct MomentSums {
  std::vector<NeumaierSum> first;
  std::vector<NeumaierSum> second;
  NeumaierSum weight;
};

FieldTrace finish(const TimeGrid& grid, const MomentSums& sums, double scale, const char* who) {
  FieldTrace out;
  out.grid = grid;
  const std::size_t n = grid.size();
  out.mean.resize(n);
  out.std.resize(n);
  const double total = sums.weight.value();
  if (!(total > 0.0)) throw NumericalError(std::string(who) + ": zero total weight");
  std::vector<double> var(n);
  double scale_max = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double m1 = sums.first[k].value() / total;
    const double m2 = sums.second[k].value() / total;
    out.mean[k] = scale * m1;
    var[k] = m2 - m1 * m1;
    scale_max = std::max(scale_max, m2);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (var[k] < -1e-10 * scale_max) {
      throw NumericalError(std::string(who) + ": negative variance beyond tolerance");
    }
    out.std[k] = std::abs(scale) * std::sqrt(std::max(0.0, var[k]));
  }
  return out;
}

}  // namespace

FieldTrace generated_field_stats(const BandModel& band, const PulseSpec& pulse,
                                 const DrivingField& field, const TimeGrid& grid,
                                 const QuadratureSpec& quad) {
  const PhaseGrid nodes = phase_grid(field, quad);
  const DriveKernel kernel(band, pulse, grid);
  const std::size_t n = grid.size();
  const std::size_t count = nodes.alpha.size();
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  MomentSums sums{std::vector<NeumaierSum>(n), std::vector<NeumaierSum>(n), {}};
  // Process chunks in batches so memory stays bounded; each chunk is reduced
  // serially and batches are folded in chunk order.
  const std::size_t batch = 16;
  for (std::size_t b0 = 0; b0 < chunks; b0 += batch) {
    const std::size_t b1 = std::min(chunks, b0 + batch);
    std::vector<std::vector<double>> s1(b1 - b0), s2(b1 - b0);
    std::vector<double> wsum(b1 - b0);
    parallel_for(b1 - b0, [&](std::size_t c) {
      const std::size_t lo = (b0 + c) * kChunk;
      const std::size_t hi = std::min(count, lo + kChunk);
      std::vector<NeumaierSum> a1(n), a2(n);
      NeumaierSum w;
      std::vector<double> g(n);
      for (std::size_t i = lo; i < hi; ++i) {
        kernel.current_accel(nodes.alpha[i], g.data());
        const double wi = nodes.weights[i];
        w.add(wi);
        for (std::size_t k = 0; k < n; ++k) {
          a1[k].add(wi * g[k]);
          a2[k].add(wi * g[k] * g[k]);
        }
      }
      s1[c].resize(n);
      s2[c].resize(n);
      for (std::size_t k = 0; k < n; ++k) {
        s1[c][k] = a1[k].value();
        s2[c][k] = a2[k].value();
      }
      wsum[c] = w.value();
    });
    for (std::size_t c = 0; c < b1 - b0; ++c) {
      sums.weight.add(wsum[c]);
      for (std::size_t k = 0; k < n; ++k) {
        sums.first[k].add(s1[c][k]);
        sums.second[k].add(s2[c][k]);
      }
    }
  }
  const double c = kSpeedOfLight;
  FieldTrace out = finish(grid, sums, -4.0 / (3.0 * c * c * c), "generated_field_stats");
  out.quadrature_nodes = count;
  out.captured_mass = nodes.captured_mass;
  out.tail_mass = nodes.tail_mass;
  return out;
}

FieldTrace driving_field_stats(const DrivingField& field, double omega0, double g0,
                               const TimeGrid& grid, const QuadratureSpec& quad) {
  if (!(omega0 > 0.0)) throw std::invalid_argument("driving_field_stats: omega0 must be > 0");
  const PhaseGrid nodes = phase_grid(field, quad);
  // e is linear in (Re alpha, Im alpha): only the first two moments matter.
  NeumaierSum w, mx, my, mxx, mxy, myy;
  for (std::size_t i = 0; i < nodes.alpha.size(); ++i) {
    const double wi = nodes.weights[i];
    const double x = nodes.alpha[i].real();
    const double y = nodes.alpha[i].imag();
    w.add(wi);
    mx.add(wi * x);
    my.add(wi * y);
    mxx.add(wi * x * x);
    mxy.add(wi * x * y);
    myy.add(wi * y * y);
  }
  const double total = w.value();
  const double ex = mx.value() / total, ey = my.value() / total;
  const double cxx = mxx.value() / total - ex * ex;
  const double cxy = mxy.value() / total - ex * ey;
  const double cyy = myy.value() / total - ey * ey;
  const double amp = 2.0 * g0 * std::sqrt(omega0);
  FieldTrace out;
  out.grid = grid;
  out.mean.resize(grid.size());
  out.std.resize(grid.size());
  const double floor = -1e-10 * std::max({std::abs(cxx), std::abs(cyy), 1e-300});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double s = std::sin(omega0 * grid.times[k]);
    const double c = std::cos(omega0 * grid.times[k]);
    out.mean[k] = amp * (ex * s - ey * c);
    const double var = cxx * s * s - 2.0 * cxy * s * c + cyy * c * c;
    if (var < floor) throw NumericalError("driving_field_stats: negative variance beyond tolerance");
    out.std[k] = amp * std::sqrt(std::max(0.0, var));
  }
  out.quadrature_nodes = nodes.alpha.size();
  out.captured_mass = nodes.captured_mass;
  out.tail_mass = nodes.tail_mass;
  return out;
}

std::vector<PeakWidth> peak_width_report(const FieldTrace& trace, double t_lo, double t_hi) {
  const std::size_t n = trace.grid.size();
  if (n < 3 || trace.mean.size() != n || trace.std.size() != n) {
    throw std::invalid_argument("peak_width_report: malformed trace");
  }
  const bool use_std = std::any_of(trace.std.begin(), trace.std.end(), [](double v) { return v > 0.0; });
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) s[k] = use_std ? trace.std[k] : std::abs(trace.mean[k]);
  const auto& t = trace.grid.times;
  double top = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (t[k] >= t_lo && t[k] <= t_hi) top = std::max(top, s[k]);
  }
  if (!(top > 0.0)) throw std::invalid_argument("peak_width_report: no peak above the noise floor");
  std::vector<PeakWidth> out;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (t[k] < t_lo || t[k] > t_hi) continue;
    if (!(s[k] >= 0.5 * top && s[k] > s[k - 1] && s[k] >= s[k + 1])) continue;
    const double half = 0.5 * s[k];
    PeakWidth p;
    p.t_au = t[k];
    p.t_fs = t[k] * kAtomicTimeFs;
    p.height = s[k];
    int crossings = 0;
    auto walk = [&](int dir) {
      std::size_t i = k;
      while (true) {
        const std::ptrdiff_t next = static_cast<std::ptrdiff_t>(i) + dir;
        if (next < 0 || next >= static_cast<std::ptrdiff_t>(n)) {
          p.bounded_by_neighbor = true;
          return t[i];
        }
        const auto j = static_cast<std::size_t>(next);
        if (s[j] <= half) {
          ++crossings;
          const double f = (s[i] - half) / (s[i] - s[j]);
          return t[i] + f * (t[j] - t[i]);
        }
        if (s[j] > s[i]) {
          p.bounded_by_neighbor = true;
          return t[i];
        }
        i = j;
      }
    };
    const double left = walk(-1);
    const double right = walk(+1);
    // ripples on a plateau never reach half height on either side
    if (crossings == 0) continue;
    p.fwhm_fs = (right - left) * kAtomicTimeFs;
    out.push_back(p);
  }
  return out;
}

std::vector<PeakWidth> peak_width_report(const FieldTrace& trace) {
  return peak_width_report(trace, trace.grid.t_start, trace.grid.t_end());
}

std::array<double, 3> polarization_solid_angle_sum(const std::array<double, 3>& j, int theta_nodes,
                                                   int phi_nodes) {
  if (theta_nodes < 1 || phi_nodes < 1) throw std::invalid_argument("polarization_solid_angle_sum: bad node counts");
  const GaussLegendreRule rule = gauss_legendre(theta_nodes);
  std::array<NeumaierSum, 3> acc;
  for (int a = 0; a < theta_nodes; ++a) {
    const double ct = rule.nodes[a];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int b = 0; b < phi_nodes; ++b) {
      const double ph = 2.0 * std::numbers::pi * b / phi_nodes;
      const double cp = std::cos(ph), sp = std::sin(ph);
      // spherical unit vectors theta-hat and phi-hat span the transverse plane
      const std::array<double, 3> e1{ct * cp, ct * sp, -st};
      const std::array<double, 3> e2{-sp, cp, 0.0};
      const double p1 = j[0] * e1[0] + j[1] * e1[1] + j[2] * e1[2];
      const double p2 = j[0] * e2[0] + j[1] * e2[1] + j[2] * e2[2];
      const double w = rule.weights[a] * 2.0 * std::numbers::pi / phi_nodes;
      for (int c = 0; c < 3; ++c) acc[c].add(w * (p1 * e1[c] + p2 * e2[c]));
    }
  }
  return {acc[0].value(), acc[1].value(), acc[2].value()};
}

}  // namespace qhhg
