#include "qhhg/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qhhg/numerics.hpp"
#include "qhhg/specfun.hpp"

namespace qhhg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Quadratic-form coefficients of the squeezed-vacuum Q function,
// Q = exp(-cx x^2 - cy y^2) / (pi cosh r).
struct BsvShape {
  double cx;
  double cy;
  double var_x;  // 1 / (2 cx)
  double var_y;
};

BsvShape bsv_shape(double r) {
  BsvShape s{};
  s.cx = 2.0 / (1.0 + std::exp(-2.0 * r));
  s.cy = 2.0 / (1.0 + std::exp(2.0 * r));
  s.var_x = 0.25 * (1.0 + std::exp(-2.0 * r));
  s.var_y = 0.25 * (1.0 + std::exp(2.0 * r));
  return s;
}

void require_extended(const DrivingField& field, const char* what) {
  if (field.is_point_mass()) {
    throw std::invalid_argument(std::string(what) +
                                ": coherent field is a point mass; use its grid instead");
  }
}

// Mass of the radial density beyond `from`, walking in sigma-wide GL panels
// upward to infinity or downward to zero until a panel carries < 1e-20.
double panel_mass(const DrivingField& field, double from, double width, bool upward) {
  static const GaussLegendreRule rule = gauss_legendre(24);
  NeumaierSum total;
  double edge = from;
  for (int panel = 0; panel < 100000; ++panel) {
    if (!upward && edge <= 0.0) break;
    const double lo = upward ? edge : std::max(0.0, edge - width);
    const double hi = upward ? edge + width : edge;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    NeumaierSum m;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      m.add(rule.weights[i] * half * radial_density(field, mid + half * rule.nodes[i]));
    }
    total.add(m.value());
    edge = upward ? hi : lo;
    if (m.value() < 1e-20) break;
  }
  return total.value();
}

double gaussian_tail(double k) { return std::erfc(k / std::numbers::sqrt2); }

}  // namespace

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::Coherent: return "coherent";
    case FieldKind::Thermal: return "thermal";
    case FieldKind::Fock: return "fock";
    case FieldKind::BSV: return "bsv";
  }
  return "unknown";
}

FieldKind field_kind_from_string(const std::string& name) {
  if (name == "coherent") return FieldKind::Coherent;
  if (name == "thermal") return FieldKind::Thermal;
  if (name == "fock") return FieldKind::Fock;
  if (name == "bsv") return FieldKind::BSV;
  throw std::invalid_argument("unknown field kind '" + name + "'");
}

DrivingField DrivingField::coherent(std::complex<double> alpha) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw std::invalid_argument("coherent: amplitude must be finite");
  }
  DrivingField f;
  f.kind = FieldKind::Coherent;
  f.alpha = alpha;
  return f;
}

DrivingField DrivingField::thermal(double mean_photons) {
  if (!(mean_photons > 0.0) || !std::isfinite(mean_photons)) {
    throw std::invalid_argument("thermal: mean photon number must be > 0");
  }
  DrivingField f;
  f.kind = FieldKind::Thermal;
  f.mean_n = mean_photons;
  return f;
}

DrivingField DrivingField::fock(std::int64_t photons) {
  if (photons < 0) throw std::invalid_argument("fock: photon number must be >= 0");
  DrivingField f;
  f.kind = FieldKind::Fock;
  f.n = photons;
  return f;
}

DrivingField DrivingField::bsv(double r) {
  if (!std::isfinite(r) || std::abs(r) > 300.0) {
    throw std::invalid_argument("bsv: squeezing parameter must be finite and |r| <= 300");
  }
  DrivingField f;
  f.kind = FieldKind::BSV;
  f.r = r;
  return f;
}

DrivingField DrivingField::from_mean_photons(FieldKind kind, double mean_photons) {
  if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
    throw std::invalid_argument("mean photon number must be finite and >= 0");
  }
  switch (kind) {
    case FieldKind::Coherent: return coherent({std::sqrt(mean_photons), 0.0});
    case FieldKind::Thermal: return thermal(mean_photons);
    case FieldKind::Fock: return fock(static_cast<std::int64_t>(std::llround(mean_photons)));
    case FieldKind::BSV: return bsv(std::asinh(std::sqrt(mean_photons)));
  }
  throw std::invalid_argument("unknown field kind");
}

double DrivingField::mean_photon_number() const {
  switch (kind) {
    case FieldKind::Coherent: return std::norm(alpha);
    case FieldKind::Thermal: return mean_n;
    case FieldKind::Fock: return static_cast<double>(n);
    case FieldKind::BSV: {
      const double s = std::sinh(r);
      return s * s;
    }
  }
  return 0.0;
}

double log_density(const DrivingField& field, std::complex<double> alpha) {
  require_extended(field, "density");
  const double a2 = std::norm(alpha);
  switch (field.kind) {
    case FieldKind::Thermal:
      return -a2 / field.mean_n - std::log(kPi * field.mean_n);
    case FieldKind::Fock: {
      if (field.n == 0) return -a2 - std::log(kPi);
      if (a2 == 0.0) return kNegInf;
      const double nn = static_cast<double>(field.n);
      return nn * std::log(a2) - a2 - std::lgamma(nn + 1.0) - std::log(kPi);
    }
    case FieldKind::BSV: {
      const BsvShape s = bsv_shape(field.r);
      const double x = alpha.real();
      const double y = alpha.imag();
      return -s.cx * x * x - s.cy * y * y - std::log(kPi) - log_cosh(field.r);
    }
    case FieldKind::Coherent: break;
  }
  return kNegInf;
}

double density(const DrivingField& field, std::complex<double> alpha) {
  return std::exp(log_density(field, alpha));
}

double log_radial_density(const DrivingField& field, double amp) {
  require_extended(field, "radial_density");
  if (amp < 0.0) throw std::invalid_argument("radial_density: amplitude must be >= 0");
  if (amp == 0.0) return kNegInf;
  switch (field.kind) {
    case FieldKind::Thermal:
      return std::log(2.0 * amp / field.mean_n) - amp * amp / field.mean_n;
    case FieldKind::Fock: {
      const double nn = static_cast<double>(field.n);
      if (nn < 1e6) {
        return std::numbers::ln2 + (2.0 * nn + 1.0) * std::log(amp) - amp * amp -
               std::lgamma(nn + 1.0);
      }
      // Stirling form around the peak, free of the cancellation between
      // (2n+1) log a and log n!.
      const double s = nn + 0.5;
      const double rs = std::sqrt(s);
      const double v = (amp - rs) * (amp + rs) / s;
      const double s3 = s * s * s;
      return std::numbers::ln2 - 0.5 * std::log(2.0 * kPi) + 1.0 / (24.0 * s) -
             7.0 / (2880.0 * s3) + 31.0 / (40320.0 * s3 * s * s) +
             s * (std::log1p(v) - v);
    }
    case FieldKind::BSV: {
      const BsvShape s = bsv_shape(field.r);
      const double a2 = amp * amp;
      const double big_a = s.cx * a2;
      const double big_b = s.cy * a2;
      return std::log(2.0 * amp) - log_cosh(field.r) - std::min(big_a, big_b) +
             std::log(bessel_i0_scaled(0.5 * std::abs(big_a - big_b)));
    }
    case FieldKind::Coherent: break;
  }
  return kNegInf;
}

double radial_density(const DrivingField& field, double amp) {
  return std::exp(log_radial_density(field, amp));
}

double bsv_radial_density_angular(const DrivingField& field, double amp, int angular_nodes) {
  if (field.kind != FieldKind::BSV) throw std::invalid_argument("bsv_radial_density_angular: not a BSV field");
  if (angular_nodes < 1) throw std::invalid_argument("bsv_radial_density_angular: need nodes >= 1");
  NeumaierSum s;
  for (int j = 0; j < angular_nodes; ++j) {
    const double phi = 2.0 * kPi * j / angular_nodes;
    s.add(density(field, std::polar(amp, phi)));
  }
  return amp * 2.0 * kPi / angular_nodes * s.value();
}

Moments moments(const DrivingField& field) {
  switch (field.kind) {
    case FieldKind::Coherent: return {std::abs(field.alpha), 0.0};
    case FieldKind::Thermal:
      return {0.5 * std::sqrt(kPi * field.mean_n),
              std::sqrt(field.mean_n * (1.0 - 0.25 * kPi))};
    case FieldKind::Fock: {
      const double z = static_cast<double>(field.n) + 1.0;
      const double mu = std::exp(log_gamma_ratio(z, 0.5));
      double var;
      if (z > 1e4) {
        const double iz = 1.0 / z;
        var = 0.25 - iz / 32.0 - iz * iz / 128.0 + 5.0 * iz * iz * iz / 2048.0;
      } else {
        var = z - mu * mu;
      }
      if (var < -1e-10 * z) throw NumericalError("moments: negative Fock variance");
      return {mu, std::sqrt(std::max(0.0, var))};
    }
    case FieldKind::BSV: {
      const BsvShape s = bsv_shape(field.r);
      const double major = std::max(s.var_x, s.var_y);
      const double minor = std::min(s.var_x, s.var_y);
      const double k = std::sqrt(1.0 - minor / major);
      const double mu = std::sqrt(2.0 / kPi) * std::sqrt(major) * std::comp_ellint_2(k);
      const double second = s.var_x + s.var_y;
      const double var = second - mu * mu;
      if (var < -1e-10 * second) throw NumericalError("moments: negative BSV variance");
      return {mu, std::sqrt(std::max(0.0, var))};
    }
  }
  return {};
}

double log_radial_moment(const DrivingField& field, double p) {
  if (!(p >= 0.0)) throw std::invalid_argument("log_radial_moment: p must be >= 0");
  if (p == 0.0) return 0.0;
  switch (field.kind) {
    case FieldKind::Coherent: {
      const double a = std::abs(field.alpha);
      return a == 0.0 ? kNegInf : p * std::log(a);
    }
    case FieldKind::Thermal:
      return std::lgamma(0.5 * p + 1.0) + 0.5 * p * std::log(field.mean_n);
    case FieldKind::Fock:
      return log_gamma_ratio(static_cast<double>(field.n) + 1.0, 0.5 * p);
    case FieldKind::BSV: {
      if (p == 1.0) return std::log(moments(field).mu);
      const double half = 0.5 * p;
      if (half == std::floor(half)) {
        // E[(x^2 + y^2)^k] from the independent Gaussian quadratures.
        const int k = static_cast<int>(half);
        const BsvShape s = bsv_shape(field.r);
        auto log_even = [](double var, int j) {
          return j * std::log(var) + std::lgamma(2.0 * j + 1.0) - j * std::numbers::ln2 -
                 std::lgamma(j + 1.0);
        };
        LogSumExp acc;
        for (int j = 0; j <= k; ++j) {
          const double log_binom = std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0);
          acc.add(log_binom + log_even(s.var_x, j) + log_even(s.var_y, k - j));
        }
        return acc.value();
      }
      const RadialGrid grid = radial_grid(field);
      LogSumExp acc;
      for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        if (grid.weights[i] > 0.0 && grid.nodes[i] > 0.0) {
          acc.add(std::log(grid.weights[i]) + p * std::log(grid.nodes[i]));
        }
      }
      return acc.value();
    }
  }
  return kNegInf;
}

double correlation_g(const DrivingField& field, int n) {
  if (n < 1) throw std::invalid_argument("correlation_g: n must be >= 1");
  const double m2n = log_radial_moment(field, 2.0 * n);
  const double m2 = log_radial_moment(field, 2.0);
  const double g = std::exp(m2n - n * m2);
  if (!std::isfinite(g)) throw NumericalError("correlation_g: non-finite result");
  return g;
}

RadialGrid radial_grid(const DrivingField& field, double rel_tail, int nodes) {
  if (nodes < 16) throw std::invalid_argument("radial_grid: need at least 16 nodes");
  if (!(rel_tail > 0.0 && rel_tail < 1.0)) throw std::invalid_argument("radial_grid: rel_tail must lie in (0, 1)");
  RadialGrid grid;
  if (field.is_point_mass()) {
    grid.nodes = {std::abs(field.alpha)};
    grid.weights = {1.0};
    grid.is_point_mass = true;
    return grid;
  }
  const Moments m = moments(field);
  if (!(m.sigma > 0.0)) throw NumericalError("radial_grid: zero width distribution");
  double lo = 0.0;
  double hi = 0.0;
  double tail = 1.0;
  double k = 8.0;
  for (; k <= 12.0 + 1e-9; k += 0.5) {
    lo = std::max(0.0, m.mu - k * m.sigma);
    hi = m.mu + k * m.sigma;
    const double lower = lo > 0.0 ? panel_mass(field, lo, m.sigma, false) : 0.0;
    const double upper = panel_mass(field, hi, m.sigma, true);
    tail = lower + upper;
    if (tail < rel_tail) break;
  }
  if (!(tail < rel_tail)) {
    throw NumericalError("radial_grid: tail mass " + std::to_string(tail) +
                         " exceeds rel_tail with span 12 sigma");
  }
  // The squeezed-vacuum density switches on over |alpha| ~ 1 and carries a
  // slowly decaying 1/|alpha|^2 correction, so the region near the origin is
  // covered by decade-graded panels ahead of the main span.
  std::vector<std::pair<double, double>> panels;
  std::vector<int> counts;
  double edge = 12.0;
  if (field.kind == FieldKind::BSV && lo == 0.0 && hi > 4.0 * edge) {
    const int inner_nodes = std::max(32, nodes / 8);
    panels.emplace_back(0.0, edge);
    counts.push_back(inner_nodes);
    while (edge * 100.0 < hi) {
      panels.emplace_back(edge, edge * 10.0);
      counts.push_back(inner_nodes);
      edge *= 10.0;
    }
    panels.emplace_back(edge, hi);
    counts.push_back(nodes);
  } else {
    panels.emplace_back(lo, hi);
    counts.push_back(nodes);
  }
  NeumaierSum captured;
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const GaussLegendreRule rule = gauss_legendre(counts[p], panels[p].first, panels[p].second);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double w = rule.weights[i] * radial_density(field, rule.nodes[i]);
      grid.nodes.push_back(rule.nodes[i]);
      grid.weights.push_back(w);
      captured.add(w);
    }
  }
  grid.span_k = k;
  grid.captured_mass = captured.value();
  grid.tail_mass = tail;
  return grid;
}

PhaseGrid phase_grid(const DrivingField& field, const QuadratureSpec& spec) {
  if (spec.phase_nodes < 1) throw std::invalid_argument("phase_grid: need phase_nodes >= 1");
  PhaseGrid grid;
  if (field.is_point_mass()) {
    grid.alpha = {field.alpha};
    grid.weights = {1.0};
    grid.is_point_mass = true;
    return grid;
  }
  if (field.kind != FieldKind::BSV) {
    const RadialGrid radial = radial_grid(field, spec.rel_tail, spec.radial_nodes);
    const int m = spec.phase_nodes;
    grid.alpha.reserve(radial.nodes.size() * m);
    grid.weights.reserve(radial.nodes.size() * m);
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
      for (int j = 0; j < m; ++j) {
        grid.alpha.push_back(std::polar(radial.nodes[i], 2.0 * kPi * j / m));
        grid.weights.push_back(radial.weights[i] / m);
      }
    }
    grid.captured_mass = radial.captured_mass;
    grid.tail_mass = radial.tail_mass;
    return grid;
  }
  // Squeezed vacuum: product Gauss-Legendre over the two quadratures.
  const BsvShape s = bsv_shape(field.r);
  double k = 8.0;
  while (2.0 * gaussian_tail(k) >= spec.rel_tail && k < 12.0) k += 0.5;
  const double tail1d = gaussian_tail(k);
  if (2.0 * tail1d >= spec.rel_tail) throw NumericalError("phase_grid: Gaussian tail not met at 12 sigma");
  const bool x_major = s.var_x >= s.var_y;
  const int nx = x_major ? spec.radial_nodes : std::max(64, spec.phase_nodes);
  const int ny = x_major ? std::max(64, spec.phase_nodes) : spec.radial_nodes;
  const double sx = std::sqrt(s.var_x);
  const double sy = std::sqrt(s.var_y);
  const GaussLegendreRule gx = gauss_legendre(nx, -k * sx, k * sx);
  const GaussLegendreRule gy = gauss_legendre(ny, -k * sy, k * sy);
  auto gauss = [](double v, double var) {
    return std::exp(-0.5 * v * v / var) / std::sqrt(2.0 * kPi * var);
  };
  NeumaierSum captured;
  grid.alpha.reserve(static_cast<std::size_t>(nx) * ny);
  grid.weights.reserve(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    const double wx = gx.weights[i] * gauss(gx.nodes[i], s.var_x);
    for (int j = 0; j < ny; ++j) {
      const double w = wx * gy.weights[j] * gauss(gy.nodes[j], s.var_y);
      grid.alpha.emplace_back(gx.nodes[i], gy.nodes[j]);
      grid.weights.push_back(w);
      captured.add(w);
    }
  }
  grid.captured_mass = captured.value();
  grid.tail_mass = 2.0 * tail1d;
  return grid;
}

}  // namespace qhhg
