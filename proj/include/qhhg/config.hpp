#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qhhg/band.hpp"
#include "qhhg/drive.hpp"
#include "qhhg/phasespace.hpp"

namespace qhhg {

/// Parse or validation failure; line is 0 when the problem is a missing key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line, std::string key)
      : std::runtime_error(message), line_(line), key_(std::move(key)) {}
  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

enum class RunKind { Spectrum, Floquet, Cutoff, Scaling, Efield, ValidateApp };

std::string to_string(RunKind kind);

struct RunConfig {
  RunKind kind = RunKind::Spectrum;
  std::string out_dir = "out";
  bool convergence_check = true;

  BandModel band = BandModel::zno();
  std::optional<DrivingField> field;
  double mean_photons = 0.0;  // as given, or implied by the field

  PulseSpec pulse;
  int samples_per_cycle = 512;
  int zero_pad = 2;
  QuadratureSpec quad;

  int floquet_n_max = 61;
  int spectrum_n_max = 61;
  int scaling_order = 5;
  double scaling_min_photons = 1e4;
  double scaling_max_photons = 1e10;
  int scaling_points = 25;
  bool efield_generated = true;
  std::int64_t app_fock_n = 100;
  double app_bsv_r = 1.0;

  /// Key/value pairs in file order, for the manifest.
  std::vector<std::pair<std::string, std::string>> entries;
};

/// Flat `section.key = value` lines with `#` comments. Unknown or duplicate
/// keys, malformed values and missing required keys raise ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace qhhg
