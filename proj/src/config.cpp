#include "qhhg/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qhhg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string text(const std::string& key) {
    used_.insert(key);
    return entries_.at(key).value;
  }

  double number(const std::string& key) {
    const Entry& e = entries_.at(key);
    used_.insert(key);
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      throw ConfigError("line " + std::to_string(e.line) + ": '" + key + "' expects a number, got '" +
                            e.value + "'",
                        e.line, key);
    }
    return v;
  }

  long long integer(const std::string& key) {
    const Entry& e = entries_.at(key);
    used_.insert(key);
    long long v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
      // accept integral values written in float notation, e.g. 7.35e11
      double d = 0.0;
      auto [p2, e2] = std::from_chars(begin, end, d);
      if (e2 != std::errc() || p2 != end || d != std::floor(d) || std::abs(d) > 9e18) {
        throw ConfigError("line " + std::to_string(e.line) + ": '" + key +
                              "' expects an integer, got '" + e.value + "'",
                          e.line, key);
      }
      v = static_cast<long long>(d);
    }
    return v;
  }

  bool boolean(const std::string& key) {
    const std::string v = text(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(key, "expects true or false, got '" + v + "'");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const int line = entries_.count(key) ? entries_.at(key).line : 0;
    throw ConfigError((line ? "line " + std::to_string(line) + ": " : std::string()) + "'" + key +
                          "' " + what,
                      line, key);
  }

  [[noreturn]] static void missing(const std::string& key, const std::string& why) {
    throw ConfigError("missing required key '" + key + "' (" + why + ")", 0, key);
  }

  int line(const std::string& key) const { return entries_.at(key).line; }

 private:
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "run.kind", "run.convergence_check", "out.dir",
      "band.a", "band.occupied", "band.q_list", "band.spin",
      "field.kind", "field.mean_photons", "field.n", "field.r", "field.alpha_abs", "field.alpha_phase",
      "pulse.omega0", "pulse.g0", "pulse.flat_cycles", "pulse.ramp_cycles", "pulse.envelope",
      "grid.samples_per_cycle", "grid.zero_pad",
      "quad.radial_nodes", "quad.angular_nodes", "quad.phase_nodes", "quad.rel_tail",
      "floquet.n_max", "spectrum.n_max",
      "scaling.order", "scaling.min_photons", "scaling.max_photons", "scaling.points",
      "efield.kind", "app.fock_n", "app.bsv_r"};
  return keys;
}

bool is_band_coefficient(const std::string& key, int* l) {
  if (key.rfind("band.b", 0) != 0 || key.size() <= 6) return false;
  int v = 0;
  const char* begin = key.data() + 6;
  const char* end = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || v < 1 || v > 64) return false;
  *l = v;
  return true;
}

RunKind run_kind_from(Reader& r) {
  const std::string v = r.text("run.kind");
  if (v == "spectrum") return RunKind::Spectrum;
  if (v == "floquet") return RunKind::Floquet;
  if (v == "cutoff") return RunKind::Cutoff;
  if (v == "scaling") return RunKind::Scaling;
  if (v == "efield") return RunKind::Efield;
  if (v == "validate-app") return RunKind::ValidateApp;
  r.fail("run.kind", "must be one of spectrum, floquet, cutoff, scaling, efield, validate-app; got '" + v + "'");
}

std::vector<double> parse_list(Reader& r, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(r.text(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) r.fail(key, "has a malformed entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) r.fail(key, "is empty");
  return out;
}

DrivingField field_from(Reader& r, FieldKind kind) {
  switch (kind) {
    case FieldKind::Coherent:
      if (r.has("field.alpha_abs")) {
        const double amp = r.number("field.alpha_abs");
        const double phase = r.has("field.alpha_phase") ? r.number("field.alpha_phase") : 0.0;
        if (amp < 0.0) r.fail("field.alpha_abs", "must be >= 0");
        return DrivingField::coherent(std::polar(amp, phase));
      }
      if (r.has("field.mean_photons")) {
        const double n = r.number("field.mean_photons");
        if (n < 0.0) r.fail("field.mean_photons", "must be >= 0");
        const double phase = r.has("field.alpha_phase") ? r.number("field.alpha_phase") : 0.0;
        return DrivingField::coherent(std::polar(std::sqrt(n), phase));
      }
      Reader::missing("field.mean_photons", "coherent field needs field.mean_photons or field.alpha_abs");
    case FieldKind::Thermal: {
      if (!r.has("field.mean_photons")) Reader::missing("field.mean_photons", "thermal field");
      const double n = r.number("field.mean_photons");
      if (!(n > 0.0)) r.fail("field.mean_photons", "must be > 0");
      return DrivingField::thermal(n);
    }
    case FieldKind::Fock: {
      if (r.has("field.n")) {
        const long long n = r.integer("field.n");
        if (n < 0) r.fail("field.n", "must be >= 0");
        return DrivingField::fock(n);
      }
      if (!r.has("field.mean_photons")) Reader::missing("field.mean_photons", "Fock field needs field.n or field.mean_photons");
      const double n = r.number("field.mean_photons");
      if (n < 0.0) r.fail("field.mean_photons", "must be >= 0");
      return DrivingField::from_mean_photons(FieldKind::Fock, n);
    }
    case FieldKind::BSV: {
      if (r.has("field.r")) return DrivingField::bsv(r.number("field.r"));
      if (!r.has("field.mean_photons")) Reader::missing("field.mean_photons", "BSV field needs field.r or field.mean_photons");
      const double n = r.number("field.mean_photons");
      if (n < 0.0) r.fail("field.mean_photons", "must be >= 0");
      return DrivingField::from_mean_photons(FieldKind::BSV, n);
    }
  }
  throw ConfigError("unknown field kind", 0, "field.kind");
}

int positive_int(Reader& r, const std::string& key, int minimum) {
  const long long v = r.integer(key);
  if (v < minimum || v > 100000000) r.fail(key, "must be an integer >= " + std::to_string(minimum));
  return static_cast<int>(v);
}

}  // namespace

std::string to_string(RunKind kind) {
  switch (kind) {
    case RunKind::Spectrum: return "spectrum";
    case RunKind::Floquet: return "floquet";
    case RunKind::Cutoff: return "cutoff";
    case RunKind::Scaling: return "scaling";
    case RunKind::Efield: return "efield";
    case RunKind::ValidateApp: return "validate-app";
  }
  return "unknown";
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'section.key = value'", line_no, "");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    int l = 0;
    if (!known_keys().count(key) && !is_band_coefficient(key, &l)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'", line_no, key);
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": '" + key + "' has no value", line_no, key);
    }
    if (entries.count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key +
                            "' (first set on line " + std::to_string(entries[key].line) + ")",
                        line_no, key);
    }
    entries[key] = {value, line_no};
    cfg.entries.emplace_back(key, value);
  }
  Reader r(entries);
  if (!r.has("run.kind")) Reader::missing("run.kind", "every run");
  cfg.kind = run_kind_from(r);
  if (r.has("out.dir")) cfg.out_dir = r.text("out.dir");
  if (r.has("run.convergence_check")) cfg.convergence_check = r.boolean("run.convergence_check");

  // band
  {
    const BandModel zno = BandModel::zno();
    const double a = r.has("band.a") ? r.number("band.a") : zno.a();
    std::map<int, double> coeffs;
    for (const auto& [key, e] : entries) {
      int l = 0;
      if (is_band_coefficient(key, &l)) coeffs[l] = r.number(key);
    }
    std::vector<double> b = zno.b();
    if (!coeffs.empty()) {
      b.assign(static_cast<std::size_t>(coeffs.rbegin()->first), 0.0);
      for (const auto& [l, v] : coeffs) b[l - 1] = v;
    }
    const std::string occ = r.has("band.occupied") ? r.text("band.occupied") : "auto10";
    std::vector<double> q;
    if (occ == "auto10") {
      if (r.has("band.q_list")) r.fail("band.q_list", "is only used with band.occupied = explicit");
      q = BandModel::symmetric_occupation(a > 0.0 ? a : 1.0, 2, 10);
    } else if (occ == "explicit") {
      if (!r.has("band.q_list")) Reader::missing("band.q_list", "band.occupied = explicit");
      q = parse_list(r, "band.q_list");
    } else {
      r.fail("band.occupied", "must be auto10 or explicit");
    }
    const int spin = r.has("band.spin") ? positive_int(r, "band.spin", 1) : 2;
    try {
      cfg.band = BandModel(a, b, q, spin);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("band section: ") + e.what(), r.has("band.a") ? r.line("band.a") : 0, "band");
    }
  }

  // pulse and grid
  if (r.has("pulse.omega0")) cfg.pulse.omega0 = r.number("pulse.omega0");
  if (r.has("pulse.g0")) cfg.pulse.g0 = r.number("pulse.g0");
  if (r.has("pulse.flat_cycles")) cfg.pulse.flat_cycles = positive_int(r, "pulse.flat_cycles", 0);
  if (r.has("pulse.ramp_cycles")) cfg.pulse.ramp_cycles = positive_int(r, "pulse.ramp_cycles", 0);
  if (r.has("pulse.envelope")) {
    const std::string v = r.text("pulse.envelope");
    if (v == "flat_top_sin2") cfg.pulse.envelope = EnvelopeKind::FlatTopSin2;
    else if (v == "none") cfg.pulse.envelope = EnvelopeKind::None;
    else r.fail("pulse.envelope", "must be flat_top_sin2 or none");
  }
  if (!(cfg.pulse.omega0 > 0.0)) r.fail("pulse.omega0", "must be > 0");
  if (!(cfg.pulse.g0 >= 0.0)) r.fail("pulse.g0", "must be >= 0");
  if (cfg.pulse.total_cycles() < 1) r.fail("pulse.flat_cycles", "pulse has zero length");
  if (r.has("grid.samples_per_cycle")) cfg.samples_per_cycle = positive_int(r, "grid.samples_per_cycle", 64);
  if (r.has("grid.zero_pad")) cfg.zero_pad = positive_int(r, "grid.zero_pad", 1);

  // quadrature
  if (r.has("quad.radial_nodes")) cfg.quad.radial_nodes = positive_int(r, "quad.radial_nodes", 16);
  if (r.has("quad.angular_nodes")) cfg.quad.angular_nodes = positive_int(r, "quad.angular_nodes", 1);
  if (r.has("quad.phase_nodes")) cfg.quad.phase_nodes = positive_int(r, "quad.phase_nodes", 1);
  if (r.has("quad.rel_tail")) {
    cfg.quad.rel_tail = r.number("quad.rel_tail");
    if (!(cfg.quad.rel_tail > 0.0 && cfg.quad.rel_tail < 1.0)) r.fail("quad.rel_tail", "must lie in (0, 1)");
  }

  // field
  const bool needs_field = cfg.kind == RunKind::Spectrum || cfg.kind == RunKind::Floquet ||
                           cfg.kind == RunKind::Scaling || cfg.kind == RunKind::Efield;
  if (r.has("field.kind")) {
    FieldKind kind{};
    try {
      kind = field_kind_from_string(r.text("field.kind"));
    } catch (const std::invalid_argument&) {
      r.fail("field.kind", "must be coherent, thermal, fock or bsv");
    }
    if (cfg.kind == RunKind::Scaling) {
      cfg.field = DrivingField::from_mean_photons(kind, 1.0);
    } else if (cfg.kind != RunKind::Cutoff || r.has("field.n") || r.has("field.r") ||
               r.has("field.alpha_abs") || r.has("field.mean_photons")) {
      cfg.field = field_from(r, kind);
    }
  } else if (needs_field) {
    Reader::missing("field.kind", "run.kind = " + to_string(cfg.kind));
  }
  if (r.has("field.mean_photons")) {
    cfg.mean_photons = r.number("field.mean_photons");
  } else if (cfg.field) {
    cfg.mean_photons = cfg.field->mean_photon_number();
  }
  if (cfg.kind == RunKind::Cutoff && !r.has("field.mean_photons")) {
    Reader::missing("field.mean_photons", "run.kind = cutoff");
  }

  // run-specific
  if (r.has("floquet.n_max")) {
    cfg.floquet_n_max = positive_int(r, "floquet.n_max", 1);
    if (cfg.floquet_n_max % 2 == 0) r.fail("floquet.n_max", "must be odd");
  }
  if (r.has("spectrum.n_max")) cfg.spectrum_n_max = positive_int(r, "spectrum.n_max", 1);
  if (r.has("scaling.order")) {
    cfg.scaling_order = positive_int(r, "scaling.order", 1);
    if (cfg.scaling_order % 2 == 0) r.fail("scaling.order", "must be odd");
  }
  if (r.has("scaling.min_photons")) cfg.scaling_min_photons = r.number("scaling.min_photons");
  if (r.has("scaling.max_photons")) cfg.scaling_max_photons = r.number("scaling.max_photons");
  if (!(cfg.scaling_min_photons > 0.0)) r.fail("scaling.min_photons", "must be > 0");
  if (!(cfg.scaling_max_photons >= cfg.scaling_min_photons)) r.fail("scaling.max_photons", "must be >= scaling.min_photons");
  if (r.has("scaling.points")) cfg.scaling_points = positive_int(r, "scaling.points", 1);
  if (r.has("efield.kind")) {
    const std::string v = r.text("efield.kind");
    if (v == "generated") cfg.efield_generated = true;
    else if (v == "driving") cfg.efield_generated = false;
    else r.fail("efield.kind", "must be generated or driving");
  }
  if (r.has("app.fock_n")) {
    const long long n = r.integer("app.fock_n");
    if (n < 1) r.fail("app.fock_n", "must be >= 1");
    cfg.app_fock_n = n;
  }
  if (r.has("app.bsv_r")) cfg.app_bsv_r = r.number("app.bsv_r");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, "");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace qhhg
