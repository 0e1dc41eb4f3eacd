#pragma once

#include <string>
#include <vector>

#include "qhhg/config.hpp"

namespace qhhg {

struct RunSummary {
  std::string out_dir;
  std::vector<std::string> files;  // paths of everything written, manifest last
};

/// Executes one configured run and writes its CSV/JSON artifacts plus
/// manifest.json into cfg.out_dir. Throws on any failure.
RunSummary run(const RunConfig& cfg);

/// printf("%.17g") of v.
std::string format_double(double v);

}  // namespace qhhg
