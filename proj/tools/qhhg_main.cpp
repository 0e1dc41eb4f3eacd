// qhhg: batch front end. Reads one run config, writes CSV/JSON artifacts and
// a manifest into the output directory.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qhhg/config.hpp"
#include "qhhg/parallel.hpp"
#include "qhhg/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Intraband high-harmonic generation driven by quantum light"};
  app.set_version_flag("--version", std::string(QHHG_VERSION));
  std::string config_path;
  std::string out_dir;
  unsigned threads = 0;
  app.add_option("config", config_path, "run configuration file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides out.dir)");
  app.add_option("--threads", threads, "worker threads (default: QHHG_THREADS or all cores)");
  CLI11_PARSE(app, argc, argv);

  if (threads == 0) {
    if (const char* env = std::getenv("QHHG_THREADS")) {
      try {
        threads = static_cast<unsigned>(std::stoul(env));
      } catch (const std::exception&) {
        std::cerr << "qhhg: ignoring malformed QHHG_THREADS='" << env << "'\n";
      }
    }
  }
  qhhg::set_thread_count(threads);

  try {
    qhhg::RunConfig cfg = qhhg::load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    const qhhg::RunSummary summary = qhhg::run(cfg);
    for (const auto& f : summary.files) std::cout << f << '\n';
  } catch (const qhhg::ConfigError& e) {
    std::cerr << "qhhg: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qhhg: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
