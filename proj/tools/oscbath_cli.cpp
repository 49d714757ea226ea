#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "oscbath/config.hpp"
#include "oscbath/errors.hpp"
#include "oscbath/experiments.hpp"

namespace fs = std::filesystem;
using namespace oscbath;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitUsage = 64;

int emit(const ExperimentResult& result, const std::string& source, const std::string& out_dir) {
  if (out_dir.empty()) {
    write_csv(result, std::cout);
    return 0;
  }
  fs::create_directories(out_dir);
  const fs::path path = fs::path(out_dir) / (fs::path(source).stem().string() + ".csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(result, out);
  std::cerr << "wrote " << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open oscillator dynamics: exact Gaussian simulation vs Markovian master equations"};
  app.require_subcommand(1);

  std::string out_dir;
  int threads = 1;
  std::string format = "csv";
  app.add_option("--out", out_dir, "Directory for CSV output (default: stdout)");
  app.add_option("--threads", threads, "Worker threads for sweep points")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv"}));

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file")->required();
  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", config_path, "Config file")->required();
  auto* oracle = app.add_subcommand("oracle", "Compare a moment flow with the Fock-space oracle");
  oracle->add_option("spec", config_path, "Config file with an [oracle] section")->required();
  app.fallthrough();

  if (argc > 1) {
    const std::string first = argv[1];
    if (first.empty() || first[0] != '-') {
      if (first != "run" && first != "validate" && first != "oracle") {
        std::cerr << "unknown subcommand '" << first << "'\n\n" << app.help();
        return kExitUsage;
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const Config cfg = Config::load(config_path);
    if (validate->parsed()) {
      const ScenarioConfig s = make_scenario(cfg);
      for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
      for (double v : s.sweep_values) {
        Config point = cfg;
        point.set(s.sweep_param, format_number(v));
        make_scenario(point);
      }
      std::cout << "ok\n";
      return 0;
    }
    if (oracle->parsed()) return emit(run_oracle(cfg), config_path, out_dir);
    return emit(run_experiment(cfg, threads), config_path, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
