// simulate --config <path> [--out <dir>] [--frame lab|rotating] [--scenario <name>]
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gatom/config.hpp"
#include "gatom/dynamics.hpp"
#include "gatom/effective.hpp"
#include "gatom/scenarios.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Giant-atom interference simulator"};
  std::string config_path;
  std::string out_dir;
  std::string frame;
  std::string scenario;
  app.add_option("--config", config_path, "Scenario config file (key = value lines)")->required();
  app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  app.add_option("--frame", frame, "Integration frame: lab or rotating (overrides frame)");
  app.add_option("--scenario", scenario,
                 "fig1c, phase-sweep, geometry-map, dark-state or converge (overrides scenario)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  using namespace gatom;
  config::ScenarioConfig cfg;
  try {
    cfg = config::load(config_path);
    if (!out_dir.empty()) config::set(cfg, "output.dir", out_dir);
    if (!frame.empty()) config::set(cfg, "frame", frame);
    if (!scenario.empty()) config::set(cfg, "scenario", scenario);
    config::validate(cfg);
  } catch (const config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  for (const auto& w : cfg.circuit.diagnostics()) std::cerr << "warning: " << w << "\n";
  try {
    for (const auto& w : effective::derive_effective(cfg.circuit, cfg.drives).diagnostics()) {
      std::cerr << "warning: " << w << "\n";
    }
  } catch (const std::invalid_argument& e) {
    if (cfg.scenario != config::Scenario::geometry_map && cfg.scenario != config::Scenario::dark_state) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    }
  }

  scenarios::RunOutcome outcome;
  try {
    outcome = scenarios::run(cfg);
  } catch (const IntegrationDiverged& e) {
    std::cerr << "numerical failure in scenario " << config::to_string(cfg.scenario) << ": " << e.what()
              << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    scenarios::write_files(cfg.output_dir, outcome.files);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  for (const auto& f : outcome.files) std::cout << (cfg.output_dir / f.name).string() << "\n";
  for (const auto& note : outcome.notes) std::cerr << note << "\n";
  return outcome.ok ? 0 : kExitNumerical;
}
