// Flat `key = value` scenario configuration.
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gatom/circuit.hpp"
#include "gatom/collective.hpp"
#include "gatom/dynamics.hpp"

namespace gatom::config {

enum class Scenario { fig1c, phase_sweep, geometry_map, dark_state, converge };
enum class Frame { lab, rotating };

std::string_view to_string(Scenario s);
std::string_view to_string(Frame f);
Scenario parse_scenario(std::string_view name);
Frame parse_frame(std::string_view name);

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

inline constexpr double kLabDt = 5e-4;       // ns
inline constexpr double kRotatingDt = 1e-2;  // ns
inline constexpr std::size_t kMinSamples = 600;

struct ScenarioConfig {
  Scenario scenario = Scenario::fig1c;
  Frame frame = Frame::rotating;
  std::filesystem::path output_dir = "out";

  // Frequencies already converted to rad/ns.
  circuit::CircuitSpec circuit;
  circuit::DriveSpec drives;

  double t_end = 60.0;
  std::optional<double> dt;
  std::optional<std::size_t> sample_stride;
  double transient = 5.0;
  double inversion_threshold = 0.5;

  std::vector<double> sweep_delta_phi;

  std::size_t geometry_resolution = 41;
  double geometry_class_tol = 0.01;

  collective::TwoModeModel two_mode;
  collective::ModeGeometry two_mode_geometry;
  double two_mode_alpha = 0.5;

  double step() const;
  TimeGrid grid() const;
  TimeGrid grid(double t_end_override, double dt_override) const;
  double frame_freq() const;  // 0 in the lab frame, ω0 in the rotating frame
};

/// Defaults: the out-of-phase drive experiment with ω0 = 5 GHz, resonators at
/// 3 and 7 GHz, g = 80 MHz, ε = 100 MHz, drives at ω0 with a 1 ns ramp.
ScenarioConfig defaults();

/// Parses config text over the defaults. Unknown keys, duplicates and
/// malformed values throw ConfigError naming the key.
ScenarioConfig parse(std::string_view text);
ScenarioConfig load(const std::filesystem::path& path);

// Applies one `key = value` pair to an existing config.
void set(ScenarioConfig& cfg, std::string_view key, std::string_view value);

void validate(const ScenarioConfig& cfg);

std::vector<std::string_view> known_keys();

}  // namespace gatom::config
