#include "gatom/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace gatom::config {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view text) {
  std::string_view body = trim(text);
  double scale = 1.0;
  // Phases may be written as multiples of pi: "0.25pi", "pi", "-pi".
  if (body.size() >= 2 && body.substr(body.size() - 2) == "pi") {
    scale = std::numbers::pi;
    body = trim(body.substr(0, body.size() - 2));
    if (body.empty() || body == "+") return scale;
    if (body == "-") return -scale;
  }
  double value = 0.0;
  const auto* end = body.data() + body.size();
  const auto [ptr, ec] = std::from_chars(body.data(), end, value);
  if (ec != std::errc{} || ptr != end || body.empty()) {
    throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
  }
  value *= scale;
  if (!std::isfinite(value)) throw ConfigError(std::string(key), "value is not finite");
  return value;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  const std::string_view body = trim(text);
  std::size_t value = 0;
  const auto* end = body.data() + body.size();
  const auto [ptr, ec] = std::from_chars(body.data(), end, value);
  if (ec != std::errc{} || ptr != end || body.empty()) {
    throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_real(key, rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

double positive(std::string_view key, double v) {
  if (!(v > 0.0)) throw ConfigError(std::string(key), "must be > 0");
  return v;
}

double non_negative(std::string_view key, double v) {
  if (!(v >= 0.0)) throw ConfigError(std::string(key), "must be >= 0");
  return v;
}

using Setter = std::function<void(ScenarioConfig&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const auto table = [] {
    std::map<std::string, Setter, std::less<>> m;
    auto ghz = [](auto member) {
      return [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
        member(c) = kTwoPi * positive(k, parse_real(k, v));
      };
    };
    auto ghz_nonneg = [](auto member) {
      return [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
        member(c) = kTwoPi * non_negative(k, parse_real(k, v));
      };
    };

    m["scenario"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      try {
        c.scenario = parse_scenario(trim(v));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(k), e.what());
      }
    };
    m["frame"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      try {
        c.frame = parse_frame(trim(v));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(k), e.what());
      }
    };
    m["output.dir"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      if (trim(v).empty()) throw ConfigError(std::string(k), "must not be empty");
      c.output_dir = std::string(trim(v));
    };

    m["circuit.omega0_ghz"] = ghz([](ScenarioConfig& c) -> double& { return c.circuit.omega0; });
    m["circuit.anharm_ghz"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.circuit.anharm = kTwoPi * parse_real(k, v);
    };
    m["circuit.omega_r1_ghz"] = ghz([](ScenarioConfig& c) -> double& { return c.circuit.omega_r[0]; });
    m["circuit.omega_r2_ghz"] = ghz([](ScenarioConfig& c) -> double& { return c.circuit.omega_r[1]; });
    m["circuit.g1_ghz"] = ghz_nonneg([](ScenarioConfig& c) -> double& { return c.circuit.g[0]; });
    m["circuit.g2_ghz"] = ghz_nonneg([](ScenarioConfig& c) -> double& { return c.circuit.g[1]; });
    m["circuit.qubit_levels"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.circuit.qubit_levels = parse_count(k, v);
      if (c.circuit.qubit_levels != 2 && c.circuit.qubit_levels != 3) {
        throw ConfigError(std::string(k), "must be 2 or 3");
      }
    };
    m["circuit.resonator_levels"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.circuit.resonator_levels = parse_count(k, v);
      if (c.circuit.resonator_levels < 2) throw ConfigError(std::string(k), "must be >= 2");
    };

    for (std::size_t i = 0; i < 2; ++i) {
      const std::string prefix = "drive" + std::to_string(i + 1) + ".";
      m[prefix + "eps_ghz"] = ghz_nonneg([i](ScenarioConfig& c) -> double& { return c.drives.resonator[i].eps; });
      m[prefix + "omega_d_ghz"] = ghz([i](ScenarioConfig& c) -> double& { return c.drives.resonator[i].omega_d; });
      m[prefix + "phi_d_rad"] = [i](ScenarioConfig& c, std::string_view k, std::string_view v) {
        c.drives.resonator[i].phi_d = parse_real(k, v);
      };
      m[prefix + "t_ramp_ns"] = [i](ScenarioConfig& c, std::string_view k, std::string_view v) {
        c.drives.resonator[i].envelope.t_ramp = non_negative(k, parse_real(k, v));
      };
    }

    m["grid.t_end_ns"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.t_end = positive(k, parse_real(k, v));
    };
    m["grid.dt_ns"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.dt = positive(k, parse_real(k, v));
    };
    m["grid.sample_stride"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.sample_stride = parse_count(k, v);
      if (*c.sample_stride < 1) throw ConfigError(std::string(k), "must be >= 1");
    };
    m["analysis.transient_ns"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.transient = non_negative(k, parse_real(k, v));
    };
    m["analysis.inversion_threshold"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.inversion_threshold = parse_real(k, v);
      if (!(c.inversion_threshold > 0.0 && c.inversion_threshold <= 1.0)) {
        throw ConfigError(std::string(k), "must lie in (0, 1]");
      }
    };

    m["sweep.delta_phi_rad"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.sweep_delta_phi = parse_list(k, v);
    };

    m["geometry.resolution"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.geometry_resolution = parse_count(k, v);
      if (c.geometry_resolution < 2) throw ConfigError(std::string(k), "must be >= 2");
    };
    m["geometry.class_tol"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.geometry_class_tol = parse_real(k, v);
      if (!(c.geometry_class_tol > 0.0 && c.geometry_class_tol < 0.5)) {
        throw ConfigError(std::string(k), "must lie in (0, 0.5)");
      }
    };

    m["twomode.g_ghz"] = ghz_nonneg([](ScenarioConfig& c) -> double& { return c.two_mode.g; });
    m["twomode.omega_ghz"] = ghz([](ScenarioConfig& c) -> double& { return c.two_mode.omega; });
    m["twomode.omega0_ghz"] = ghz([](ScenarioConfig& c) -> double& { return c.two_mode.omega0; });
    m["twomode.levels"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.two_mode.levels = parse_count(k, v);
      if (c.two_mode.levels < 2) throw ConfigError(std::string(k), "must be >= 2");
    };
    m["twomode.alpha"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.two_mode_alpha = parse_real(k, v);
    };
    m["twomode.r_a"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.two_mode_geometry.r_a = non_negative(k, parse_real(k, v));
    };
    m["twomode.r_b"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.two_mode_geometry.r_b = non_negative(k, parse_real(k, v));
    };
    m["twomode.theta_a_rad"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.two_mode_geometry.theta_a = parse_real(k, v);
    };
    m["twomode.theta_b_rad"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.two_mode_geometry.theta_b = parse_real(k, v);
    };
    m["twomode.lambda"] = [](ScenarioConfig& c, std::string_view k, std::string_view v) {
      c.two_mode_geometry.lambda = positive(k, parse_real(k, v));
    };
    return m;
  }();
  return table;
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::fig1c: return "fig1c";
    case Scenario::phase_sweep: return "phase-sweep";
    case Scenario::geometry_map: return "geometry-map";
    case Scenario::dark_state: return "dark-state";
    case Scenario::converge: return "converge";
  }
  return "fig1c";
}

std::string_view to_string(Frame f) { return f == Frame::lab ? "lab" : "rotating"; }

Scenario parse_scenario(std::string_view name) {
  for (auto s : {Scenario::fig1c, Scenario::phase_sweep, Scenario::geometry_map,
                 Scenario::dark_state, Scenario::converge}) {
    if (name == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) +
                              "' (expected fig1c, phase-sweep, geometry-map, dark-state or converge)");
}

Frame parse_frame(std::string_view name) {
  if (name == "lab") return Frame::lab;
  if (name == "rotating") return Frame::rotating;
  throw std::invalid_argument("unknown frame '" + std::string(name) + "' (expected lab or rotating)");
}

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

double ScenarioConfig::step() const {
  if (dt) return *dt;
  return frame == Frame::lab ? kLabDt : kRotatingDt;
}

TimeGrid ScenarioConfig::grid() const { return grid(t_end, step()); }

TimeGrid ScenarioConfig::grid(double t_end_override, double dt_override) const {
  TimeGrid g = TimeGrid::with_min_samples(t_end_override, dt_override, kMinSamples);
  if (sample_stride) g.sample_stride = *sample_stride;
  return g;
}

double ScenarioConfig::frame_freq() const {
  return frame == Frame::lab ? 0.0 : circuit.omega0;
}

ScenarioConfig defaults() {
  ScenarioConfig c;
  c.circuit.omega0 = kTwoPi * 5.0;
  c.circuit.anharm = kTwoPi * -0.3;
  c.circuit.omega_r = {kTwoPi * 3.0, kTwoPi * 7.0};
  c.circuit.g = {kTwoPi * 0.08, kTwoPi * 0.08};
  c.circuit.qubit_levels = 2;
  c.circuit.resonator_levels = 4;
  for (auto& d : c.drives.resonator) {
    d.eps = kTwoPi * 0.1;
    d.omega_d = kTwoPi * 5.0;
    d.phi_d = 0.0;
    d.envelope.t_ramp = 1.0;
  }
  c.drives.resonator[0].phi_d = std::numbers::pi;
  c.sweep_delta_phi = {0.0, 0.25 * std::numbers::pi, 0.5 * std::numbers::pi,
                       0.75 * std::numbers::pi, std::numbers::pi};
  c.two_mode.g = kTwoPi * 0.01;
  c.two_mode.omega = kTwoPi * 5.0;
  c.two_mode.omega0 = kTwoPi * 5.0;
  c.two_mode.levels = 10;
  return c;
}

void set(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError(std::string(key), "unknown key");
  it->second(cfg, key, value);
}

void validate(const ScenarioConfig& cfg) {
  try {
    cfg.circuit.validate();
    cfg.drives.validate();
    cfg.two_mode_geometry.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", e.what());
  }
  if (cfg.t_end < cfg.step()) throw ConfigError("grid.t_end_ns", "must be >= grid.dt_ns");
  if (cfg.scenario == Scenario::phase_sweep && cfg.sweep_delta_phi.empty()) {
    throw ConfigError("sweep.delta_phi_rad", "must not be empty");
  }
}

ScenarioConfig parse(std::string_view text) {
  ScenarioConfig cfg = defaults();
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(std::string(key)).second) throw ConfigError(std::string(key), "duplicate key");
    if (value.empty()) throw ConfigError(std::string(key), "missing value");
    set(cfg, key, value);
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::vector<std::string_view> known_keys() {
  std::vector<std::string_view> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

}  // namespace gatom::config
