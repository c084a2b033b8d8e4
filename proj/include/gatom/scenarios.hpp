// Scenario runners behind the `simulate` tool. Runners compute results and
// render file contents; writing to disk is a separate step so a failed run
// leaves nothing behind.
#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gatom/collective.hpp"
#include "gatom/config.hpp"
#include "gatom/dynamics.hpp"

namespace gatom::scenarios {

struct OutputFile {
  std::string name;
  std::string content;
};

// Nine significant digits, the precision of every CSV and summary value.
std::string format_number(double v);

inline constexpr const char* kTraceHeader =
    "t_ns,pe_exact,pe_eff,n_r1,n_r2,re_coh_r1,im_coh_r1,re_coh_r2,im_coh_r2,norm_err";

using TraceRow = std::array<double, 10>;

struct TraceSummary {
  std::optional<double> tau_e;
  double pe_max = 0.0;
  double n_r1_mean = 0.0;
  double n_r2_mean = 0.0;
  double norm_err_max = 0.0;
  double pe_diff_max = 0.0;  // max |pe_exact - pe_eff|
};

/// Computed from the rows as printed, so a summary can be reproduced from its CSV.
TraceSummary summarize(const std::vector<TraceRow>& rows, double transient, double threshold);

struct TraceCase {
  std::string label;
  double delta_phi = 0.0;
  circuit::DriveSpec drives;
  Trajectory exact;
  Trajectory effective;
  std::vector<TraceRow> rows;
  TraceSummary summary;
  double seconds = 0.0;  // wall time of the exact integration
};

/// Out-of-phase (δφ = π), in-phase (δφ = 0) and single-drive runs.
struct Fig1cResult {
  std::vector<TraceCase> cases;
  const TraceCase& find(const std::string& label) const;
};

Fig1cResult run_fig1c(const config::ScenarioConfig& cfg);

// One exact + effective run for an arbitrary drive configuration.
TraceCase run_trace(const config::ScenarioConfig& cfg, const circuit::DriveSpec& drives,
                    std::string label, double t_end);

struct SweepRow {
  double delta_phi = 0.0;
  double pe_max = 0.0;
  std::optional<double> tau_e;
  double omega_res_eff = 0.0;  // |Ω_res| of the effective model, rad/ns
  double t_end = 0.0;
};

struct PhaseSweepResult {
  std::vector<SweepRow> rows;
  double t_ramp = 0.0;
};

/// The window of each point is stretched to 1.5x the predicted inversion
/// time when the configured t_end is too short to contain it.
PhaseSweepResult run_phase_sweep(const config::ScenarioConfig& cfg);

struct GeometryRow {
  double path_diff_over_lambda = 0.0;
  double beta_over_alpha = 0.0;
  double e_res = 0.0;
  collective::Interference cls = collective::Interference::partial;
};

/// Path difference over [0, 2]λ and β/α over [-1, 1], both at the configured
/// resolution, with α = 1.
std::vector<GeometryRow> run_geometry_map(const config::ScenarioConfig& cfg);

struct DarkStateCase {
  std::string label;
  collective::TwoModeState state;
  Trajectory trajectory;
  double pe_max = 0.0;
  double n_total_min = 0.0;
  double n_total_max = 0.0;
  double n_col_initial = 0.0;
};

std::vector<DarkStateCase> run_dark_state(const config::ScenarioConfig& cfg);

struct ConvergeRow {
  std::string study;  // "levels" or "dt"
  std::size_t resonator_levels = 0;
  double dt = 0.0;
  double max_abs_dpe = 0.0;  // against the study's reference run
};

struct ConvergeResult {
  std::vector<ConvergeRow> rows;
  std::array<double, 2> dt_ratios{};  // e(dt0)/e(dt0/2), e(dt0/2)/e(dt0/4)
  double truncation_4_vs_6 = 0.0;
  bool converged = false;
};

inline constexpr double kMinConvergenceRatio = 12.0;
inline constexpr double kMaxTruncationChange = 1e-4;

/// Out-of-phase case at resonator levels 3..6 (reference 6) and at dt0,
/// dt0/2, dt0/4 (reference dt0/8), all with plain RK4.
ConvergeResult run_converge(const config::ScenarioConfig& cfg);

std::vector<OutputFile> render(const Fig1cResult& r, const config::ScenarioConfig& cfg);
std::vector<OutputFile> render(const PhaseSweepResult& r, const config::ScenarioConfig& cfg);
std::vector<OutputFile> render(const std::vector<GeometryRow>& r, const config::ScenarioConfig& cfg);
std::vector<OutputFile> render(const std::vector<DarkStateCase>& r, const config::ScenarioConfig& cfg);
std::vector<OutputFile> render(const ConvergeResult& r, const config::ScenarioConfig& cfg);

struct RunOutcome {
  std::vector<OutputFile> files;
  bool ok = true;  // false when a scenario's own checks fail (converge)
  std::vector<std::string> notes;
};

RunOutcome run(const config::ScenarioConfig& cfg);

void write_files(const std::filesystem::path& dir, const std::vector<OutputFile>& files);

}  // namespace gatom::scenarios
