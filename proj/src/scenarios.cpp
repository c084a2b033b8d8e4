#include "gatom/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gatom/circuit.hpp"
#include "gatom/effective.hpp"

namespace gatom::scenarios {

using config::ScenarioConfig;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

double round_trip(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

std::string summary_line(const std::string& key, const std::string& value) {
  return key + " = " + value + "\n";
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

double common_ramp(const circuit::DriveSpec& drives) {
  double ramp = 0.0;
  for (const auto& d : drives.resonator) {
    if (d.eps > 0.0) ramp = std::max(ramp, d.envelope.t_ramp);
  }
  return ramp;
}

circuit::DriveSpec with_delta_phi(circuit::DriveSpec drives, double delta_phi) {
  drives.resonator[0].phi_d = drives.resonator[1].phi_d + delta_phi;
  return drives;
}

}  // namespace

TraceSummary summarize(const std::vector<TraceRow>& rows, double transient, double threshold) {
  TraceSummary s;
  std::vector<double> times, pe;
  std::size_t late = 0;
  for (const auto& row : rows) {
    times.push_back(row[0]);
    pe.push_back(row[1]);
    s.pe_max = std::max(s.pe_max, row[1]);
    s.pe_diff_max = std::max(s.pe_diff_max, std::abs(row[1] - row[2]));
    s.norm_err_max = std::max(s.norm_err_max, row[9]);
    if (row[0] >= transient) {
      s.n_r1_mean += row[3];
      s.n_r2_mean += row[4];
      ++late;
    }
  }
  if (late > 0) {
    s.n_r1_mean /= static_cast<double>(late);
    s.n_r2_mean /= static_cast<double>(late);
  }
  s.tau_e = estimate_inversion_time(times, pe, threshold);
  return s;
}

const TraceCase& Fig1cResult::find(const std::string& label) const {
  for (const auto& c : cases) {
    if (c.label == label) return c;
  }
  throw std::out_of_range("Fig1cResult: no case '" + label + "'");
}

TraceCase run_trace(const ScenarioConfig& cfg, const circuit::DriveSpec& drives, std::string label,
                    double t_end) {
  TraceCase c;
  c.label = std::move(label);
  c.drives = drives;
  c.delta_phi = drives.delta_phi();
  const TimeGrid grid = cfg.grid(t_end, cfg.step());

  const auto start = std::chrono::steady_clock::now();
  c.exact = circuit::simulate(cfg.circuit, drives, cfg.frame_freq(), grid);
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const auto params = effective::derive_effective(cfg.circuit, drives);
  c.effective = effective::effective_population(params, cfg.circuit.omega0, grid);

  const auto pe = c.exact.channel("pe");
  const auto pe_eff = c.effective.channel("pe");
  const auto n1 = c.exact.channel("n_r1");
  const auto n2 = c.exact.channel("n_r2");
  const auto coh1 = c.exact.channel("coh_r1");
  const auto coh2 = c.exact.channel("coh_r2");
  const auto& times = c.exact.times();
  c.rows.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    TraceRow row{times[i],     pe[i].real(),   pe_eff[i].real(), n1[i].real(),
                 n2[i].real(), coh1[i].real(), coh1[i].imag(),   coh2[i].real(),
                 coh2[i].imag(), c.exact.norm_errors()[i]};
    for (double& v : row) v = round_trip(v);
    c.rows.push_back(row);
  }
  c.summary = summarize(c.rows, cfg.transient, cfg.inversion_threshold);
  return c;
}

Fig1cResult run_fig1c(const ScenarioConfig& cfg) {
  Fig1cResult r;
  r.cases.push_back(run_trace(cfg, with_delta_phi(cfg.drives, std::numbers::pi), "out_of_phase", cfg.t_end));
  r.cases.push_back(run_trace(cfg, with_delta_phi(cfg.drives, 0.0), "in_phase", cfg.t_end));

  // A single drive inverts at twice the out-of-phase time, so it needs a longer window.
  auto single = with_delta_phi(cfg.drives, std::numbers::pi);
  single.resonator[1].eps = 0.0;
  const auto params = effective::derive_effective(cfg.circuit, single);
  double t_end = cfg.t_end;
  if (const double rate = effective::steady_resultant_modulus(params); rate > 0.0) {
    t_end = std::max(t_end, 1.5 * effective::predicted_inversion_time(rate, common_ramp(single)));
  }
  r.cases.push_back(run_trace(cfg, single, "single_drive", t_end));
  return r;
}

PhaseSweepResult run_phase_sweep(const ScenarioConfig& cfg) {
  if (cfg.sweep_delta_phi.empty()) throw std::invalid_argument("run_phase_sweep: empty delta_phi list");
  PhaseSweepResult r;
  r.t_ramp = common_ramp(cfg.drives);
  for (double dphi : cfg.sweep_delta_phi) {
    const auto drives = with_delta_phi(cfg.drives, dphi);
    const auto params = effective::derive_effective(cfg.circuit, drives);
    SweepRow row;
    row.delta_phi = dphi;
    row.omega_res_eff = effective::steady_resultant_modulus(params);
    row.t_end = cfg.t_end;
    // Below ~1e-9 rad/ns the predicted inversion lies beyond any practical window.
    if (row.omega_res_eff > 1e-9) {
      const double predicted = effective::predicted_inversion_time(row.omega_res_eff, r.t_ramp);
      row.t_end = std::max(row.t_end, 1.5 * predicted);
    }
    const auto trace = run_trace(cfg, drives, "sweep", row.t_end);
    row.pe_max = trace.summary.pe_max;
    row.tau_e = trace.summary.tau_e;
    r.rows.push_back(row);
  }
  return r;
}

std::vector<GeometryRow> run_geometry_map(const ScenarioConfig& cfg) {
  const std::size_t n = cfg.geometry_resolution;
  if (n < 2) throw std::invalid_argument("run_geometry_map: resolution must be >= 2");
  std::vector<GeometryRow> rows;
  rows.reserve(n * n);
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double path = 2.0 * static_cast<double>(i) / last;
    for (std::size_t j = 0; j < n; ++j) {
      const double ratio = -1.0 + 2.0 * static_cast<double>(j) / last;
      collective::ModeGeometry geom;
      geom.lambda = 1.0;
      geom.r_b = path;
      const collective::TwoModeState state{1.0, ratio};
      GeometryRow row;
      row.path_diff_over_lambda = path;
      row.beta_over_alpha = ratio;
      row.e_res = collective::resultant_amplitude(state, geom);
      row.cls = collective::interference_class(state, geom, cfg.geometry_class_tol);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<DarkStateCase> run_dark_state(const ScenarioConfig& cfg) {
  const auto& geom = cfg.two_mode_geometry;
  const double alpha = cfg.two_mode_alpha;
  // Amplitudes that cancel (dark) or add (bright) after the geometric phases.
  const Complex a = alpha * std::exp(-kI * geom.phase_a());
  const Complex b = alpha * std::exp(-kI * geom.phase_b());
  const TimeGrid grid = cfg.grid();

  std::vector<DarkStateCase> out;
  for (const auto& [label, state] : {std::pair{std::string("dark"), collective::TwoModeState{a, -b}},
                                     std::pair{std::string("bright"), collective::TwoModeState{a, b}}}) {
    DarkStateCase c;
    c.label = label;
    c.state = state;
    c.trajectory = collective::simulate_two_mode_quantum(state, geom, cfg.two_mode, grid);
    const auto pe = c.trajectory.real("pe");
    const auto na = c.trajectory.real("n_a");
    const auto nb = c.trajectory.real("n_b");
    c.pe_max = *std::max_element(pe.begin(), pe.end());
    c.n_total_min = c.n_total_max = na[0] + nb[0];
    for (std::size_t i = 0; i < na.size(); ++i) {
      c.n_total_min = std::min(c.n_total_min, na[i] + nb[i]);
      c.n_total_max = std::max(c.n_total_max, na[i] + nb[i]);
    }
    c.n_col_initial = c.trajectory.channel("n_col")[0].real();
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

double max_abs_difference(const Trajectory& a, const Trajectory& b) {
  // Both trajectories sample the same physical times.
  const auto pa = a.real("pe");
  const auto pb = b.real("pe");
  if (pa.size() != pb.size()) throw std::logic_error("convergence runs sampled differently");
  double worst = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (std::abs(a.times()[i] - b.times()[i]) > 1e-9) {
      throw std::logic_error("convergence runs sampled at different times");
    }
    worst = std::max(worst, std::abs(pa[i] - pb[i]));
  }
  return worst;
}

}  // namespace

ConvergeResult run_converge(const ScenarioConfig& cfg) {
  const auto drives = with_delta_phi(cfg.drives, std::numbers::pi);
  const double dt0 = cfg.step();
  const TimeGrid base = cfg.grid();
  const IntegratorOptions rk4{Method::rk4, 1e-6};

  auto run_at = [&](std::size_t levels, std::size_t refine) {
    auto spec = cfg.circuit;
    spec.resonator_levels = levels;
    TimeGrid grid = base;
    grid.dt = dt0 / static_cast<double>(refine);
    grid.sample_stride = base.sample_stride * refine;
    return circuit::simulate(spec, drives, cfg.frame_freq(), grid, rk4);
  };

  ConvergeResult r;
  const Trajectory levels_ref = run_at(6, 1);
  for (std::size_t levels : {3, 4, 5}) {
    const double d = max_abs_difference(run_at(levels, 1), levels_ref);
    r.rows.push_back({"levels", levels, dt0, d});
    if (levels == 4) r.truncation_4_vs_6 = d;
  }
  r.rows.push_back({"levels", 6, dt0, 0.0});

  const std::size_t levels = cfg.circuit.resonator_levels;
  const Trajectory dt_ref = run_at(levels, 8);
  std::array<double, 3> errors{};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t refine = std::size_t{1} << i;
    errors[i] = max_abs_difference(run_at(levels, refine), dt_ref);
    r.rows.push_back({"dt", levels, dt0 / static_cast<double>(refine), errors[i]});
  }
  r.rows.push_back({"dt", levels, dt0 / 8.0, 0.0});
  r.dt_ratios = {errors[0] / errors[1], errors[1] / errors[2]};
  r.converged = r.dt_ratios[0] >= kMinConvergenceRatio && r.dt_ratios[1] >= kMinConvergenceRatio &&
                r.truncation_4_vs_6 < kMaxTruncationChange;
  return r;
}

namespace {

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out = std::string(kTraceHeader) + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string trace_summary(const TraceCase& c, const ScenarioConfig& cfg) {
  std::string out;
  out += summary_line("scenario", std::string(config::to_string(cfg.scenario)));
  out += summary_line("case", c.label);
  out += summary_line("frame", std::string(config::to_string(cfg.frame)));
  out += summary_line("delta_phi_rad", format_number(c.delta_phi));
  out += summary_line("tau_e_ns", optional_number(c.summary.tau_e));
  out += summary_line("pe_max", format_number(c.summary.pe_max));
  out += summary_line("n_r1_mean", format_number(c.summary.n_r1_mean));
  out += summary_line("n_r2_mean", format_number(c.summary.n_r2_mean));
  out += summary_line("norm_err_max", format_number(c.summary.norm_err_max));
  out += summary_line("pe_exact_eff_max_abs_diff", format_number(c.summary.pe_diff_max));
  return out;
}

}  // namespace

std::vector<OutputFile> render(const Fig1cResult& r, const ScenarioConfig& cfg) {
  std::vector<OutputFile> files;
  for (const auto& c : r.cases) {
    files.push_back({"fig1c_" + c.label + ".csv", trace_csv(c.rows)});
    files.push_back({"fig1c_" + c.label + "_summary.txt", trace_summary(c, cfg)});
  }
  return files;
}

std::vector<OutputFile> render(const PhaseSweepResult& r, const ScenarioConfig&) {
  std::string csv = "delta_phi,pe_max,tau_e_ns,omega_res_eff\n";
  for (const auto& row : r.rows) {
    csv += format_number(row.delta_phi) + "," + format_number(row.pe_max) + "," +
           optional_number(row.tau_e) + "," + format_number(row.omega_res_eff) + "\n";
  }
  return {{"phase_sweep.csv", csv}};
}

std::vector<OutputFile> render(const std::vector<GeometryRow>& rows, const ScenarioConfig&) {
  std::string csv = "path_diff_over_lambda,beta_over_alpha,e_res,class\n";
  for (const auto& row : rows) {
    csv += format_number(row.path_diff_over_lambda) + "," + format_number(row.beta_over_alpha) + "," +
           format_number(row.e_res) + "," + std::string(collective::to_string(row.cls)) + "\n";
  }
  return {{"geometry_map.csv", csv}};
}

std::vector<OutputFile> render(const std::vector<DarkStateCase>& cases, const ScenarioConfig& cfg) {
  std::vector<OutputFile> files;
  for (const auto& c : cases) {
    std::string csv = "t_ns,pe,n_a,n_b,n_col,norm_err\n";
    const auto& t = c.trajectory.times();
    const auto pe = c.trajectory.real("pe");
    const auto na = c.trajectory.real("n_a");
    const auto nb = c.trajectory.real("n_b");
    const auto nc = c.trajectory.real("n_col");
    for (std::size_t i = 0; i < t.size(); ++i) {
      csv += format_number(t[i]) + "," + format_number(pe[i]) + "," + format_number(na[i]) + "," +
             format_number(nb[i]) + "," + format_number(nc[i]) + "," +
             format_number(c.trajectory.norm_errors()[i]) + "\n";
    }
    std::string summary;
    summary += summary_line("scenario", std::string(config::to_string(cfg.scenario)));
    summary += summary_line("case", c.label);
    summary += summary_line("pe_max", format_number(c.pe_max));
    summary += summary_line("n_total_min", format_number(c.n_total_min));
    summary += summary_line("n_total_max", format_number(c.n_total_max));
    summary += summary_line("n_col_initial", format_number(c.n_col_initial));
    summary += summary_line("norm_err_max", format_number(c.trajectory.max_norm_error()));
    files.push_back({"dark_state_" + c.label + ".csv", csv});
    files.push_back({"dark_state_" + c.label + "_summary.txt", summary});
  }
  return files;
}

std::vector<OutputFile> render(const ConvergeResult& r, const ScenarioConfig& cfg) {
  std::string csv = "study,resonator_levels,dt_ns,max_abs_dpe\n";
  for (const auto& row : r.rows) {
    csv += row.study + "," + std::to_string(row.resonator_levels) + "," + format_number(row.dt) + "," +
           format_number(row.max_abs_dpe) + "\n";
  }
  std::string summary;
  summary += summary_line("scenario", std::string(config::to_string(cfg.scenario)));
  summary += summary_line("frame", std::string(config::to_string(cfg.frame)));
  summary += summary_line("dt_ratio_1", format_number(r.dt_ratios[0]));
  summary += summary_line("dt_ratio_2", format_number(r.dt_ratios[1]));
  summary += summary_line("truncation_4_vs_6", format_number(r.truncation_4_vs_6));
  summary += summary_line("converged", r.converged ? "true" : "false");
  return {{"converge.csv", csv}, {"converge_summary.txt", summary}};
}

RunOutcome run(const ScenarioConfig& cfg) {
  RunOutcome out;
  switch (cfg.scenario) {
    case config::Scenario::fig1c:
      out.files = render(run_fig1c(cfg), cfg);
      break;
    case config::Scenario::phase_sweep:
      out.files = render(run_phase_sweep(cfg), cfg);
      break;
    case config::Scenario::geometry_map:
      out.files = render(run_geometry_map(cfg), cfg);
      break;
    case config::Scenario::dark_state:
      out.files = render(run_dark_state(cfg), cfg);
      break;
    case config::Scenario::converge: {
      const auto r = run_converge(cfg);
      out.files = render(r, cfg);
      out.ok = r.converged;
      if (!r.converged) {
        out.notes.push_back("convergence checks failed: dt ratios " + format_number(r.dt_ratios[0]) +
                            ", " + format_number(r.dt_ratios[1]) + " (need >= 12), levels 4 vs 6 " +
                            format_number(r.truncation_4_vs_6) + " (need < 1e-4)");
      }
      break;
    }
  }
  return out;
}

void write_files(const std::filesystem::path& dir, const std::vector<OutputFile>& files) {
  std::filesystem::create_directories(dir);
  for (const auto& f : files) {
    std::ofstream out(dir / f.name, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir / f.name).string());
    out << f.content;
  }
}

}  // namespace gatom::scenarios
