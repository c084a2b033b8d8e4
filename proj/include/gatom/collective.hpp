// Two localized field modes coupled to one emitter: collective-mode algebra,
// resultant-field interference, and full quantum dynamics.
#pragma once

#include <cstddef>
#include <string_view>

#include "gatom/dynamics.hpp"
#include "gatom/hilbert.hpp"

namespace gatom::collective {

/// Where each mode meets the emitter. Lengths share the unit of `lambda`.
struct ModeGeometry {
  double r_a = 0.0;
  double r_b = 0.0;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double lambda = 1.0;

  void validate() const;
  double phase_a() const;
  double phase_b() const;
  // r_b cos(theta_b) - r_a cos(theta_a)
  double path_difference() const;
};

/// Coherent amplitudes of modes a and b for the product state |alpha, beta>.
struct TwoModeState {
  Complex alpha;
  Complex beta;
};

// 2π·r·cos(theta)/lambda
double geometric_phase(double r, double theta, double lambda);

/// (a e^{i phase_a} + b e^{i phase_b})/sqrt(2) on the (mode a, mode b) space.
Operator collective_mode(double phase_a, double phase_b, std::size_t levels);

/// <C†C> for a product coherent state, with phase_diff = phase_b - phase_a.
double ncol_expected_analytic(const TwoModeState& state, double phase_diff);

double resultant_amplitude(const TwoModeState& state, const ModeGeometry& geom);

enum class Interference { constructive, destructive, partial };

std::string_view to_string(Interference c);

/// Destructive when |E_res| <= tol·(|alpha|+|beta|), constructive when
/// |E_res| >= (1-tol)·(|alpha|+|beta|), partial otherwise.
Interference interference_class(const TwoModeState& state, const ModeGeometry& geom, double tol);

/// Semi-classical drive on the bare two-level emitter, basis (|g>, |e>).
Operator semiclassical_hamiltonian(const TwoModeState& state, const ModeGeometry& geom, double g);

struct TwoModeModel {
  double g = 0.0;       // rad/ns
  double omega = 0.0;   // mode frequency, rad/ns
  double omega0 = 0.0;  // emitter frequency, rad/ns
  std::size_t levels = 10;
};

// Subsystem ordering of the full quantum model.
inline constexpr std::size_t kAtomSlot = 0;
inline constexpr std::size_t kModeASlot = 1;
inline constexpr std::size_t kModeBSlot = 2;

HilbertSpec two_mode_space(std::size_t levels);

/// Lab-frame H0 + H_I on (atom, mode a, mode b).
Operator two_mode_hamiltonian(const ModeGeometry& geom, const TwoModeModel& model);

/// Integrates the full model from |g> ⊗ |alpha> ⊗ |beta> in the frame rotating
/// at omega0 on every subsystem. Channels: "pe", "n_a", "n_b", "n_col",
/// "n_exc" (σ+σ- + a†a + b†b).
Trajectory simulate_two_mode_quantum(const TwoModeState& state, const ModeGeometry& geom,
                                     const TwoModeModel& model, const TimeGrid& grid);

}  // namespace gatom::collective
