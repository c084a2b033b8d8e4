// Giant transmon coupled to two driven resonators. Units: rad/ns and ns.
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "gatom/dynamics.hpp"
#include "gatom/hilbert.hpp"

namespace gatom::circuit {

inline constexpr std::size_t kAtomSlot = 0;
inline constexpr std::size_t kResonatorSlot[2] = {1, 2};

struct CircuitSpec {
  double omega0 = 0.0;
  double anharm = 0.0;  // transmon convention: <= 0
  std::array<double, 2> omega_r{};
  std::array<double, 2> g{};
  std::size_t qubit_levels = 2;
  std::size_t resonator_levels = 4;

  void validate() const;
  // Non-fatal regime warnings, e.g. |g_k/Δ_k| >= 0.1.
  std::vector<std::string> diagnostics() const;
  HilbertSpec space() const;
  double detuning(std::size_t k) const { return omega_r.at(k) - omega0; }
};

/// Linear ramp from 0 to 1 over t_ramp, constant afterwards. t_ramp = 0 is a
/// constant envelope.
struct Envelope {
  double t_ramp = 0.0;
  double operator()(double t) const;
};

struct ResonatorDrive {
  double eps = 0.0;      // rad/ns
  double omega_d = 0.0;  // rad/ns
  double phi_d = 0.0;    // rad
  Envelope envelope;

  double strength(double t) const { return eps * envelope(t); }
};

struct DriveSpec {
  std::array<ResonatorDrive, 2> resonator{};

  void validate() const;
  double delta_phi() const { return resonator[0].phi_d - resonator[1].phi_d; }
};

/// Embedded operators on (atom, r1, r2).
struct CircuitOperators {
  HilbertSpec space;
  Operator q;
  std::array<Operator, 2> r;
  Operator excited;  // |e><e| on the atom

  explicit CircuitOperators(const CircuitSpec& spec);
  Operator excitation_number() const;
};

Operator build_h0(const CircuitSpec& spec);
Operator build_hc(const CircuitSpec& spec);
Operator build_hd(const CircuitSpec& spec, const DriveSpec& drives, double t);

/// H in the frame U = exp[i·frame_freq·t·N_exc]. frame_freq = 0 is the lab
/// frame. A drive whose frequency equals frame_freq becomes static once its
/// ramp ends, which lets the integrator switch to the exact propagator.
Hamiltonian rotating_frame_hamiltonian(const CircuitSpec& spec, const DriveSpec& drives,
                                       double frame_freq);

struct CircuitSample {
  double pe = 0.0;
  std::array<double, 2> n_r{};
  std::array<Complex, 2> coh_r{};
  double norm_err = 0.0;
};

CircuitSample observables(const StateVector& psi, const CircuitSpec& spec);

StateVector ground_state(const CircuitSpec& spec);

/// Exact dynamics from |g,0,0>. Channels "pe", "n_r1", "n_r2", "coh_r1",
/// "coh_r2", "coh_q"; coherences are reported in the lab frame whatever the
/// integration frame.
Trajectory simulate(const CircuitSpec& spec, const DriveSpec& drives, double frame_freq,
                    const TimeGrid& grid, const IntegratorOptions& options = {});

}  // namespace gatom::circuit
