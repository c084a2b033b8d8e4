// Dispersive displaced-frame reduction of the driven two-resonator circuit
// to a single driven two-level atom.
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "gatom/circuit.hpp"
#include "gatom/dynamics.hpp"

namespace gatom::effective {

struct EffectiveParams {
  std::array<double, 2> delta{};        // Δ_k = ω_r,k - ω0
  std::array<double, 2> delta_ds_k{};   // g_k²/Δ_k
  double delta_ds = 0.0;                // δ_ds,1 + δ_ds,2
  std::array<double, 2> omega0k{};      // g_k ε_k/(ω_r,k - ω_d,k) at full envelope
  std::array<double, 2> drive_freqs{};
  std::array<double, 2> drive_phases{};
  std::array<double, 2> eps{};
  std::array<double, 2> drive_detuning{};  // ω_r,k - ω_d,k
  std::array<circuit::Envelope, 2> envelopes{};

  // Warns when |Ω0,k| is not small against |Δ_k|.
  std::vector<std::string> diagnostics() const;
};

EffectiveParams derive_effective(const circuit::CircuitSpec& spec, const circuit::DriveSpec& drives);

/// Coherent amplitude ξ_k(t) the k-th resonator follows in the dispersive
/// regime (quasi-static in the envelope). k is 0-based.
///
/// The sign is that of the driven steady state of ε(r† e^{-iω_d t + iφ} + h.c.):
/// ξ_k = -ε_k/(ω_r,k - ω_d,k)·e^{-iω_d,k t + iφ_k}. It is the sign for which
/// g_k ξ_k σ+ equals the -Ω_0,k e^{...} σ+ drive of effective_hamiltonian.
Complex displacement_amplitude(const EffectiveParams& p, std::size_t k, double t);

// Σ_k Ω0,k(t) e^{-iω_d,k t + iφ_k}
Complex resultant_phasor(const EffectiveParams& p, double t);

/// |Ω_res| once all envelopes are at full strength. Requires equal drive
/// frequencies for the modulus to be time-independent.
double steady_resultant_modulus(const EffectiveParams& p);

/// (ω0 + δ_ds) σ+σ- - [Ω_res(t) σ+ + h.c.] in the basis (|g>, |e>).
Operator effective_hamiltonian(const EffectiveParams& p, double omega0, double t);

/// Excited-state population under the effective Hamiltonian, channel "pe".
/// Resonant constant drives use sin²(|Ω_res| t); anything else is integrated
/// in the frame rotating at ω0 + δ_ds.
Trajectory effective_population(const EffectiveParams& p, double omega0, const TimeGrid& grid);

/// Rabi rate whose π-pulse area matches an inversion at tau after a linear
/// ramp of length t_ramp: (π/2)/(tau - t_ramp/2).
double rabi_rate_from_inversion_time(double tau, double t_ramp);

// Inverse of the above for a constant target rate.
double predicted_inversion_time(double rabi_rate, double t_ramp);

}  // namespace gatom::effective
