#include "gatom/effective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gatom::effective {

std::vector<std::string> EffectiveParams::diagnostics() const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < 2; ++k) {
    const double ratio = std::abs(omega0k[k] / delta[k]);
    if (!(ratio < 0.1)) {
      std::ostringstream os;
      os << "resonator " << k + 1 << ": |Omega0/Delta| = " << ratio
         << " is not small; the effective model may be inaccurate";
      out.push_back(os.str());
    }
  }
  return out;
}

EffectiveParams derive_effective(const circuit::CircuitSpec& spec, const circuit::DriveSpec& drives) {
  spec.validate();
  drives.validate();
  EffectiveParams p;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& d = drives.resonator[k];
    p.delta[k] = spec.detuning(k);
    if (p.delta[k] == 0.0) {
      throw std::invalid_argument("derive_effective: resonator " + std::to_string(k + 1) +
                                  " is resonant with the atom");
    }
    p.drive_detuning[k] = spec.omega_r[k] - d.omega_d;
    if (p.drive_detuning[k] == 0.0) {
      throw std::invalid_argument("derive_effective: drive " + std::to_string(k + 1) +
                                  " is resonant with its resonator");
    }
    p.delta_ds_k[k] = spec.g[k] * spec.g[k] / p.delta[k];
    p.omega0k[k] = spec.g[k] * d.eps / p.drive_detuning[k];
    p.drive_freqs[k] = d.omega_d;
    p.drive_phases[k] = d.phi_d;
    p.eps[k] = d.eps;
    p.envelopes[k] = d.envelope;
  }
  p.delta_ds = p.delta_ds_k[0] + p.delta_ds_k[1];
  return p;
}

Complex displacement_amplitude(const EffectiveParams& p, std::size_t k, double t) {
  if (k > 1) throw std::out_of_range("displacement_amplitude: resonator index must be 0 or 1");
  if (p.drive_detuning[k] == 0.0) {
    throw std::invalid_argument("displacement_amplitude: drive resonant with resonator");
  }
  const double amplitude = -p.eps[k] * p.envelopes[k](t) / p.drive_detuning[k];
  return amplitude * std::exp(kI * (-p.drive_freqs[k] * t + p.drive_phases[k]));
}

namespace {

// Ω_res(t)·e^{i f t}, evaluated without forming the fast phase twice.
Complex phasor_in_frame(const EffectiveParams& p, double t, double frame_freq) {
  Complex sum{};
  for (std::size_t k = 0; k < 2; ++k) {
    sum += p.omega0k[k] * p.envelopes[k](t) *
           std::exp(kI * (-(p.drive_freqs[k] - frame_freq) * t + p.drive_phases[k]));
  }
  return sum;
}

bool active(const EffectiveParams& p, std::size_t k) { return p.omega0k[k] != 0.0; }

}  // namespace

Complex resultant_phasor(const EffectiveParams& p, double t) { return phasor_in_frame(p, t, 0.0); }

double steady_resultant_modulus(const EffectiveParams& p) {
  if (active(p, 0) && active(p, 1) && p.drive_freqs[0] != p.drive_freqs[1]) {
    throw std::invalid_argument("steady_resultant_modulus: drive frequencies differ");
  }
  Complex sum{};
  for (std::size_t k = 0; k < 2; ++k) sum += p.omega0k[k] * std::exp(kI * p.drive_phases[k]);
  return std::abs(sum);
}

Operator effective_hamiltonian(const EffectiveParams& p, double omega0, double t) {
  const Complex drive = resultant_phasor(p, t);
  Operator h = Operator::Zero(2, 2);
  h(1, 1) = omega0 + p.delta_ds;
  h(1, 0) = -drive;
  h(0, 1) = -std::conj(drive);
  return h;
}

Trajectory effective_population(const EffectiveParams& p, double omega0, const TimeGrid& grid) {
  grid.validate();
  const double atom_freq = omega0 + p.delta_ds;

  bool resonant = true;
  bool constant = true;
  double settle = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    if (!active(p, k)) continue;
    const double tol = 1e-12 * std::max(1.0, std::abs(atom_freq));
    if (std::abs(p.drive_freqs[k] - atom_freq) > tol) resonant = false;
    if (p.envelopes[k].t_ramp > 0.0) constant = false;
    settle = std::max(settle, p.envelopes[k].t_ramp);
  }

  if (resonant && constant) {
    Trajectory traj({"pe"});
    const double rate = std::abs(phasor_in_frame(p, 0.0, atom_freq));
    const std::size_t steps = grid.steps();
    for (std::size_t n = 0; n <= steps; ++n) {
      if (n % grid.sample_stride != 0 && n != steps) continue;
      const double t = static_cast<double>(n) * grid.dt;
      const double s = std::sin(rate * t);
      traj.push_sample(t, {Complex(s * s, 0.0)}, 0.0);
    }
    StateVector final_state(2);
    const double t_end = static_cast<double>(steps) * grid.dt;
    final_state << std::cos(rate * t_end), std::sin(rate * t_end);
    traj.final_state = final_state;
    return traj;
  }

  // Frame rotating at the shifted atomic frequency: the diagonal term drops out.
  Hamiltonian h(Operator::Zero(2, 2));
  DrivenTerm drive;
  drive.op = -transition(2, 1, 0);
  drive.coeff = [p, atom_freq](double t) { return phasor_in_frame(p, t, atom_freq); };
  if (resonant) drive.settles_at = settle;
  h.add_term(std::move(drive));

  StateVector ground = StateVector::Zero(2);
  ground(0) = 1.0;
  return integrate(h, ground, grid, {{"pe", transition(2, 1, 1)}});
}

double rabi_rate_from_inversion_time(double tau, double t_ramp) {
  const double effective = tau - 0.5 * t_ramp;
  if (!(effective > 0.0)) {
    throw std::invalid_argument("rabi_rate_from_inversion_time: inversion inside the ramp");
  }
  return 0.5 * std::numbers::pi / effective;
}

double predicted_inversion_time(double rabi_rate, double t_ramp) {
  if (!(rabi_rate > 0.0)) throw std::invalid_argument("predicted_inversion_time: rate must be > 0");
  return 0.5 * std::numbers::pi / rabi_rate + 0.5 * t_ramp;
}

}  // namespace gatom::effective
