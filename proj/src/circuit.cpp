#include "gatom/circuit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gatom::circuit {

void CircuitSpec::validate() const {
  if (!(omega0 > 0.0)) throw std::invalid_argument("CircuitSpec: omega0 must be > 0");
  for (std::size_t k = 0; k < 2; ++k) {
    if (!(omega_r[k] > 0.0)) throw std::invalid_argument("CircuitSpec: resonator frequency must be > 0");
    if (!std::isfinite(g[k])) throw std::invalid_argument("CircuitSpec: coupling is not finite");
  }
  if (qubit_levels != 2 && qubit_levels != 3) {
    throw std::invalid_argument("CircuitSpec: qubit_levels must be 2 or 3");
  }
  if (qubit_levels == 3 && anharm == 0.0) {
    throw std::invalid_argument("CircuitSpec: a three-level atom needs nonzero anharmonicity");
  }
  if (resonator_levels < 2) throw std::invalid_argument("CircuitSpec: resonator_levels must be >= 2");
}

std::vector<std::string> CircuitSpec::diagnostics() const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < 2; ++k) {
    const double ratio = std::abs(g[k] / detuning(k));
    if (!(ratio < 0.1)) {
      std::ostringstream os;
      os << "resonator " << k + 1 << ": |g/Delta| = " << ratio
         << " is outside the dispersive regime (< 0.1)";
      out.push_back(os.str());
    }
  }
  return out;
}

HilbertSpec CircuitSpec::space() const {
  return HilbertSpec({qubit_levels, resonator_levels, resonator_levels});
}

double Envelope::operator()(double t) const {
  if (t_ramp <= 0.0 || t >= t_ramp) return 1.0;
  if (t <= 0.0) return 0.0;
  return t / t_ramp;
}

void DriveSpec::validate() const {
  for (const auto& d : resonator) {
    if (!(d.eps >= 0.0)) throw std::invalid_argument("DriveSpec: eps must be >= 0");
    if (!(d.envelope.t_ramp >= 0.0)) throw std::invalid_argument("DriveSpec: t_ramp must be >= 0");
    if (!std::isfinite(d.omega_d) || !std::isfinite(d.phi_d)) {
      throw std::invalid_argument("DriveSpec: drive frequency and phase must be finite");
    }
  }
}

CircuitOperators::CircuitOperators(const CircuitSpec& spec)
    : space(spec.space()),
      q(embed(annihilation(spec.qubit_levels), kAtomSlot, space)),
      r{embed(annihilation(spec.resonator_levels), kResonatorSlot[0], space),
        embed(annihilation(spec.resonator_levels), kResonatorSlot[1], space)},
      excited(embed(transition(spec.qubit_levels, 1, 1), kAtomSlot, space)) {}

Operator CircuitOperators::excitation_number() const {
  return q.adjoint() * q + r[0].adjoint() * r[0] + r[1].adjoint() * r[1];
}

namespace {

Operator frame_shifted_h0(const CircuitSpec& spec, const CircuitOperators& ops, double frame_freq) {
  const Operator nq = ops.q.adjoint() * ops.q;
  Operator h = (spec.omega0 - frame_freq) * nq +
               (0.5 * spec.anharm) * (ops.q.adjoint() * ops.q.adjoint() * ops.q * ops.q);
  for (std::size_t k = 0; k < 2; ++k) {
    h += (spec.omega_r[k] - frame_freq) * (ops.r[k].adjoint() * ops.r[k]);
  }
  return h;
}

Operator coupling(const CircuitSpec& spec, const CircuitOperators& ops) {
  Operator h = Operator::Zero(ops.q.rows(), ops.q.cols());
  for (std::size_t k = 0; k < 2; ++k) {
    const Operator forward = spec.g[k] * (ops.q.adjoint() * ops.r[k]);
    h += forward + forward.adjoint();
  }
  return h;
}

}  // namespace

Operator build_h0(const CircuitSpec& spec) {
  spec.validate();
  return frame_shifted_h0(spec, CircuitOperators(spec), 0.0);
}

Operator build_hc(const CircuitSpec& spec) {
  spec.validate();
  return coupling(spec, CircuitOperators(spec));
}

Operator build_hd(const CircuitSpec& spec, const DriveSpec& drives, double t) {
  spec.validate();
  drives.validate();
  if (t < 0.0) throw std::invalid_argument("build_hd: t must be >= 0");
  const CircuitOperators ops(spec);
  Operator h = Operator::Zero(ops.q.rows(), ops.q.cols());
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& d = drives.resonator[k];
    const Complex phase = std::exp(kI * (-d.omega_d * t + d.phi_d));
    const Operator forward = d.strength(t) * phase * ops.r[k].adjoint();
    h += forward + forward.adjoint();
  }
  return h;
}

Hamiltonian rotating_frame_hamiltonian(const CircuitSpec& spec, const DriveSpec& drives,
                                       double frame_freq) {
  spec.validate();
  drives.validate();
  const CircuitOperators ops(spec);
  Hamiltonian h(frame_shifted_h0(spec, ops, frame_freq) + coupling(spec, ops));
  for (std::size_t k = 0; k < 2; ++k) {
    const ResonatorDrive d = drives.resonator[k];
    if (d.eps == 0.0) continue;
    const double detuning = d.omega_d - frame_freq;
    DrivenTerm term;
    term.op = ops.r[k].adjoint();
    term.coeff = [d, detuning](double t) {
      return d.strength(t) * std::exp(kI * (-detuning * t + d.phi_d));
    };
    if (detuning == 0.0) term.settles_at = d.envelope.t_ramp;
    h.add_term(std::move(term));
  }
  return h;
}

CircuitSample observables(const StateVector& psi, const CircuitSpec& spec) {
  const CircuitOperators ops(spec);
  if (static_cast<std::size_t>(psi.size()) != ops.space.total()) {
    throw std::invalid_argument("observables: state dimension does not match the circuit space");
  }
  CircuitSample s;
  s.pe = expectation_real(psi, ops.excited);
  for (std::size_t k = 0; k < 2; ++k) {
    s.n_r[k] = expectation_real(psi, ops.r[k].adjoint() * ops.r[k]);
    s.coh_r[k] = expectation(psi, ops.r[k]);
  }
  s.norm_err = norm_error(psi);
  return s;
}

StateVector ground_state(const CircuitSpec& spec) {
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(spec.space().total()));
  psi(0) = 1.0;
  return psi;
}

Trajectory simulate(const CircuitSpec& spec, const DriveSpec& drives, double frame_freq,
                    const TimeGrid& grid, const IntegratorOptions& options) {
  const Hamiltonian h = rotating_frame_hamiltonian(spec, drives, frame_freq);
  const CircuitOperators ops(spec);
  const std::vector<Observable> observables{
      {"pe", ops.excited},
      {"n_r1", ops.r[0].adjoint() * ops.r[0]},
      {"n_r2", ops.r[1].adjoint() * ops.r[1]},
      {"coh_r1", ops.r[0]},
      {"coh_r2", ops.r[1]},
      {"coh_q", ops.q},
  };
  Trajectory traj = integrate(h, ground_state(spec), grid, observables, options);
  // U r U† = e^{-i f t} r, so <r>_lab = e^{-i f t} <r>_rot.
  if (frame_freq != 0.0) {
    for (const char* name : {"coh_r1", "coh_r2", "coh_q"}) {
      auto& values = traj.mutable_channel(name);
      for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] *= std::exp(-kI * (frame_freq * traj.times()[i]));
      }
    }
  }
  return traj;
}

}  // namespace gatom::circuit
