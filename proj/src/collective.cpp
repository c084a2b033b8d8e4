#include "gatom/collective.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gatom::collective {

void ModeGeometry::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("ModeGeometry: lambda must be > 0");
  if (!(r_a >= 0.0) || !(r_b >= 0.0)) {
    throw std::invalid_argument("ModeGeometry: r_a and r_b must be >= 0");
  }
}

double ModeGeometry::phase_a() const { return geometric_phase(r_a, theta_a, lambda); }
double ModeGeometry::phase_b() const { return geometric_phase(r_b, theta_b, lambda); }

double ModeGeometry::path_difference() const {
  return r_b * std::cos(theta_b) - r_a * std::cos(theta_a);
}

double geometric_phase(double r, double theta, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("geometric_phase: lambda must be > 0");
  return 2.0 * std::numbers::pi * r * std::cos(theta) / lambda;
}

Operator collective_mode(double phase_a, double phase_b, std::size_t levels) {
  const HilbertSpec modes({levels, levels});
  const Operator a = annihilation(levels);
  return (std::exp(kI * phase_a) * embed(a, 0, modes) +
          std::exp(kI * phase_b) * embed(a, 1, modes)) /
         std::sqrt(2.0);
}

double ncol_expected_analytic(const TwoModeState& state, double phase_diff) {
  const double total = std::norm(state.alpha) + std::norm(state.beta);
  return 0.5 * total + (state.beta * std::conj(state.alpha) * std::exp(kI * phase_diff)).real();
}

double resultant_amplitude(const TwoModeState& state, const ModeGeometry& geom) {
  geom.validate();
  const double phase = 2.0 * std::numbers::pi * geom.path_difference() / geom.lambda;
  return std::abs(state.alpha + state.beta * std::exp(kI * phase));
}

std::string_view to_string(Interference c) {
  switch (c) {
    case Interference::constructive: return "constructive";
    case Interference::destructive: return "destructive";
    case Interference::partial: return "partial";
  }
  return "partial";
}

Interference interference_class(const TwoModeState& state, const ModeGeometry& geom, double tol) {
  if (!(tol > 0.0 && tol < 0.5)) {
    throw std::invalid_argument("interference_class: tol must lie in (0, 0.5)");
  }
  const double scale = std::abs(state.alpha) + std::abs(state.beta);
  if (scale == 0.0) return Interference::destructive;
  const double e_res = resultant_amplitude(state, geom);
  if (e_res <= tol * scale) return Interference::destructive;
  if (e_res >= (1.0 - tol) * scale) return Interference::constructive;
  return Interference::partial;
}

Operator semiclassical_hamiltonian(const TwoModeState& state, const ModeGeometry& geom, double g) {
  geom.validate();
  const Complex drive =
      g * (state.alpha * std::exp(kI * geom.phase_a()) + state.beta * std::exp(kI * geom.phase_b()));
  Operator h = Operator::Zero(2, 2);
  h(1, 0) = drive;             // σ+ = |e><g|
  h(0, 1) = std::conj(drive);  // h.c.
  return h;
}

HilbertSpec two_mode_space(std::size_t levels) { return HilbertSpec({2, levels, levels}); }

namespace {

struct TwoModeOperators {
  Operator sigma_minus, a, b, excited;
};

TwoModeOperators two_mode_operators(const HilbertSpec& space, std::size_t levels) {
  return {embed(transition(2, 0, 1), kAtomSlot, space),
          embed(annihilation(levels), kModeASlot, space),
          embed(annihilation(levels), kModeBSlot, space),
          embed(transition(2, 1, 1), kAtomSlot, space)};
}

Operator interaction(const TwoModeOperators& ops, const ModeGeometry& geom, double g) {
  const Operator coupled =
      std::exp(kI * geom.phase_a()) * ops.a + std::exp(kI * geom.phase_b()) * ops.b;
  const Operator forward = g * coupled * ops.sigma_minus.adjoint();
  return forward + forward.adjoint();
}

}  // namespace

Operator two_mode_hamiltonian(const ModeGeometry& geom, const TwoModeModel& model) {
  geom.validate();
  const HilbertSpec space = two_mode_space(model.levels);
  const auto ops = two_mode_operators(space, model.levels);
  const Operator sigma_z = 2.0 * ops.excited - identity(space.total());
  const Operator h0 = model.omega * (ops.a.adjoint() * ops.a + ops.b.adjoint() * ops.b) +
                      0.5 * model.omega0 * sigma_z;
  return h0 + interaction(ops, geom, model.g);
}

Trajectory simulate_two_mode_quantum(const TwoModeState& state, const ModeGeometry& geom,
                                     const TwoModeModel& model, const TimeGrid& grid) {
  geom.validate();
  const double cap = static_cast<double>(model.levels) / 4.0;
  if (std::norm(state.alpha) > cap || std::norm(state.beta) > cap) {
    throw std::invalid_argument("simulate_two_mode_quantum: |alpha|^2 and |beta|^2 must be <= " +
                                std::to_string(cap) + " for " + std::to_string(model.levels) +
                                " levels");
  }
  const HilbertSpec space = two_mode_space(model.levels);
  const auto ops = two_mode_operators(space, model.levels);
  const Operator n_a = ops.a.adjoint() * ops.a;
  const Operator n_b = ops.b.adjoint() * ops.b;

  // U = exp(i omega0 t N_exc) removes omega0 from every subsystem; the
  // constant -omega0/2 from σz/2 is dropped as a global phase.
  const Operator h_rot =
      (model.omega - model.omega0) * (n_a + n_b) + interaction(ops, geom, model.g);

  const Operator c = (std::exp(kI * geom.phase_a()) * ops.a + std::exp(kI * geom.phase_b()) * ops.b) /
                     std::sqrt(2.0);
  const std::vector<Observable> observables{
      {"pe", ops.excited},
      {"n_a", n_a},
      {"n_b", n_b},
      {"n_col", c.adjoint() * c},
      {"n_exc", ops.excited + n_a + n_b},
  };
  const StateVector psi0 = product_state({fock_state(2, 0), coherent_state(state.alpha, model.levels),
                                          coherent_state(state.beta, model.levels)});
  return integrate(Hamiltonian(h_rot), psi0, grid, observables);
}

}  // namespace gatom::collective
