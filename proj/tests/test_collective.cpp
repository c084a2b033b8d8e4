#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "gatom/collective.hpp"

using namespace gatom;
using namespace gatom::collective;

namespace {

constexpr double kPi = std::numbers::pi;

// <C†C> on |alpha> ⊗ |beta> by direct matrix evaluation.
double brute_force_ncol(Complex alpha, Complex beta, double phase_a, double phase_b, std::size_t levels) {
  const Operator c = collective_mode(phase_a, phase_b, levels);
  const StateVector psi = product_state({coherent_state(alpha, levels), coherent_state(beta, levels)});
  return expectation_real(psi, c.adjoint() * c);
}

ModeGeometry with_path_difference(double path, double lambda = 1.0) {
  ModeGeometry g;
  g.lambda = lambda;
  g.r_b = path;
  return g;
}

TimeGrid short_grid(double t_end) { return TimeGrid::with_min_samples(t_end, 0.01, 200); }

TwoModeModel default_model() {
  TwoModeModel m;
  m.g = 2 * kPi * 0.01;
  m.omega = m.omega0 = 2 * kPi * 5.0;
  m.levels = 10;
  return m;
}

}  // namespace

TEST(GeometricPhase, Examples) {
  EXPECT_EQ(geometric_phase(0.0, 0.3, 2.0), 0.0);
  EXPECT_NEAR(geometric_phase(1.5 * 0.7, 0.0, 0.7), 3 * kPi, 1e-14);
  EXPECT_NEAR(geometric_phase(0.7, kPi / 2, 0.7), 0.0, 1e-15);
  EXPECT_THROW(geometric_phase(1.0, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(geometric_phase(1.0, 0.0, -1.0), std::invalid_argument);
}

TEST(CollectiveMode, ZeroAndPiPhases) {
  const std::size_t L = 4;
  const HilbertSpec modes({L, L});
  const Operator a = embed(annihilation(L), 0, modes);
  const Operator b = embed(annihilation(L), 1, modes);
  EXPECT_LT((collective_mode(0, 0, L) - (a + b) / std::sqrt(2.0)).norm(), 1e-15);
  EXPECT_LT((collective_mode(0, kPi, L) - (a - b) / std::sqrt(2.0)).norm(), 1e-15);
  EXPECT_THROW(collective_mode(0, 0, 1), std::invalid_argument);
}

TEST(CollectiveMode, NumberOperatorMatchesExpandedForm) {
  const std::size_t L = 4;
  const HilbertSpec modes({L, L});
  const Operator a = embed(annihilation(L), 0, modes);
  const Operator b = embed(annihilation(L), 1, modes);
  const Operator n_total = a.adjoint() * a + b.adjoint() * b;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  for (int trial = 0; trial < 10; ++trial) {
    const double pa = phase(rng), pb = phase(rng);
    const double delta = pb - pa;
    const Operator c = collective_mode(pa, pb, L);
    const Operator expanded =
        0.5 * (n_total + std::exp(kI * delta) * (b * a.adjoint()) + std::exp(-kI * delta) * (b.adjoint() * a));
    EXPECT_LT((c.adjoint() * c - expanded).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(NcolAnalytic, Examples) {
  EXPECT_NEAR(ncol_expected_analytic({1.0, -1.0}, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(ncol_expected_analytic({1.0, 1.0}, 0.0), 2.0, 1e-15);
  EXPECT_NEAR(ncol_expected_analytic({1.0, Complex(0, 1)}, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(brute_force_ncol(1.0, Complex(0, 1), 0.0, 0.0, 12), 1.0, 1e-4);
}

TEST(NcolAnalytic, AgreesWithBruteForceAndNeverExceedsTotal) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0), phase(-kPi, kPi);
  for (int trial = 0; trial < 120; ++trial) {
    const Complex alpha = std::polar(unit(rng), phase(rng));
    const Complex beta = std::polar(unit(rng), phase(rng));
    const double pa = phase(rng), pb = phase(rng);
    const double analytic = ncol_expected_analytic({alpha, beta}, pb - pa);
    EXPECT_LE(analytic, std::norm(alpha) + std::norm(beta) + 1e-15);
    EXPECT_NEAR(analytic, brute_force_ncol(alpha, beta, pa, pb, 12), 1e-4);
  }
}

TEST(CollectiveMode, AnnihilatesMatchedDarkStates) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mag(0.0, 0.5), phase(-kPi, kPi);
  const std::size_t L = 12;
  for (int trial = 0; trial < 30; ++trial) {
    const Complex alpha = std::polar(mag(rng), phase(rng));
    const double pa = phase(rng), pb = phase(rng);
    const StateVector dark = product_state(
        {coherent_state(alpha * std::exp(-kI * pa), L), coherent_state(-alpha * std::exp(-kI * pb), L)});
    EXPECT_LT((collective_mode(pa, pb, L) * dark).norm(), 1e-6);
  }
}

TEST(ResultantAmplitude, Examples) {
  for (int n = 0; n < 3; ++n) {
    EXPECT_NEAR(resultant_amplitude({0.7, 0.7}, with_path_difference(n * 1.3, 1.3)), 1.4, 1e-12);
    EXPECT_NEAR(resultant_amplitude({0.7, -0.7}, with_path_difference(n * 1.3, 1.3)), 0.0, 1e-12);
  }
  EXPECT_NEAR(resultant_amplitude({1.0, 1.0}, with_path_difference(0.5)), 0.0, 1e-15);
}

TEST(ResultantAmplitude, UsesBothAnglesAndRadii) {
  ModeGeometry g;
  g.lambda = 2.0;
  g.r_a = 3.0;
  g.theta_a = kPi / 3;  // r_a cos = 1.5
  g.r_b = 5.0;
  g.theta_b = std::acos(0.5);  // r_b cos = 2.5, difference = λ/2
  EXPECT_NEAR(g.path_difference(), 1.0, 1e-12);
  EXPECT_NEAR(resultant_amplitude({1.0, 1.0}, g), 0.0, 1e-12);
}

TEST(ResultantAmplitude, GlobalPhaseInvariance) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0), phase(-kPi, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex alpha = std::polar(unit(rng), phase(rng));
    const Complex beta = std::polar(unit(rng), phase(rng));
    const ModeGeometry geom = with_path_difference(2.0 * unit(rng));
    const Complex chi = std::exp(kI * phase(rng));
    EXPECT_NEAR(resultant_amplitude({alpha, beta}, geom), resultant_amplitude({chi * alpha, chi * beta}, geom),
                1e-14);
  }
}

TEST(InterferenceClass, Examples) {
  EXPECT_EQ(interference_class({1.0, 1.0}, with_path_difference(0.0), 0.01), Interference::constructive);
  EXPECT_EQ(interference_class({1.0, -1.0}, with_path_difference(0.0), 0.01), Interference::destructive);
  EXPECT_EQ(interference_class({1.0, 0.5}, with_path_difference(0.5), 0.01), Interference::partial);
  EXPECT_NEAR(resultant_amplitude({1.0, 0.5}, with_path_difference(0.5)), 0.5, 1e-15);
  EXPECT_EQ(interference_class({0.0, 0.0}, with_path_difference(0.3), 0.01), Interference::destructive);
  EXPECT_THROW(interference_class({1.0, 1.0}, with_path_difference(0.0), 0.0), std::invalid_argument);
  EXPECT_THROW(interference_class({1.0, 1.0}, with_path_difference(0.0), 0.5), std::invalid_argument);
}

TEST(SemiclassicalHamiltonian, Examples) {
  const ModeGeometry zero;
  EXPECT_EQ(semiclassical_hamiltonian({0.4, -0.4}, zero, 0.3).norm(), 0.0);
  const Operator h = semiclassical_hamiltonian({1.0, 1.0}, zero, 0.3);
  EXPECT_NEAR(std::abs(h(1, 0)), 0.6, 1e-15);
  EXPECT_NEAR(std::abs(h(0, 1)), 0.6, 1e-15);
  EXPECT_EQ(h(0, 0), Complex{});
  ModeGeometry g;
  g.r_a = 0.3;
  g.r_b = 0.8;
  g.theta_b = 0.4;
  const Operator h2 = semiclassical_hamiltonian({Complex(0.2, 0.5), Complex(-0.3, 0.1)}, g, 1.7);
  EXPECT_EQ(h2, h2.adjoint().eval());
}

TEST(TwoModeSimulation, DarkStateStaysDark) {
  const auto traj = simulate_two_mode_quantum({0.5, -0.5}, ModeGeometry{}, default_model(), short_grid(60));
  const auto pe = traj.real("pe");
  EXPECT_LT(*std::max_element(pe.begin(), pe.end()), 1e-6);
  for (double n : traj.real("n_a")) EXPECT_NEAR(n, 0.25, 1e-6);
}

TEST(TwoModeSimulation, VacuumNeverExcites) {
  const auto traj = simulate_two_mode_quantum({0.0, 0.0}, with_path_difference(0.37), default_model(), short_grid(30));
  for (double p : traj.real("pe")) EXPECT_NEAR(p, 0.0, 1e-14);
}

TEST(TwoModeSimulation, BrightStateRisesFasterThanSingleMode) {
  // Short-time P_e ≈ 2 g² t² <C†C>: <C†C> is 0.5 for (0.5, 0.5) and 0.125 for (0.5, 0).
  const auto grid = TimeGrid{1.0, 0.001, 100};
  const auto model = default_model();
  const auto bright = simulate_two_mode_quantum({0.5, 0.5}, ModeGeometry{}, model, grid);
  const auto single = simulate_two_mode_quantum({0.5, 0.0}, ModeGeometry{}, model, grid);
  const double pb = bright.real("pe").back();
  const double ps = single.real("pe").back();
  EXPECT_GT(pb, ps);
  EXPECT_NEAR(pb / ps, 4.0, 0.05);
}

TEST(TwoModeSimulation, ConservesExcitationNumber) {
  ModeGeometry g;
  g.r_b = 0.3;
  auto model = default_model();
  model.omega = 2 * kPi * 5.002;  // detuned modes still conserve excitations
  const auto traj = simulate_two_mode_quantum({Complex(0.4, 0.1), 0.3}, g, model, short_grid(40));
  const auto n = traj.real("n_exc");
  for (double v : n) EXPECT_NEAR(v, n.front(), 1e-9);
}

TEST(TwoModeSimulation, TruncationGuard) {
  auto model = default_model();
  model.levels = 4;
  EXPECT_THROW(simulate_two_mode_quantum({1.1, 0.0}, ModeGeometry{}, model, short_grid(1)), std::invalid_argument);
}

TEST(TwoModeHamiltonian, LabFrameIsHermitianAndCommutesWithExcitations) {
  ModeGeometry g;
  g.r_a = 0.2;
  g.r_b = 0.9;
  const auto model = default_model();
  const Operator h = two_mode_hamiltonian(g, model);
  EXPECT_TRUE(is_hermitian(h));
  const HilbertSpec space = two_mode_space(model.levels);
  const Operator a = embed(annihilation(model.levels), kModeASlot, space);
  const Operator b = embed(annihilation(model.levels), kModeBSlot, space);
  const Operator n_exc = embed(transition(2, 1, 1), kAtomSlot, space) + a.adjoint() * a + b.adjoint() * b;
  EXPECT_LT(commutator(h, n_exc).norm(), 1e-10);
}
