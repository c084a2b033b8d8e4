#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "gatom/circuit.hpp"

using namespace gatom;
using namespace gatom::circuit;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

CircuitSpec reference_spec(std::size_t qubit_levels = 2, std::size_t resonator_levels = 4) {
  CircuitSpec s;
  s.omega0 = kTwoPi * 5.0;
  s.anharm = kTwoPi * -0.3;
  s.omega_r = {kTwoPi * 3.0, kTwoPi * 7.0};
  s.g = {kTwoPi * 0.08, kTwoPi * 0.08};
  s.qubit_levels = qubit_levels;
  s.resonator_levels = resonator_levels;
  return s;
}

DriveSpec reference_drives(double phi1, double t_ramp = 0.0) {
  DriveSpec d;
  for (auto& r : d.resonator) {
    r.eps = kTwoPi * 0.1;
    r.omega_d = kTwoPi * 5.0;
    r.envelope.t_ramp = t_ramp;
  }
  d.resonator[0].phi_d = phi1;
  return d;
}

}  // namespace

TEST(BuildH0, DiagonalWithExpectedLevels) {
  const CircuitSpec s = reference_spec(2, 3);
  const Operator h0 = build_h0(s);
  EXPECT_LT((h0 - Operator(h0.diagonal().asDiagonal())).norm(), 1e-15);
  const HilbertSpec space = s.space();
  for (std::size_t q = 0; q < 2; ++q)
    for (std::size_t n1 = 0; n1 < 3; ++n1)
      for (std::size_t n2 = 0; n2 < 3; ++n2) {
        const double e = q * s.omega0 + n1 * s.omega_r[0] + n2 * s.omega_r[1];
        EXPECT_NEAR(h0(space.index({q, n1, n2}), space.index({q, n1, n2})).real(), e, 1e-12);
      }
}

TEST(BuildH0, ThreeLevelAnharmonicity) {
  const CircuitSpec s = reference_spec(3, 2);
  const Operator h0 = build_h0(s);
  const std::size_t f = s.space().index({2, 0, 0});
  EXPECT_NEAR(h0(f, f).real(), 2 * s.omega0 + s.anharm, 1e-12);
}

TEST(BuildHc, MatrixElementsAndExcitationConservation) {
  const CircuitSpec s = reference_spec();
  const Operator hc = build_hc(s);
  EXPECT_TRUE(is_hermitian(hc));
  const HilbertSpec space = s.space();
  EXPECT_NEAR(std::abs(hc(space.index({1, 0, 0}), space.index({0, 1, 0})) - s.g[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hc(space.index({1, 0, 0}), space.index({0, 0, 1})) - s.g[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hc(space.index({0, 2, 0}), space.index({1, 1, 0})) - s.g[0] * std::sqrt(2.0)), 0.0,
              1e-14);
  const CircuitOperators ops(s);
  EXPECT_LT(commutator(hc, ops.excitation_number()).norm(), 1e-12);
  EXPECT_LT(commutator(build_h0(s), ops.excitation_number()).norm(), 1e-12);
}

TEST(BuildHd, VanishesWithoutDriveAndIsHermitian) {
  const CircuitSpec s = reference_spec();
  DriveSpec off;
  EXPECT_EQ(build_hd(s, off, 3.0).norm(), 0.0);
  const Operator hd = build_hd(s, reference_drives(0.7), 12.3);
  EXPECT_TRUE(is_hermitian(hd));
  // Single-photon matrix element is ε e^{-iω_d t + iφ}.
  const HilbertSpec space = s.space();
  const Complex elem = hd(space.index({0, 1, 0}), space.index({0, 0, 0}));
  EXPECT_NEAR(std::abs(elem - kTwoPi * 0.1 * std::exp(kI * (-kTwoPi * 5.0 * 12.3 + 0.7))), 0.0, 1e-12);
  EXPECT_THROW(build_hd(s, off, -1.0), std::invalid_argument);
}

TEST(BuildHd, EnvelopeRamp) {
  const CircuitSpec s = reference_spec();
  const DriveSpec d = reference_drives(0.0, 2.0);
  EXPECT_EQ(build_hd(s, d, 0.0).norm(), 0.0);
  EXPECT_NEAR(build_hd(s, d, 1.0).norm(), 0.5 * build_hd(s, d, 2.0).norm(), 1e-12);
  EXPECT_NEAR(build_hd(s, d, 2.0).norm(), build_hd(s, d, 5.0).norm(), 1e-12);
}

TEST(RotatingFrame, MatchesUnitaryTransformOfLabHamiltonian) {
  const CircuitSpec s = reference_spec(2, 3);
  const DriveSpec d = reference_drives(1.1, 1.0);
  const double f = s.omega0;
  const Hamiltonian rot = rotating_frame_hamiltonian(s, d, f);
  const Operator n_exc = CircuitOperators(s).excitation_number();
  for (double t : {0.0, 0.37, 4.2, 17.9}) {
    const Operator lab = build_h0(s) + build_hc(s) + build_hd(s, d, t);
    const Eigen::VectorXcd phases = (kI * f * t * n_exc.diagonal()).array().exp();
    const Operator u = phases.asDiagonal();
    const Operator expected = u * lab * u.adjoint() - f * n_exc;
    EXPECT_LT((rot.at(t) - expected).cwiseAbs().maxCoeff(), 1e-9) << "t = " << t;
  }
}

TEST(RotatingFrame, ZeroFrameIsLab) {
  const CircuitSpec s = reference_spec();
  const DriveSpec d = reference_drives(0.3, 1.0);
  const Hamiltonian lab = rotating_frame_hamiltonian(s, d, 0.0);
  for (double t : {0.0, 0.5, 3.3}) {
    EXPECT_LT((lab.at(t) - (build_h0(s) + build_hc(s) + build_hd(s, d, t))).norm(), 1e-10);
  }
}

TEST(RotatingFrame, ResonantDriveSettlesAfterRamp) {
  const CircuitSpec s = reference_spec();
  EXPECT_EQ(rotating_frame_hamiltonian(s, reference_drives(0.0, 1.0), s.omega0).settle_time(), 1.0);
  EXPECT_TRUE(std::isinf(rotating_frame_hamiltonian(s, reference_drives(0.0, 1.0), 0.0).settle_time()));
  EXPECT_TRUE(rotating_frame_hamiltonian(s, DriveSpec{}, 0.0).time_independent());
}

TEST(Observables, Examples) {
  const CircuitSpec s = reference_spec(2, 3);
  const CircuitSample g = observables(ground_state(s), s);
  EXPECT_EQ(g.pe, 0.0);
  EXPECT_EQ(g.n_r[0], 0.0);
  EXPECT_EQ(g.norm_err, 0.0);
  const HilbertSpec space = s.space();
  StateVector e = StateVector::Zero(space.total());
  e(space.index({1, 0, 0})) = 1.0;
  EXPECT_NEAR(observables(e, s).pe, 1.0, 1e-15);
  const StateVector coh = product_state({fock_state(2, 0), coherent_state(0.3, 3), fock_state(3, 0)});
  const CircuitSample c = observables(coh, s);
  EXPECT_NEAR(c.n_r[0], 0.09, 2e-3);
  EXPECT_NEAR(c.coh_r[0].real(), 0.3, 2e-3);
  EXPECT_THROW(observables(fock_state(4, 0), s), std::invalid_argument);
}

TEST(CircuitSpec, ValidationAndDiagnostics) {
  CircuitSpec s = reference_spec();
  EXPECT_NO_THROW(s.validate());
  EXPECT_TRUE(s.diagnostics().empty());
  s.qubit_levels = 4;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = reference_spec(3);
  s.anharm = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = reference_spec();
  s.omega0 = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = reference_spec();
  s.resonator_levels = 1;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = reference_spec();
  s.g[1] = kTwoPi * 0.5;
  EXPECT_EQ(s.diagnostics().size(), 1u);
  DriveSpec d;
  d.resonator[0].eps = -1.0;
  EXPECT_THROW(d.validate(), std::invalid_argument);
}

TEST(Simulate, UndrivenGroundStateIsStationary) {
  const CircuitSpec s = reference_spec(2, 3);
  const auto traj = simulate(s, DriveSpec{}, s.omega0, {10.0, 0.01, 100});
  for (double p : traj.real("pe")) EXPECT_EQ(p, 0.0);
}

TEST(Simulate, LabAndRotatingFramesAgree) {
  const CircuitSpec s = reference_spec(2, 3);
  const DriveSpec d = reference_drives(std::numbers::pi, 1.0);
  const TimeGrid rot_grid{4.0, 0.01, 100};
  const TimeGrid lab_grid{4.0, 5e-4, 2000};
  const auto rot = simulate(s, d, s.omega0, rot_grid);
  const auto lab = simulate(s, d, 0.0, lab_grid);
  ASSERT_EQ(rot.size(), lab.size());
  for (std::size_t i = 0; i < rot.size(); ++i) {
    EXPECT_NEAR(rot.times()[i], lab.times()[i], 1e-9);
    EXPECT_NEAR(rot.real("pe")[i], lab.real("pe")[i], 1e-6);
    EXPECT_LT(std::abs(rot.channel("coh_r1")[i] - lab.channel("coh_r1")[i]), 1e-5);
  }
}
