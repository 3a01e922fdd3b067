#include "qsa/lightshift.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qsa;

namespace {
const IonSpecies sp = IonSpecies::calcium40();

double peak(int n, Cancellation c, std::vector<int> echo) {
    LightShiftTrap trap;
    if (n == 4) trap.lz_over_dz = 0.43;
    const auto s = lightshift_setup(n, trap, sp);
    LightShiftConfig cf;
    cf.cancellation = Cancellation::Odd;
    const double o1 = reference_rabi_frequency(cf, s);
    cf.cancellation = c;
    cf.spin_echo = std::move(echo);
    return peak_fidelity(fidelity_scan_vs_omega(cf, s, 3.0 * o1, 601));
}
}  // namespace

TEST(LightShift, IdealCouplingGivesUnitFidelity) {
    // J on the inter-well pairs only, t J 2 = pi/4
    const int n = 2;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    const double t = 1.0;
    for (int a = 0; a < n; ++a) j(a, a + n) = j(a + n, a) = M_PI / 8.0;
    EXPECT_NEAR(lightshift_fidelity(j, t), 1.0, 1e-12);
}

TEST(LightShift, EchoUndoesFlippedPairs) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
    j(0, 1) = j(1, 0) = 0.7;  // intra-well term to cancel
    for (int a = 0; a < 2; ++a) j(a, a + 2) = j(a + 2, a) = M_PI / 8.0;
    EXPECT_LT(lightshift_fidelity(j, 1.0), 0.99);
    // flipping qubits 1 and 3 reverses 0-1 and 2-3 but keeps 0-2 and 1-3
    EXPECT_NEAR(lightshift_fidelity(j, 1.0, {1, 3}), 1.0, 1e-12);
}

TEST(LightShift, CouplingMatrixSymmetric) {
    const auto s = lightshift_setup(2, LightShiftTrap{}, sp);
    LightShiftConfig c;
    c.omega = reference_rabi_frequency(c, s);
    const auto g = lightshift_coupling_matrix(c, s);
    EXPECT_LT((g.coupling - g.coupling.transpose()).cwiseAbs().maxCoeff(), 1e-12 * g.coupling.cwiseAbs().maxCoeff());
    EXPECT_EQ(g.coupling.diagonal().cwiseAbs().maxCoeff(), 0.0);
    EXPECT_NEAR(g.gate_time * g.detuning, kTwoPi, 1e-9);
    EXPECT_NEAR(g.detuning, s.coupling / 2, 1e-9 * s.coupling);
}

TEST(LightShift, PeakFidelitiesFrozen) {
    EXPECT_NEAR(peak(2, Cancellation::Even, {}), 0.4087, 2e-3);
    EXPECT_NEAR(peak(2, Cancellation::Odd, {}), 1.0, 1e-3);
    EXPECT_NEAR(peak(4, Cancellation::Odd, {}), 0.1674, 2e-3);
    EXPECT_GT(peak(4, Cancellation::Odd, {2, 3, 6, 7}), 0.98);
}

TEST(LightShift, EquidistantQuartic) {
    const auto s = lightshift_setup(4, LightShiftTrap{}, sp);
    const auto eq = optimize_quartic_equidistance(4, s.potential, sp);
    EXPECT_NEAR(eq.lz_over_dz, 0.4301, 1e-3);
    EXPECT_LT(eq.spacing_inhomogeneity, 1e-6);
}

TEST(LightShift, BadEchoRejected) {
    LightShiftConfig c;
    c.spin_echo = {9};
    EXPECT_THROW(c.validate(4), DomainError);
}
