#include "qsa/quantum.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qsa;

namespace {

QuantumState ground() {
    QuantumState s;
    s.spec.n_qubits = 2;
    s.psi = Eigen::VectorXcd::Zero(4);
    s.psi[0] = 1.0;
    return s;
}

Eigen::Matrix4cd bell() {
    Eigen::Vector4cd v(1, 0, 0, 1);
    v /= std::sqrt(2.0);
    return v * v.adjoint();
}

}  // namespace

TEST(Parity, BellStateAnalysis) {
    const auto a = populations_and_parity(bell());
    EXPECT_NEAR(a.p_ss, 0.5, 1e-12);
    EXPECT_NEAR(a.p_dd, 0.5, 1e-12);
    EXPECT_NEAR(a.visibility, 1.0, 1e-12);
    EXPECT_NEAR(a.bell_fidelity, 1.0, 1e-12);
    EXPECT_NEAR(bell_fidelity(bell()), 1.0, 1e-12);
}

TEST(Parity, MaximallyMixedQuarter) {
    const Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity() / 4.0;
    EXPECT_NEAR(populations_and_parity(m).bell_fidelity, 0.25, 1e-12);
    EXPECT_NEAR(populations_and_parity(m).visibility, 0.0, 1e-12);
}

TEST(MSGate, IdealCasesReachBellState) {
    for (auto c : {MSCase::RedBoth, MSCase::BlueBoth, MSCase::Centered}) {
        const auto out = ms_evolve(MSGateConfig::standard(c, kTwoPi / 190e-6), ground());
        EXPECT_GT(bell_fidelity(out.qubits.rho), 1.0 - 1e-4) << static_cast<int>(c);
    }
}

TEST(MSGate, HeatingInfidelitiesFrozen) {
    const double frozen[3] = {1.3478e-3, 3.5263e-3, 1.9525e-3};
    for (int k = 0; k < 3; ++k) {
        auto g = MSGateConfig::standard(static_cast<MSCase>(k + 1), kTwoPi / 190e-6);
        g.heating = {2.6, 18.0};
        const double inf = 1.0 - bell_fidelity(ms_evolve(g, ground()).qubits.rho);
        EXPECT_NEAR(inf, frozen[k], 2e-3 * frozen[k]) << "case " << k + 1;
    }
}

TEST(MSGate, OpenLoopsRejected) {
    auto g = MSGateConfig::standard(MSCase::RedBoth, kTwoPi / 190e-6);
    g.gate_time *= 1.3;
    EXPECT_THROW(g.validate(), ClosureError);
}

TEST(MSGate, BlockMatchesDensitySolver) {
    // both truncate the ladder differently, so agreement is limited by the cutoff
    for (auto [h, tol] : {std::pair{0.0, 1e-9}, std::pair{30.0, 1e-4}}) {
        auto g = MSGateConfig::standard(MSCase::RedBoth, kTwoPi / 190e-6);
        g.heating = {h, 3 * h};
        g.cutoff = 6;
        g.preflight = false;
        g.solver = MSSolver::Density;
        const auto dens = ms_evolve(g, ground());
        const Eigen::Matrix4cd block = ms_block_solution(g, ground().density(), 6);
        EXPECT_LT((dens.qubits.rho - block).cwiseAbs().maxCoeff(), tol) << h;
    }
}

TEST(MSGate, TrajectoriesAgreeWithDensity) {
    auto g = MSGateConfig::standard(MSCase::RedBoth, kTwoPi / 190e-6);
    g.heating = {2000.0, 2000.0};
    g.cutoff = 4;
    g.preflight = false;
    HilbertSpec spec;
    spec.n_qubits = 2;
    spec.modes = {ModeSpec{0.0, 4}, ModeSpec{0.0, 4}};
    const auto sys = ms_open_system(g, spec);
    const auto psi0 = QuantumState::product(spec, {0, 0}, {0, 0}).psi;
    const Eigen::MatrixXcd exact = reduce_to_qubits(evolve_density(sys, psi0 * psi0.adjoint(), 0.0, g.gate_time), 4);
    TrajectoryOptions o;
    o.trajectories = 400;
    o.seed = 11;
    const auto avg = average_trajectories(sys, psi0, 0.0, g.gate_time, o,
                                          [](const Eigen::VectorXcd& v) { return reduce_to_qubits(v, 4); });
    EXPECT_GT(avg.jumps, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            EXPECT_LE(std::abs(avg.mean(i, j) - exact(i, j)), 5.0 * std::abs(avg.standard_error(i, j)) + 2e-3) << i << "," << j;
}

TEST(MSGate, TrajectoriesReproducibleAcrossJobs) {
    auto g = MSGateConfig::standard(MSCase::RedBoth, kTwoPi / 190e-6);
    g.heating = {2000.0, 2000.0};
    g.cutoff = 4;
    g.preflight = false;
    g.solver = MSSolver::Trajectories;
    g.trajectories.trajectories = 20;
    g.trajectories.seed = 3;
    const auto a = ms_evolve(g, ground());
    g.trajectories.jobs = 3;
    const auto b = ms_evolve(g, ground());
    EXPECT_EQ((a.qubits.rho - b.qubits.rho).cwiseAbs().maxCoeff(), 0.0);
}

TEST(MSGate, DephasingFidelityFrozen) {
    auto g = MSGateConfig::standard(MSCase::RedBoth, rad(5.3e3));
    g.gate_time = 190e-6;
    g.dephasing_time = 700e-6;
    g.cutoff = 6;
    g.preflight = false;
    const auto out = ms_evolve(g, ground());
    EXPECT_EQ(out.solver, MSSolver::Density);
    // truncated at 6 for speed; the converged value is about 0.886
    EXPECT_NEAR(populations_and_parity(out.qubits).bell_fidelity, 0.8748, 1e-3);
    g.dephasing_time.reset();
    g.solver = MSSolver::Density;
    EXPECT_GT(bell_fidelity(ms_evolve(g, ground()).qubits.rho), 0.98);
}

TEST(MSGate, CutoffPreflightTrips) {
    auto g = MSGateConfig::standard(MSCase::RedBoth, kTwoPi / 190e-6);
    g.heating = {5000.0, 5000.0};
    g.cutoff = 4;
    EXPECT_THROW(ms_evolve(g, ground()), CutoffError);
}

TEST(Sidebands, BlueTransfersOneQuantum) {
    HilbertSpec spec;
    spec.n_qubits = 1;
    spec.modes = {ModeSpec{0.0, 4}};
    const auto s = sideband_pulse(QuantumState::product(spec, {0}, {0}), 0, 0, SidebandKind::Blue, M_PI);
    EXPECT_NEAR(std::abs(s.psi[spec.index({1}, {1})]), 1.0, 1e-12);
}

TEST(Sidebands, EdgePopulationThrows) {
    HilbertSpec spec;
    spec.n_qubits = 1;
    spec.modes = {ModeSpec{0.0, 4}};
    EXPECT_THROW(sideband_pulse(QuantumState::product(spec, {0}, {3}), 0, 0, SidebandKind::Blue, M_PI), CutoffError);
}

TEST(Sidebands, UnitaryIsUnitary) {
    HilbertSpec spec;
    spec.n_qubits = 2;
    spec.modes = {ModeSpec{0.0, 4}, ModeSpec{0.0, 5}};
    const Eigen::MatrixXcd u = Eigen::MatrixXcd(sideband_unitary(spec, 1, 1, SidebandKind::Red, 1.3, 0.4));
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Sequence, PhononExchangeMakesBellState) {
    const auto r = phonon_exchange_sequence();
    EXPECT_GT(r.analysis.bell_fidelity, 0.999);
    EXPECT_GT(r.analysis.visibility, 0.999);
}

TEST(Sequence, HalfExchangeIsNotEntangling) {
    SequenceOptions o;
    o.exchange_fraction = 0.0;
    EXPECT_LT(phonon_exchange_sequence(o).analysis.bell_fidelity, 0.6);
}

TEST(Dephasing, CollectiveChannelKeepsTraceAndKillsCoherence) {
    const Eigen::MatrixXcd rho = bell();
    const auto out = collective_dephasing(rho, 2, 1e-3, 1e-3);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
    // m_SS - m_DD = 2, factor exp(-2 t/tau)
    EXPECT_NEAR(std::abs(out(0, 3)), 0.5 * std::exp(-2.0), 1e-12);
}
