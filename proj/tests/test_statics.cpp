#include "qsa/statics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qsa;

namespace {
const IonSpecies sp = IonSpecies::calcium40();
}

TEST(Equilibrium, TwoIonStretchIsRootThree) {
    const auto pot = TrapPotential::radial(60e-6, rad(2.4e6), sp, rad(3.0e6), rad(500e3));
    EquilibriumOptions tight;
    tight.gradient_tolerance = 1e-15;
    const auto cfg = solve_equilibrium(pot, sp, {2, 0}, tight);
    const auto s = normal_modes(cfg, pot);
    std::vector<double> z;
    for (std::size_t l = 0; l < s.size(); ++l)
        if (s.axis_label[l] == Axis::Z) z.push_back(s.frequencies[l]);
    ASSERT_EQ(z.size(), 2u);
    EXPECT_NEAR(z[0], rad(500e3), 1e-6 * z[0]);
    EXPECT_NEAR(z[1] / z[0], std::sqrt(3.0), 1e-9);
    // spacing (q^2/(2 pi eps0 m w^2))^(1/3)
    const double w = rad(500e3);
    const double gap = std::cbrt(sp.charge * sp.charge / (2 * M_PI * kEps0 * sp.mass * w * w));
    EXPECT_NEAR((cfg.positions[1] - cfg.positions[0]).norm(), gap, 1e-12);
}

TEST(Equilibrium, ModesOrthonormal) {
    const auto pot = TrapPotential::axial(70e-6, rad(400e3), sp, rad(3e6), rad(3.1e6));
    const auto cfg = solve_equilibrium(pot, sp, {3, 3});
    const auto s = normal_modes(cfg, pot);
    ASSERT_EQ(s.size(), 18u);
    const Eigen::MatrixXd g = s.mode_vectors.transpose() * s.mode_vectors;
    EXPECT_LT((g - Eigen::MatrixXd::Identity(18, 18)).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_TRUE(std::is_sorted(s.frequencies.begin(), s.frequencies.end()));
    for (int w : {1, 2}) EXPECT_EQ(cfg.ions_in_well(w).size(), 3u);
}

TEST(Equilibrium, LowestPairHasBothPhases) {
    const auto pot = TrapPotential::axial(60e-6, rad(400e3), sp, rad(3e6), rad(3.1e6));
    const auto s = normal_modes(solve_equilibrium(pot, sp, {2, 2}), pot);
    const auto p = s.lowest_pair(Axis::Z);
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(s.pair_phase[p->first], PairPhase::InPhase);
    EXPECT_EQ(s.pair_phase[p->second], PairPhase::OutOfPhase);
}

TEST(Calibration, HitsTargetComFrequency) {
    const auto pot = calibrate_double_well(rad(400e3), 4, 56e-6, sp, Orientation::Axial);
    EXPECT_NEAR(pair_mean_frequency(pot, sp, 4), rad(400e3), 1e-6 * rad(400e3));
    EXPECT_NEAR(chain_centroid_separation(pot, sp, 4), 56e-6, 1e-12);
}

TEST(CouplingScan, SixIonChainsFrozen) {
    const auto rows = coupling_scan({1, 6}, {56e-6}, rad(400e3), Orientation::Axial,
                                    default_calibration(Orientation::Axial), sp);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].status, "ok");
    EXPECT_NEAR(hz(rows[1].coupling) / 1e3, 36.583, 0.01);
    EXPECT_NEAR(rows[1].coupling / rows[0].point_charge, 14.59, 0.02);
    // single ions sit at the potential minima, so the coupling tends to the point-charge law
    EXPECT_NEAR(rows[0].coupling / rows[0].point_charge, 1.0, 0.02);
}

TEST(CouplingScan, TableLayout) {
    const auto rows = coupling_scan({1}, {80e-6}, rad(400e3), Orientation::Axial,
                                    default_calibration(Orientation::Axial), sp);
    const auto t = coupling_table(rows);
    EXPECT_EQ(t.columns().front(), "n");
    EXPECT_EQ(t.rows(), 1u);
}

TEST(Splitting, DecreasesWithDistance) {
    const auto rows = mode_splitting_scan(DoubleWellFamily::axial_default(), {40e-6, 80e-6}, 1, sp);
    double near = 0, far = 0;
    for (const auto& r : rows) {
        if (r.axis != Axis::Z || r.pair_rank != 0) continue;
        (r.d < 60e-6 ? near : far) = r.splitting;
    }
    EXPECT_GT(near, far);
    EXPECT_GT(far, 0.0);
}

TEST(Quartic, LengthScaleFormula) {
    const auto pot = TrapPotential::radial(30e-6, rad(2.0e6), sp, rad(2.1e6), rad(0.613e6));
    const double phi = pot.curvature_on(2);
    EXPECT_NEAR(chain_length_scale(pot, sp), std::cbrt(sp.charge / (4 * M_PI * kEps0 * phi)), 1e-15);
}
