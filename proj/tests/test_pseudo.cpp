#include "qsa/pseudo.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qsa;

namespace {
const IonSpecies sp = IonSpecies::calcium40();
}

TEST(Strips, FiniteRectangleBelowInfiniteStrip) {
    Electrode strip{"s", ElectrodeRole::RF1, -50e-6, 50e-6, 0, 0};
    Electrode pad{"p", ElectrodeRole::DC, -50e-6, 50e-6, -100e-6, 100e-6};
    const Eigen::Vector3d r(0, 60e-6, 0);
    EXPECT_GT(electrode_potential(pad, r), 0.0);
    EXPECT_LT(electrode_potential(pad, r), electrode_potential(strip, r));
}

TEST(Strips, InfiniteStripPotentialOnSurface) {
    Electrode e{"s", ElectrodeRole::RF1, -50e-6, 50e-6, 0, 0};
    // one volt above the strip, zero far outside it
    EXPECT_NEAR(electrode_potential(e, Eigen::Vector3d(0, 1e-12, 0)), 1.0, 1e-6);
    EXPECT_NEAR(electrode_potential(e, Eigen::Vector3d(1e-3, 1e-12, 0)), 0.0, 1e-6);
    // analytic (atan((x2-x)/y) - atan((x1-x)/y))/pi
    const double y = 40e-6;
    EXPECT_NEAR(electrode_potential(e, Eigen::Vector3d(0, y, 0)), (2 * std::atan(50.0 / 40.0)) / M_PI, 1e-12);
}

TEST(Strips, FieldIsMinusGradient) {
    const auto g = SurfaceTrapGeometry::two_rf_reference();
    const Eigen::Vector3d r(30e-6, 90e-6, 0);
    const double h = 1e-9;
    const auto f = strip_field(g, r);
    for (std::size_t k = 0; k < g.electrodes.size(); ++k) {
        const double dx = (electrode_potential(g.electrodes[k], r + Eigen::Vector3d(h, 0, 0)) -
                           electrode_potential(g.electrodes[k], r - Eigen::Vector3d(h, 0, 0))) / (2 * h);
        EXPECT_NEAR(f[k].x(), -dx, 1e-4 * (std::abs(dx) + 1.0));
    }
}

TEST(Landscape, BalancedDriveFrozen) {
    const auto land = find_rf_nulls(SurfaceTrapGeometry::two_rf_reference(), sp);
    ASSERT_FALSE(land.merged);
    EXPECT_NEAR(land.separation * 1e6, 110.70, 0.05);
    ASSERT_GE(land.minima.size(), 2u);
    EXPECT_NEAR(land.minima.front().x, -land.minima.back().x, 1e-12);
    EXPECT_GT(land.minima.front().omega_x, 0.0);
    EXPECT_LT(pseudopotential_at(SurfaceTrapGeometry::two_rf_reference(),
                                 Eigen::Vector3d(land.minima.back().x, land.height, 0), sp), 1e-30);
}

TEST(Landscape, SeparationGrowsWithRatio) {
    const auto rows = separation_vs_ratio(SurfaceTrapGeometry::two_rf_reference(), sp, {0.9, 1.0, 1.2});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_LT(rows[0].separation, rows[1].separation);
    EXPECT_LT(rows[1].separation, rows[2].separation);
}

TEST(Landscape, ScaleIsLinearInLength) {
    const auto g = SurfaceTrapGeometry::two_rf_reference();
    const auto a = find_rf_nulls(g, sp);
    const auto b = find_rf_nulls(g.scaled(2.0), sp);
    EXPECT_NEAR(b.separation, 2 * a.separation, 1e-3 * a.separation);
}

TEST(Geometry, RejectsNonPositiveRf) {
    auto g = SurfaceTrapGeometry::two_rf_reference();
    g.omega_rf = 0.0;
    EXPECT_THROW(g.validate(), DomainError);
}
