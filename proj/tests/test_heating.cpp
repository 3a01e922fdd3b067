#include "qsa/heating.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qsa;

namespace {
const IonSpecies sp = IonSpecies::calcium40();
}

TEST(Heating, SingleIonFormula) {
    const auto pot = TrapPotential::axial(200e-6, rad(400e3), sp, rad(3e6), rad(3.1e6));
    const auto cfg = solve_equilibrium(pot, sp, {1, 0});
    const auto s = normal_modes(cfg, pot);
    const double psd = 1e-12, e = 100.0;
    const auto rep = mode_heating_rates(s, homogeneous_fields(1, 1, Eigen::Vector3d(0, 0, e)), {psd, {}}, sp);
    int z = -1;
    for (std::size_t l = 0; l < s.size(); ++l)
        if (s.axis_label[l] == Axis::Z) z = static_cast<int>(l);
    // q^2 S E^2 / (4 m hbar w)
    const double expect = sp.charge * sp.charge * psd * e * e / (4 * sp.mass * kHbar * s.frequencies[z]);
    EXPECT_NEAR(rep.rates[z], expect, 1e-9 * expect);
}

TEST(Heating, HomogeneousNoiseSparesStretch) {
    const auto pot = TrapPotential::axial(60e-6, rad(400e3), sp, rad(3.0e6), rad(3.1e6));
    const auto cfg = solve_equilibrium(pot, sp, {2, 2});
    const auto s = normal_modes(cfg, pot);
    const auto p = s.lowest_pair(Axis::Z);
    const auto rep = mode_heating_rates(s, homogeneous_fields(cfg.size(), 3, Eigen::Vector3d(0, 0, 1)), {1e-12, {}}, sp);
    EXPECT_LT(rep.rates[p->second], 1e-10 * rep.rates[p->first]);
}

TEST(Heating, PerElectrodeSumsToTotal) {
    const auto pot = TrapPotential::axial(60e-6, rad(400e3), sp, rad(3.0e6), rad(3.1e6));
    const auto cfg = solve_equilibrium(pot, sp, {1, 1});
    const auto s = normal_modes(cfg, pot);
    FieldSet f{{Eigen::Vector3d(1, 0, 2), Eigen::Vector3d(0, 0, 1)}, {Eigen::Vector3d(0, 1, -1), Eigen::Vector3d(3, 0, 0)}};
    NoiseModel n{0.0, {1e-12, 3e-12}};
    const auto rep = mode_heating_rates(s, f, n, sp);
    for (std::size_t l = 0; l < s.size(); ++l) EXPECT_NEAR(rep.per_electrode.row(l).sum(), rep.rates[l], 1e-9 * rep.rates[l] + 1e-30);
}

TEST(Heating, NegativePsdRejected) {
    NoiseModel n{-1.0, {}};
    EXPECT_THROW(n.validate(), DomainError);
}

TEST(Heating, ReferenceGeometryRatioFrozen) {
    const auto row = heating_at(29e-6, 1, heating_reference_geometry(), sp, {});
    ASSERT_EQ(row.status, "ok");
    EXPECT_NEAR(row.ratio, 15.00, 0.01);
    EXPECT_NEAR(hz(row.omega_com), 540e3, 1.0);
}

TEST(Heating, CalibrationReproducesReferenceRate) {
    const auto g = heating_reference_geometry();
    const Eigen::Vector3d ion(0, 80e-6, 0), dir(0, 0, 1);
    const auto n = calibrate_noise_amplitude(100.0, g, ion, dir, rad(1e6), sp);
    const auto e = dc_field_per_volt(g, {ion});
    double rate = 0.0;
    for (std::size_t k = 0; k < e[0].size(); ++k) {
        const double proj = e[0][k].dot(dir);
        rate += sp.charge * sp.charge * n.psd_of(k) * proj * proj / (4 * sp.mass * kHbar * rad(1e6));
    }
    EXPECT_NEAR(rate, 100.0, 1e-6);
}
